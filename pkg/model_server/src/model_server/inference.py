"""Fill-mask inference over a masked-language-model checkpoint.

One loaded checkpoint, one operation: given source text containing mask
placeholders, return a token and its softmax probability for every mask
position from a single forward pass in inference mode.  No sampling, no
state: identical requests produce identical answers.
"""

import threading
from dataclasses import dataclass

import torch
from transformers import AutoModelForMaskedLM, AutoTokenizer

# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

# Bounds on the number of mask placeholders a single request may carry.
MIN_MASK_COUNT = 1
MAX_MASK_COUNT = 8

# Softmax is taken in float64; the floor guards the (0, 1] contract
# against exp underflow when a gold token sits far below the top logit.
_PROB_FLOOR = 1e-300

# model_max_length defaults to a sentinel around 1e30 when the checkpoint
# does not pin a window; treat anything that large as "unset".
_UNSET_LIMIT = 1 << 30

_DEFAULT_WINDOW = 512


# ---------------------------------------------------------------------------
# errors
# ---------------------------------------------------------------------------


class MaskCountError(ValueError):
    """mask_count is out of range or disagrees with the code's placeholders."""


class GoldTokenError(ValueError):
    """A caller-supplied gold token cannot be mapped into the vocabulary."""


class ContextOverflowError(ValueError):
    """The tokenized input does not fit the model's context window."""


class InferenceError(RuntimeError):
    """The forward pass failed."""


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaskPrediction:
    """Scored token for one mask position."""

    token: str
    probability: float


def _checkpoint_window(tokenizer, model):
    """Usable sequence length of the loaded checkpoint, in tokens."""
    limit = getattr(tokenizer, "model_max_length", None)
    if limit and limit < _UNSET_LIMIT:
        return int(limit)
    positions = getattr(model.config, "max_position_embeddings", 0)
    if positions:
        # BERT-family checkpoints reserve two position slots for padding.
        return int(positions) - 2
    return _DEFAULT_WINDOW


class FillMaskModel:
    """A loaded checkpoint and tokenizer behind a serialization lock.

    The lock makes concurrent requests equivalent to serial ones; the
    model itself is never mutated after construction.
    """

    def __init__(self, tokenizer, model, model_id, max_context,
                 device="cpu"):
        self._tokenizer = tokenizer
        self._model = model
        self.model_id = model_id
        self.max_context = int(max_context)
        self.device = device
        self._lock = threading.Lock()

    @classmethod
    def load(cls, config):
        """Load the checkpoint named by ``config`` in inference mode."""
        tokenizer = AutoTokenizer.from_pretrained(config.model)
        model = AutoModelForMaskedLM.from_pretrained(config.model)
        model.to(config.device)
        model.eval()
        window = _checkpoint_window(tokenizer, model)
        max_context = config.max_context or window
        if max_context > window:
            raise ValueError(
                f"configured max_context {max_context} exceeds the "
                f"model window of {window} tokens")
        return cls(tokenizer, model, model_id=config.model,
                   max_context=max_context, device=config.device)

    @property
    def mask_token(self):
        return self._tokenizer.mask_token

    def _token_id(self, token):
        """Resolve a caller-supplied gold token to a vocabulary id.

        An exact vocabulary piece wins; anything else is encoded and
        scored by its first piece.
        """
        tid = self._tokenizer.convert_tokens_to_ids(token)
        if tid is not None and tid != self._tokenizer.unk_token_id:
            return tid
        ids = self._tokenizer.encode(token, add_special_tokens=False)
        if not ids:
            raise GoldTokenError(f"gold token {token!r} is not encodable")
        return ids[0]

    def fill(self, code, mask_count, gold_tokens=None):
        """Score every mask position in ``code`` with one forward pass.

        Returns a list of ``mask_count`` MaskPredictions: the top-1 token
        per position, or the resolved gold token when ``gold_tokens`` is
        given.  Probabilities are softmax values in (0, 1].
        """
        if not (MIN_MASK_COUNT <= mask_count <= MAX_MASK_COUNT):
            raise MaskCountError(
                f"mask_count must be in [{MIN_MASK_COUNT}, "
                f"{MAX_MASK_COUNT}], got {mask_count}")
        if gold_tokens is not None and len(gold_tokens) != mask_count:
            raise MaskCountError(
                f"gold_tokens has {len(gold_tokens)} entries for "
                f"mask_count={mask_count}")
        encoded = self._tokenizer(code, return_tensors="pt")
        ids = encoded["input_ids"][0]
        if len(ids) > self.max_context:
            raise ContextOverflowError(
                f"input is {len(ids)} tokens; the window is "
                f"{self.max_context}")
        positions = (ids == self._tokenizer.mask_token_id) \
            .nonzero(as_tuple=True)[0]
        if len(positions) != mask_count:
            raise MaskCountError(
                f"code contains {len(positions)} mask placeholders, "
                f"mask_count={mask_count}")
        gold_ids = None
        if gold_tokens is not None:
            gold_ids = [self._token_id(t) for t in gold_tokens]
        inputs = {k: v.to(self.device) for k, v in encoded.items()}
        with self._lock:
            try:
                with torch.inference_mode():
                    logits = self._model(**inputs).logits
            except Exception as exc:
                raise InferenceError(f"forward pass failed: {exc}")
        rows = torch.softmax(logits[0].double().cpu()[positions], dim=-1)
        preds = []
        if gold_ids is None:
            top = rows.max(dim=-1)
            for prob, tid in zip(top.values.tolist(), top.indices.tolist()):
                preds.append(MaskPrediction(
                    token=self._tokenizer.convert_ids_to_tokens(tid),
                    probability=max(prob, _PROB_FLOOR)))
        else:
            for row, tid in zip(rows, gold_ids):
                preds.append(MaskPrediction(
                    token=self._tokenizer.convert_ids_to_tokens(tid),
                    probability=max(float(row[tid]), _PROB_FLOOR)))
        return preds


__all__ = [
    "MAX_MASK_COUNT",
    "MIN_MASK_COUNT",
    "ContextOverflowError",
    "FillMaskModel",
    "GoldTokenError",
    "InferenceError",
    "MaskCountError",
    "MaskPrediction",
]
