"""Replace a function's declaration-site name with mask placeholders."""

from dataclasses import dataclass

from ..cpp.lexer import raw_tokenize
from ..cpp.tokens import IDENT


class MaskingError(ValueError):
    """The function's name could not be located for masking."""


@dataclass(frozen=True)
class MaskedCode:
    """Masked source text; contains exactly ``mask_count`` placeholders."""

    text: str
    mask_count: int


def mask_function_name(fn, mask_count, mask_token="<mask>",
                       mask_body_occurrences=False):
    """Mask the declaration-site name of ``fn`` with ``mask_count`` tokens.

    Only the name in the signature is replaced by default; recursive
    mentions of the name inside the body stay put, mirroring how the
    snippet would read to a reviewer.  With ``mask_body_occurrences`` the
    body mentions are neutralised too, using a fixed placeholder identifier
    rather than more mask tokens so the placeholder count stays exactly
    ``mask_count``.
    """
    if not (1 <= mask_count <= 64):
        raise ValueError(f"mask_count out of range: {mask_count}")
    start, end = fn.name_span
    if fn.full_text[start:end] != fn.name:
        raise MaskingError(
            f"name span does not match {fn.name!r} in function text")
    masked = fn.full_text[:start] + mask_token * mask_count \
        + fn.full_text[end:]
    if mask_body_occurrences:
        head_len = start + len(mask_token) * mask_count
        head, tail = masked[:head_len], masked[head_len:]
        toks, err_off, _ = raw_tokenize(tail)
        if err_off < 0:
            pieces = []
            pos = 0
            for kind, s, e in toks:
                if kind == IDENT and tail[s:e] == fn.name:
                    pieces.append(tail[pos:s])
                    pieces.append("__masked__")
                    pos = e
            pieces.append(tail[pos:])
            tail = "".join(pieces)
        masked = head + tail
    return MaskedCode(text=masked, mask_count=mask_count)


__all__ = ["MaskedCode", "MaskingError", "mask_function_name"]
