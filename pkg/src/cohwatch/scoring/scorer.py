"""Drive a backend to produce a CohesionScore for one function."""

from .confidence import MAX_MASK_COUNT, CohesionScore, confidence
from .masking import mask_function_name

# Probabilities are floored before aggregation: a model reporting an exact
# zero (or denormal garbage) must not blow up the harmonic mean.
PROBABILITY_FLOOR = 1e-9

# Crude chars-per-token budget used when trimming oversized functions to a
# backend's context window.  Deliberately conservative.
_CHARS_PER_TOKEN = 3


def _truncate_tail(fn_text, signature_len, max_chars):
    """Drop body lines from the tail until the text fits, keep it closed."""
    if len(fn_text) <= max_chars:
        return fn_text
    head = fn_text[:signature_len]
    body = fn_text[signature_len:len(fn_text) - 1]
    lines = body.split("\n")
    while lines and len(head) + len("\n".join(lines)) + 2 > max_chars:
        lines.pop()
    return head + "\n".join(lines) + "\n}"


def score_function(fn, backend, mask_body_occurrences=False):
    """Score one extracted function against a backend.

    Masks the declaration-site name with n = 1..8 placeholders, collects
    the per-mask top-1 probabilities in a single pass per n, floors them,
    and aggregates with the harmonic mean.  Backend failures propagate:
    a partially scored function is worse than an unscored one.
    """
    mask_token = backend.mask_token
    max_context = backend.max_context
    per_n = []
    for n in range(1, MAX_MASK_COUNT + 1):
        masked = mask_function_name(
            fn, n, mask_token=mask_token,
            mask_body_occurrences=mask_body_occurrences)
        if max_context:
            budget = max_context * _CHARS_PER_TOKEN
            if len(masked.text) > budget:
                sig_len = fn.name_span[0] + len(mask_token) * n \
                    + (len(fn.signature_text) - fn.name_span[1])
                text = _truncate_tail(masked.text, sig_len, budget)
                masked = type(masked)(text=text, mask_count=n)
        result = backend.fill_mask(masked)
        probs = [max(p, PROBABILITY_FLOOR) for p in result.probabilities]
        per_n.append(confidence(probs))
    return CohesionScore.from_confidences(per_n)


__all__ = ["PROBABILITY_FLOOR", "score_function"]
