"""Cohesion confidence: harmonic-mean aggregation of mask probabilities.

With the name hidden behind n mask tokens, the model fills each mask with
some probability p_i.  The confidence for that n is the harmonic mean
n / sum(1/p_i): it rewards uniformly high probabilities and is dragged
down hard by a single unconfident mask.  The cohesion score of a function
is the best confidence over mask counts 1..8, and the optimal token count
is the smallest n attaining it.
"""

from dataclasses import dataclass

MAX_MASK_COUNT = 8


def confidence(probabilities):
    """Harmonic mean of per-mask probabilities: n / sum(1/p_i).

    Every probability must lie in (0, 1]; the result then lies in
    (0, max(p_i)] and never exceeds the arithmetic mean.
    """
    probs = list(probabilities)
    if not probs:
        raise ValueError("confidence requires at least one probability")
    inv_sum = 0.0
    for p in probs:
        if not (0.0 < p <= 1.0):
            raise ValueError(f"probability out of range (0, 1]: {p!r}")
        inv_sum += 1.0 / p
    return len(probs) / inv_sum


@dataclass(frozen=True)
class CohesionScore:
    """Per-mask-count confidences plus their max (npc) and argmax (otc)."""

    per_n: tuple          # confidence for n = 1..MAX_MASK_COUNT
    npc: float            # max over per_n
    otc: int              # smallest n attaining npc (1-based)

    @classmethod
    def from_confidences(cls, per_n):
        per_n = tuple(per_n)
        if len(per_n) != MAX_MASK_COUNT:
            raise ValueError(
                f"expected {MAX_MASK_COUNT} confidences, got {len(per_n)}")
        best = per_n[0]
        best_n = 1
        for idx in range(1, MAX_MASK_COUNT):
            if per_n[idx] > best:
                best = per_n[idx]
                best_n = idx + 1
        return cls(per_n=per_n, npc=best, otc=best_n)


__all__ = ["CohesionScore", "MAX_MASK_COUNT", "confidence"]
