"""Name-prediction cohesion scoring against a fill-mask backend."""

from .backends import (
    BackendError,
    BackendInfo,
    FillMaskResult,
    MockBackend,
    RemoteBackend,
)
from .confidence import MAX_MASK_COUNT, CohesionScore, confidence
from .masking import MaskedCode, MaskingError, mask_function_name
from .scorefile import ScoreRow, load_scores, score_key
from .scorer import PROBABILITY_FLOOR, score_function

__all__ = [
    "BackendError",
    "BackendInfo",
    "CohesionScore",
    "FillMaskResult",
    "MAX_MASK_COUNT",
    "MaskedCode",
    "MaskingError",
    "MockBackend",
    "PROBABILITY_FLOOR",
    "RemoteBackend",
    "ScoreRow",
    "confidence",
    "load_scores",
    "mask_function_name",
    "score_function",
    "score_key",
]
