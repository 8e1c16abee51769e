"""HTTP sidecar serving fill-mask token probabilities.

Speaks the wire protocol the cohesion pipeline's remote backend expects:
``GET /v1/info`` reports the mask placeholder literal, the usable context
window, and the checkpoint id; ``POST /v1/fill_mask`` returns one token
and one softmax probability per mask placeholder, deterministically.
Any fill-mask checkpoint works; the served checkpoint is recorded in
every response as ``model_id``.
"""

from .app import create_app
from .config import ServerConfig
from .inference import (MAX_MASK_COUNT, MIN_MASK_COUNT,
                        ContextOverflowError, FillMaskModel, GoldTokenError,
                        InferenceError, MaskCountError, MaskPrediction)

__version__ = "0.1.0"

__all__ = [
    "MAX_MASK_COUNT",
    "MIN_MASK_COUNT",
    "ContextOverflowError",
    "FillMaskModel",
    "GoldTokenError",
    "InferenceError",
    "MaskCountError",
    "MaskPrediction",
    "ServerConfig",
    "create_app",
    "__version__",
]
