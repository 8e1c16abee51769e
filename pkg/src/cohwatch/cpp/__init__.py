"""C++ source handling: tokenizing and function-definition extraction."""

from .extract import (
    ExtractedFunction,
    ExtractionError,
    extract_functions,
    is_syntactically_valid,
)
from .lexer import LexError, tokenizer_backend

__all__ = [
    "ExtractedFunction",
    "ExtractionError",
    "LexError",
    "extract_functions",
    "is_syntactically_valid",
    "tokenizer_backend",
]
