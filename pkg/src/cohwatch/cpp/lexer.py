"""Tokenizer backend selection.

The compiled extension is preferred when it imported cleanly; the pure
Python scanner is the fallback.  Set ``COHWATCH_PURE_PYTHON=1`` to force
the fallback (useful for benchmarking and for debugging parity issues).
"""

import os

from . import _tokenizer_py

if os.environ.get("COHWATCH_PURE_PYTHON"):
    _impl = _tokenizer_py
else:
    try:
        from . import _tokenizer_cy as _impl
    except ImportError:
        _impl = _tokenizer_py


class LexError(ValueError):
    """Source text could not be tokenized."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


def tokenizer_backend():
    """Name of the active tokenizer implementation: 'compiled' or 'pure'."""
    return "compiled" if _impl.__name__.endswith("_tokenizer_cy") else "pure"


def tokenize(text):
    """Tokenize with the active backend; raise LexError on failure."""
    toks, err_off, err_msg = _impl.tokenize(text)
    if err_off >= 0:
        raise LexError(err_msg, err_off)
    return toks


def raw_tokenize(text):
    """Tokenize without raising: returns (tokens, error_offset, error_message)."""
    return _impl.tokenize(text)
