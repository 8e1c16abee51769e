"""Injection simulation: plant inert malicious-looking snippets in bodies."""

from .injector import (
    POSITIONS,
    InjectionError,
    InjectionRecord,
    inject,
    inject_random,
    insertion_line,
)
from .snippets import (
    MaliciousSnippet,
    SnippetCorpusError,
    builtin_corpus_dir,
    load_snippets,
)

__all__ = [
    "InjectionError",
    "InjectionRecord",
    "MaliciousSnippet",
    "POSITIONS",
    "SnippetCorpusError",
    "builtin_corpus_dir",
    "inject",
    "inject_random",
    "insertion_line",
    "load_snippets",
]
