"""Snippet corpus loading and validation.

Snippets are short, inert C++ statement sequences with the surface form of
real-world malicious payloads (exfiltration, privilege escalation, remote
code execution, boot-record tampering, ...).  They reference undefined
identifiers on purpose: they must read like an attack without being one.
A corpus directory holds one ``.cpp`` file per snippet plus a
``manifest.json`` listing ``{id, file, description}`` entries.
"""

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..cpp.lexer import raw_tokenize
from ..cpp.tokens import PUNCT


class SnippetCorpusError(ValueError):
    """The snippet corpus is unusable (missing, empty, or all invalid)."""


@dataclass(frozen=True)
class MaliciousSnippet:
    snippet_id: str
    description: str
    lines: tuple

    @property
    def line_count(self):
        return len(self.lines)

    @property
    def text(self):
        return "\n".join(self.lines)


def _balanced_and_lexable(text):
    """Reject snippets that would wreck any body they land in."""
    toks, err_off, err_msg = raw_tokenize(text)
    if err_off >= 0:
        return False, err_msg
    stack = []
    closers = {")": "(", "}": "{", "]": "["}
    for kind, s, e in toks:
        if kind != PUNCT or e - s != 1:
            continue
        ch = text[s]
        if ch in "({[":
            stack.append(ch)
        elif ch in ")}]":
            if not stack or stack[-1] != closers[ch]:
                return False, f"unbalanced '{ch}'"
            stack.pop()
    if stack:
        return False, f"unclosed '{stack[-1]}'"
    return True, ""


def builtin_corpus_dir():
    """Path of the snippet corpus shipped with the package."""
    return Path(resources.files("cohwatch.data") / "snippets")


def load_snippets(corpus_dir=None):
    """Load and validate a snippet corpus.

    Returns ``(snippets, skipped)`` where ``skipped`` holds
    ``(snippet_id, reason)`` for individually invalid entries.  An empty
    or fully invalid corpus raises SnippetCorpusError.
    """
    root = Path(corpus_dir) if corpus_dir else builtin_corpus_dir()
    manifest_path = root / "manifest.json" if root.is_dir() else root
    root = manifest_path.parent
    try:
        entries = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise SnippetCorpusError(
            f"cannot read snippet manifest {manifest_path}: {exc}") from None
    if not isinstance(entries, list) or not entries:
        raise SnippetCorpusError(f"empty snippet manifest: {manifest_path}")

    snippets = []
    skipped = []
    for entry in entries:
        sid = entry.get("id", "?")
        try:
            text = (root / entry["file"]).read_text(encoding="utf-8")
        except (OSError, KeyError) as exc:
            skipped.append((sid, f"unreadable: {exc}"))
            continue
        body = text.strip("\n")
        if not body.strip():
            skipped.append((sid, "empty snippet"))
            continue
        ok, reason = _balanced_and_lexable(body)
        if not ok:
            skipped.append((sid, reason))
            continue
        snippets.append(MaliciousSnippet(
            snippet_id=sid,
            description=entry.get("description", ""),
            lines=tuple(body.split("\n")),
        ))
    if not snippets:
        raise SnippetCorpusError(
            f"no usable snippets in {root} "
            f"({len(skipped)} rejected)")
    snippets = sorted(snippets, key=lambda s: s.snippet_id)
    out = list(snippets)
    return out, skipped


__all__ = [
    "MaliciousSnippet",
    "SnippetCorpusError",
    "builtin_corpus_dir",
    "load_snippets",
]
