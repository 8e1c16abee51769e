"""Insert snippet lines into extracted function bodies, reversibly.

A snippet goes in after a chosen body line: line 0 means right after the
opening brace, line ``body_line_count`` right before the closing brace.
Each injection records the exact character span it added so the original
text can be recovered byte for byte.
"""

from __future__ import annotations

import textwrap
from dataclasses import dataclass

from ..cpp import ExtractionError, extract_functions
from .snippets import MaliciousSnippet

# ---------------------------------------------------------------------------
# positions
# ---------------------------------------------------------------------------

POSITIONS = ("beginning", "mid", "end")


def insertion_line(position, body_line_count):
    """Body line index the snippet is inserted after (0 = before all)."""
    if position == "beginning":
        return 0
    if position == "mid":
        return (body_line_count + 1) // 2
    if position == "end":
        return body_line_count
    raise InjectionError(f"unknown position {position!r}")


class InjectionError(Exception):
    """Raised when a snippet cannot be placed or breaks the function."""


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InjectionRecord:
    """One applied injection, with enough state to undo it exactly."""

    snippet_id: str
    position: str
    insert_after: int       # body line index the snippet follows
    removal_span: tuple     # (start, end) char range within the new text
    function: object        # re-extracted ExtractedFunction for the new text

    @property
    def injected_text(self):
        return self.function.full_text

    def reverted_text(self):
        """New text with the inserted span removed; equals the original."""
        start, end = self.removal_span
        text = self.function.full_text
        return text[:start] + text[end:]


# ---------------------------------------------------------------------------
# indentation
# ---------------------------------------------------------------------------


def _leading_ws(line):
    return line[:len(line) - len(line.lstrip())]


def _target_indent(fn, pieces, insert_idx):
    """Indent for the snippet: copied from the nearest earlier body line.

    At the top of the body only the opening-brace line precedes, so the
    first real body line below sets the indent instead; an empty body
    falls back to one step past the brace line.
    """
    sig_last = fn.signature_text.rsplit("\n", 1)[-1]
    for j in range(insert_idx - 1, 0, -1):
        if pieces[j].strip():
            return _leading_ws(pieces[j])
    for piece in pieces[insert_idx:]:
        if piece.strip():
            return _leading_ws(piece)
    return _leading_ws(sig_last) + "    "


def _indented_snippet(snippet, indent):
    body = textwrap.dedent(snippet.text).split("\n")
    return [indent + ln if ln.strip() else ln for ln in body]


# ---------------------------------------------------------------------------
# injection
# ---------------------------------------------------------------------------


def _reextract(new_text, fn):
    try:
        fns = extract_functions(new_text)
    except ExtractionError as exc:
        raise InjectionError(f"injected text no longer parses: {exc}") from exc
    if len(fns) != 1 or fns[0].full_text != new_text:
        raise InjectionError("injected text is not a single function")
    if fns[0].name != fn.name:
        raise InjectionError(
            f"injection changed the function name "
            f"({fn.name!r} -> {fns[0].name!r})")
    return fns[0]


def inject(fn, snippet, position, insert_after=None):
    """Insert ``snippet`` into ``fn``'s body and return an InjectionRecord.

    ``position`` picks the body line via insertion_line(); an explicit
    ``insert_after`` overrides it.  The injected text is re-extracted to
    prove it still parses as the same single function.
    """
    if not isinstance(snippet, MaliciousSnippet):
        raise InjectionError("snippet must be a MaliciousSnippet")
    line_count = fn.body_line_count
    if insert_after is None:
        insert_after = insertion_line(position, line_count)
    if not 0 <= insert_after <= line_count:
        raise InjectionError(
            f"insert_after {insert_after} outside [0, {line_count}]")

    region = fn.body_region
    pieces = region.split("\n")
    # First piece shares the opening-brace line; skip it when it is the
    # blank fragment split_body_lines drops, so body-line indices align.
    lo = 1 if len(pieces) > 1 and pieces[0].strip() == "" else 0
    insert_idx = lo + insert_after

    indent = _target_indent(fn, pieces, insert_idx)
    body = _indented_snippet(snippet, indent)
    new_region = "\n".join(pieces[:insert_idx] + body + pieces[insert_idx:])
    new_text = fn.signature_text + new_region + "}"

    if insert_idx < len(pieces):
        region_off = sum(len(p) + 1 for p in pieces[:insert_idx])
    else:
        region_off = len(region)
    start = len(fn.signature_text) + region_off
    span = (start, start + len("\n".join(body)) + 1)

    new_fn = _reextract(new_text, fn)
    return InjectionRecord(
        snippet_id=snippet.snippet_id,
        position=position,
        insert_after=insert_after,
        removal_span=span,
        function=new_fn,
    )


def inject_random(fn, snippets, rng, max_attempts=None):
    """Inject one randomly drawn snippet at a randomly drawn position.

    Draws snippet first, then position.  Retries a bounded number of
    times when a draw fails validation, then gives up.
    """
    if not snippets:
        raise InjectionError("empty snippet corpus")
    attempts = max_attempts if max_attempts is not None else 3 * len(snippets)
    last = None
    for _ in range(max(1, attempts)):
        snippet = snippets[rng.randrange(len(snippets))]
        position = POSITIONS[rng.randrange(len(POSITIONS))]
        try:
            return inject(fn, snippet, position)
        except InjectionError as exc:
            last = exc
    raise InjectionError(f"no valid injection found: {last}")
