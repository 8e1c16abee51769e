"""Reversible snippet injection into extracted function bodies."""

import random

import pytest

from cohwatch.cpp import extract_functions, is_syntactically_valid
from cohwatch.inject import (
    InjectionError,
    InjectionRecord,
    MaliciousSnippet,
    POSITIONS,
    inject,
    inject_random,
    insertion_line,
)

SNIPPET = MaliciousSnippet(
    snippet_id="beacon",
    description="phones home",
    lines=("open_channel();", "send_all(data);"),
)

PLAIN = (
    "int scale(int value) {\n"
    "    int doubled = value * 2;\n"
    "    int shifted = doubled + 1;\n"
    "    return shifted;\n"
    "}"
)


def _fn(text=PLAIN):
    fns = extract_functions(text)
    assert len(fns) == 1
    return fns[0]


# ---------------------------------------------------------------------------
# position arithmetic
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("position, lines, expected", [
    ("beginning", 4, 0),
    ("mid", 4, 2),
    ("mid", 5, 3),
    ("mid", 1, 1),
    ("end", 4, 4),
    ("beginning", 0, 0),
    ("mid", 0, 0),
    ("end", 0, 0),
])
def test_insertion_line(position, lines, expected):
    assert insertion_line(position, lines) == expected


def test_unknown_position_rejected():
    with pytest.raises(InjectionError, match="unknown position"):
        insertion_line("middle", 4)
    with pytest.raises(InjectionError, match="unknown position"):
        inject(_fn(), SNIPPET, "middle")


# ---------------------------------------------------------------------------
# single injections
# ---------------------------------------------------------------------------


def test_inject_at_beginning():
    rec = inject(_fn(), SNIPPET, "beginning")
    assert rec.injected_text == (
        "int scale(int value) {\n"
        "    open_channel();\n"
        "    send_all(data);\n"
        "    int doubled = value * 2;\n"
        "    int shifted = doubled + 1;\n"
        "    return shifted;\n"
        "}"
    )


def test_inject_at_end():
    rec = inject(_fn(), SNIPPET, "end")
    assert rec.injected_text.endswith(
        "    return shifted;\n"
        "    open_channel();\n"
        "    send_all(data);\n"
        "}"
    )


def test_inject_mid_splits_body():
    rec = inject(_fn(), SNIPPET, "mid")
    body = rec.function.body_lines
    old = _fn().body_lines
    a = insertion_line("mid", len(old))
    assert body == old[:a] + tuple("    " + ln for ln in SNIPPET.lines) + old[a:]


def test_body_composition_law_all_positions():
    fn = _fn()
    old = fn.body_lines
    for position in POSITIONS:
        rec = inject(fn, SNIPPET, position)
        a = rec.insert_after
        inserted = rec.function.body_lines[a:a + SNIPPET.line_count]
        assert [ln.strip() for ln in inserted] == list(SNIPPET.lines)
        assert rec.function.body_lines == \
            old[:a] + inserted + old[a:]
        assert rec.function.body_line_count == \
            fn.body_line_count + SNIPPET.line_count


def test_reversal_is_byte_exact():
    fn = _fn()
    for position in POSITIONS:
        rec = inject(fn, SNIPPET, position)
        assert rec.reverted_text() == fn.full_text


@pytest.mark.parametrize("text", [
    "void tiny() {}",
    "void tiny() {\n}",
    "int one() { return 1; }",
    ("namespace app {\n"
     "class Box {\n"
     "    int get() const {\n"
     "        return v_;\n"
     "    }\n"
     "};\n"
     "}").split("class ")[0] + ("class Box {\n"
                                "    int get() const {\n"
                                "        return v_;\n"
                                "    }\n"
                                "};\n"
                                "}"),
])
def test_reversal_across_brace_styles(text):
    for fn in extract_functions(text):
        for position in POSITIONS:
            rec = inject(fn, SNIPPET, position)
            assert rec.reverted_text() == fn.full_text
            assert is_syntactically_valid(rec.injected_text)


def test_explicit_insert_after_overrides_position():
    rec = inject(_fn(), SNIPPET, "beginning", insert_after=3)
    assert rec.insert_after == 3
    assert rec.position == "beginning"
    assert rec.injected_text.endswith(
        "    return shifted;\n"
        "    open_channel();\n"
        "    send_all(data);\n"
        "}"
    )


def test_insert_after_bounds_checked():
    with pytest.raises(InjectionError, match="outside"):
        inject(_fn(), SNIPPET, "end", insert_after=4)
    with pytest.raises(InjectionError, match="outside"):
        inject(_fn(), SNIPPET, "end", insert_after=-1)


def test_non_snippet_rejected():
    with pytest.raises(InjectionError, match="MaliciousSnippet"):
        inject(_fn(), "open_channel();", "end")


# ---------------------------------------------------------------------------
# indentation
# ---------------------------------------------------------------------------


def test_indent_copied_from_member_function():
    text = ("class Box {\n"
            "    int get() const {\n"
            "        return v_;\n"
            "    }\n"
            "};")
    rec = inject(extract_functions(text)[0], SNIPPET, "beginning")
    assert "\n        open_channel();\n" in rec.injected_text


def test_indent_inside_brace_on_own_line():
    rec = inject(_fn("void go()\n{\n    run();\n}"), SNIPPET, "beginning")
    assert rec.injected_text == (
        "void go()\n{\n"
        "    open_channel();\n"
        "    send_all(data);\n"
        "    run();\n"
        "}"
    )


def test_snippet_own_indentation_is_dedented_first():
    padded = MaliciousSnippet(
        snippet_id="padded",
        description="indented source",
        lines=("    if (armed) {", "        fire();", "    }"),
    )
    rec = inject(_fn(), padded, "end")
    assert rec.injected_text.endswith(
        "    return shifted;\n"
        "    if (armed) {\n"
        "        fire();\n"
        "    }\n"
        "}"
    )
    assert rec.reverted_text() == PLAIN


def test_blank_snippet_lines_stay_blank():
    gapped = MaliciousSnippet(
        snippet_id="gapped",
        description="has a blank line",
        lines=("first();", "", "second();"),
    )
    rec = inject(_fn(), gapped, "end")
    assert "    first();\n\n    second();" in rec.injected_text
    assert rec.reverted_text() == PLAIN


# ---------------------------------------------------------------------------
# over the corpus fixture
# ---------------------------------------------------------------------------


def test_all_positions_valid_across_fixture(fifty_functions, snippet_corpus):
    checked = 0
    for fn in fifty_functions[:12]:
        for snippet in snippet_corpus[:3]:
            for position in POSITIONS:
                rec = inject(fn, snippet, position)
                assert is_syntactically_valid(rec.injected_text)
                assert rec.reverted_text() == fn.full_text
                assert rec.function.body_line_count == \
                    fn.body_line_count + snippet.line_count
                checked += 1
    assert checked == 12 * 3 * 3


# ---------------------------------------------------------------------------
# failures that re-extraction must catch
# ---------------------------------------------------------------------------


def test_snippet_split_by_line_continuation_fails():
    # the backslash glues the snippet's first line onto the #define; the
    # second line then closes the function early and opens another one
    fn = _fn("void go() {\n"
             "#define STEP(x) \\\n"
             "    run(x);\n"
             "    STEP(1)\n"
             "}")
    hungry = MaliciousSnippet(
        snippet_id="hungry",
        description="escapes the body across the continuation",
        lines=("setup();", "} void evil() {"),
    )
    with pytest.raises(InjectionError):
        inject(fn, hungry, "beginning", insert_after=1)


# ---------------------------------------------------------------------------
# random injection
# ---------------------------------------------------------------------------


def test_inject_random_is_deterministic(snippet_corpus):
    fn = _fn()
    a = inject_random(fn, snippet_corpus, random.Random(42))
    b = inject_random(fn, snippet_corpus, random.Random(42))
    assert a == b
    c = inject_random(fn, snippet_corpus, random.Random(43))
    assert (c.snippet_id, c.position) != (a.snippet_id, a.position) or \
        c.injected_text == a.injected_text


def test_inject_random_empty_corpus():
    with pytest.raises(InjectionError, match="empty snippet corpus"):
        inject_random(_fn(), [], random.Random(0))


def test_inject_random_draw_uniformity(snippet_corpus):
    fn = _fn()
    rng = random.Random(2024)
    positions = {p: 0 for p in POSITIONS}
    snippets = {s.snippet_id: 0 for s in snippet_corpus}
    draws = 9000
    for _ in range(draws):
        rec = inject_random(fn, snippet_corpus, rng)
        positions[rec.position] += 1
        snippets[rec.snippet_id] += 1
    # 3 positions: mean 3000, sigma = sqrt(9000 * (1/3) * (2/3)) ~ 44.7
    for count in positions.values():
        assert abs(count - draws / 3) < 4 * 44.8
    # 9 snippets: mean 1000, sigma = sqrt(9000 * (1/9) * (8/9)) ~ 29.8
    for count in snippets.values():
        assert abs(count - draws / 9) < 4 * 29.9


def test_inject_random_retries_until_valid(monkeypatch):
    fn = _fn()
    calls = []
    real_inject = inject

    def flaky(fn_, snippet, position):
        calls.append(position)
        if len(calls) < 3:
            raise InjectionError("synthetic failure")
        return real_inject(fn_, snippet, position)

    import cohwatch.inject.injector as injector_mod
    monkeypatch.setattr(injector_mod, "inject", flaky)
    rec = inject_random(fn, [SNIPPET], random.Random(0))
    assert isinstance(rec, InjectionRecord)
    assert len(calls) == 3


def test_inject_random_gives_up_after_max_attempts(monkeypatch):
    import cohwatch.inject.injector as injector_mod

    def always_fail(fn_, snippet, position):
        raise InjectionError("synthetic failure")

    monkeypatch.setattr(injector_mod, "inject", always_fail)
    with pytest.raises(InjectionError, match="no valid injection"):
        inject_random(_fn(), [SNIPPET], random.Random(0), max_attempts=5)
