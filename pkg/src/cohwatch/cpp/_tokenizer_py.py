"""Pure-Python C++ tokenizer.

Reference implementation of the tokenizer contract.  The compiled
extension in ``_tokenizer_cy.pyx`` is a line-for-line port of this scanner;
any behavioural change here must be mirrored there (the test suite runs a
differential check over both backends).

The scanner is deliberately lenient: it only rejects input for constructs
that make the rest of the file unreadable (unterminated block comments,
strings, character and raw-string literals).  Unknown characters become
single-character punctuation tokens.
"""

from .tokens import CHAR, COMMENT, IDENT, NUMBER, PP_DIRECTIVE, PUNCT, STRING

_RAW_PREFIXES = ("R", "u8R", "uR", "UR", "LR")
_ENC_PREFIXES = ("u8", "u", "U", "L")
_OPS3 = frozenset(("<<=", ">>=", "...", "->*", "<=>"))
_OPS2 = frozenset((
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=",
    ".*", "##",
))


def _is_ident_start(ch):
    return ("a" <= ch <= "z") or ("A" <= ch <= "Z") or ch == "_" or ch > "\x7f"


def _is_ident_char(ch):
    return (
        ("a" <= ch <= "z")
        or ("A" <= ch <= "Z")
        or ("0" <= ch <= "9")
        or ch == "_"
        or ch > "\x7f"
    )


def _scan_quoted(text, i, quote):
    """Scan from the opening quote; return index past the closing quote or -1."""
    n = len(text)
    i += 1
    while i < n:
        ch = text[i]
        if ch == "\\":
            i += 2
            continue
        if ch == quote:
            return i + 1
        if ch == "\n":
            return -1
        i += 1
    return -1


def tokenize(text):
    """Tokenize C++ source text.

    Returns ``(tokens, error_offset, error_message)`` where ``tokens`` is a
    list of ``(kind, start, end)`` tuples.  ``error_offset`` is -1 on
    success; on failure it points at the offending construct and ``tokens``
    holds everything scanned before it.
    """
    toks = []
    n = len(text)
    i = 0
    line_start = True  # nothing but whitespace since the last newline
    while i < n:
        c = text[i]
        if c == "\n":
            line_start = True
            i += 1
            continue
        if c == " " or c == "\t" or c == "\r" or c == "\f" or c == "\v":
            i += 1
            continue
        start = i
        at_line_start = line_start
        line_start = False

        if c == "/" and i + 1 < n:
            d = text[i + 1]
            if d == "/":
                i += 2
                while i < n and text[i] != "\n":
                    i += 1
                toks.append((COMMENT, start, i))
                continue
            if d == "*":
                j = text.find("*/", i + 2)
                if j < 0:
                    return toks, start, "unterminated block comment"
                i = j + 2
                toks.append((COMMENT, start, i))
                continue

        if c == "#" and at_line_start:
            # Preprocessor line; backslash-newline continues it.  Contents
            # are kept raw: directives never shape extraction decisions.
            i += 1
            while i < n:
                if text[i] == "\n":
                    k = i - 1
                    if k >= 0 and text[k] == "\r":
                        k -= 1
                    if k >= start and text[k] == "\\":
                        i += 1
                        continue
                    break
                i += 1
            toks.append((PP_DIRECTIVE, start, i))
            line_start = True
            continue

        if _is_ident_start(c):
            i += 1
            while i < n and _is_ident_char(text[i]):
                i += 1
            word = text[start:i]
            if i < n:
                nxt = text[i]
                if nxt == '"' and word in _RAW_PREFIXES:
                    # R"delim( ... )delim"
                    j = i + 1
                    k = text.find("(", j)
                    if k < 0 or k - j > 16:
                        return toks, start, "malformed raw string delimiter"
                    delim = ")" + text[j:k] + '"'
                    end = text.find(delim, k + 1)
                    if end < 0:
                        return toks, start, "unterminated raw string"
                    i = end + len(delim)
                    toks.append((STRING, start, i))
                    continue
                if nxt == '"' and word in _ENC_PREFIXES:
                    end = _scan_quoted(text, i, '"')
                    if end < 0:
                        return toks, start, "unterminated string literal"
                    i = end
                    toks.append((STRING, start, i))
                    continue
                if nxt == "'" and word in _ENC_PREFIXES:
                    end = _scan_quoted(text, i, "'")
                    if end < 0:
                        return toks, start, "unterminated character literal"
                    i = end
                    toks.append((CHAR, start, i))
                    continue
            toks.append((IDENT, start, i))
            continue

        if ("0" <= c <= "9") or (
            c == "." and i + 1 < n and "0" <= text[i + 1] <= "9"
        ):
            i += 1
            while i < n:
                ch = text[i]
                if (
                    ("0" <= ch <= "9")
                    or ("a" <= ch <= "z")
                    or ("A" <= ch <= "Z")
                    or ch == "_"
                    or ch == "."
                ):
                    if (
                        (ch == "e" or ch == "E" or ch == "p" or ch == "P")
                        and i + 1 < n
                        and (text[i + 1] == "+" or text[i + 1] == "-")
                    ):
                        i += 2
                    else:
                        i += 1
                elif ch == "'" and i + 1 < n and _is_ident_char(text[i + 1]):
                    # digit separator, e.g. 1'000'000
                    i += 2
                else:
                    break
            toks.append((NUMBER, start, i))
            continue

        if c == '"':
            end = _scan_quoted(text, i, '"')
            if end < 0:
                return toks, start, "unterminated string literal"
            i = end
            toks.append((STRING, start, i))
            continue

        if c == "'":
            end = _scan_quoted(text, i, "'")
            if end < 0:
                return toks, start, "unterminated character literal"
            i = end
            toks.append((CHAR, start, i))
            continue

        if text[i : i + 3] in _OPS3:
            i += 3
        elif text[i : i + 2] in _OPS2:
            i += 2
        else:
            i += 1
        toks.append((PUNCT, start, i))

    return toks, -1, ""
