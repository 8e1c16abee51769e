# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled C++ tokenizer.

Line-for-line port of ``_tokenizer_py.tokenize``; the per-character scan
loops run as typed C loops.  Output and error behaviour must stay
identical to the pure backend (enforced by a differential test).
"""

from .tokens import CHAR, COMMENT, IDENT, NUMBER, PP_DIRECTIVE, PUNCT, STRING

cdef int K_IDENT = IDENT
cdef int K_NUMBER = NUMBER
cdef int K_STRING = STRING
cdef int K_CHAR = CHAR
cdef int K_PUNCT = PUNCT
cdef int K_COMMENT = COMMENT
cdef int K_PP = PP_DIRECTIVE

_RAW_PREFIXES = ("R", "u8R", "uR", "UR", "LR")
_ENC_PREFIXES = ("u8", "u", "U", "L")
_OPS3 = frozenset(("<<=", ">>=", "...", "->*", "<=>"))
_OPS2 = frozenset((
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=",
    ".*", "##",
))


cdef inline bint _is_ident_start(Py_UCS4 ch):
    return (u"a" <= ch <= u"z") or (u"A" <= ch <= u"Z") or ch == u"_" or ch > 0x7f


cdef inline bint _is_ident_char(Py_UCS4 ch):
    return (
        (u"a" <= ch <= u"z")
        or (u"A" <= ch <= u"Z")
        or (u"0" <= ch <= u"9")
        or ch == u"_"
        or ch > 0x7f
    )


cdef Py_ssize_t _scan_quoted(unicode text, Py_ssize_t i, Py_UCS4 quote):
    cdef Py_ssize_t n = len(text)
    cdef Py_UCS4 ch
    i += 1
    while i < n:
        ch = text[i]
        if ch == u"\\":
            i += 2
            continue
        if ch == quote:
            return i + 1
        if ch == u"\n":
            return -1
        i += 1
    return -1


def tokenize(unicode text):
    """Tokenize C++ source text; same contract as the pure backend."""
    cdef list toks = []
    cdef Py_ssize_t n = len(text)
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t start, j, k, end
    cdef Py_UCS4 c, d, ch
    cdef bint line_start = True
    cdef bint at_line_start
    cdef unicode word, delim

    while i < n:
        c = text[i]
        if c == u"\n":
            line_start = True
            i += 1
            continue
        if c == u" " or c == u"\t" or c == u"\r" or c == u"\f" or c == u"\v":
            i += 1
            continue
        start = i
        at_line_start = line_start
        line_start = False

        if c == u"/" and i + 1 < n:
            d = text[i + 1]
            if d == u"/":
                i += 2
                while i < n and text[i] != u"\n":
                    i += 1
                toks.append((K_COMMENT, start, i))
                continue
            if d == u"*":
                j = text.find(u"*/", i + 2)
                if j < 0:
                    return toks, start, "unterminated block comment"
                i = j + 2
                toks.append((K_COMMENT, start, i))
                continue

        if c == u"#" and at_line_start:
            i += 1
            while i < n:
                if text[i] == u"\n":
                    k = i - 1
                    if k >= 0 and text[k] == u"\r":
                        k -= 1
                    if k >= start and text[k] == u"\\":
                        i += 1
                        continue
                    break
                i += 1
            toks.append((K_PP, start, i))
            line_start = True
            continue

        if _is_ident_start(c):
            i += 1
            while i < n and _is_ident_char(text[i]):
                i += 1
            word = text[start:i]
            if i < n:
                d = text[i]
                if d == u'"' and word in _RAW_PREFIXES:
                    j = i + 1
                    k = text.find(u"(", j)
                    if k < 0 or k - j > 16:
                        return toks, start, "malformed raw string delimiter"
                    delim = u")" + text[j:k] + u'"'
                    end = text.find(delim, k + 1)
                    if end < 0:
                        return toks, start, "unterminated raw string"
                    i = end + len(delim)
                    toks.append((K_STRING, start, i))
                    continue
                if d == u'"' and word in _ENC_PREFIXES:
                    end = _scan_quoted(text, i, u'"')
                    if end < 0:
                        return toks, start, "unterminated string literal"
                    i = end
                    toks.append((K_STRING, start, i))
                    continue
                if d == u"'" and word in _ENC_PREFIXES:
                    end = _scan_quoted(text, i, u"'")
                    if end < 0:
                        return toks, start, "unterminated character literal"
                    i = end
                    toks.append((K_CHAR, start, i))
                    continue
            toks.append((K_IDENT, start, i))
            continue

        if (u"0" <= c <= u"9") or (
            c == u"." and i + 1 < n and u"0" <= text[i + 1] <= u"9"
        ):
            i += 1
            while i < n:
                ch = text[i]
                if (
                    (u"0" <= ch <= u"9")
                    or (u"a" <= ch <= u"z")
                    or (u"A" <= ch <= u"Z")
                    or ch == u"_"
                    or ch == u"."
                ):
                    if (
                        (ch == u"e" or ch == u"E" or ch == u"p" or ch == u"P")
                        and i + 1 < n
                        and (text[i + 1] == u"+" or text[i + 1] == u"-")
                    ):
                        i += 2
                    else:
                        i += 1
                elif ch == u"'" and i + 1 < n and _is_ident_char(text[i + 1]):
                    i += 2
                else:
                    break
            toks.append((K_NUMBER, start, i))
            continue

        if c == u'"':
            end = _scan_quoted(text, i, u'"')
            if end < 0:
                return toks, start, "unterminated string literal"
            i = end
            toks.append((K_STRING, start, i))
            continue

        if c == u"'":
            end = _scan_quoted(text, i, u"'")
            if end < 0:
                return toks, start, "unterminated character literal"
            i = end
            toks.append((K_CHAR, start, i))
            continue

        if text[i : i + 3] in _OPS3:
            i += 3
        elif text[i : i + 2] in _OPS2:
            i += 2
        else:
            i += 1
        toks.append((K_PUNCT, start, i))

    return toks, -1, ""
