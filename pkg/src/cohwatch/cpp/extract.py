"""C++ function-definition extraction from raw source text.

Grammar-based concrete-syntax scan: no preprocessing, no symbol table.
The scanner walks the token stream, tracks namespace/class scope, and
recognises the shape ``name ( params ) tail {`` at namespace or class
scope.  Free functions and member functions (including out-of-class
definitions) are extracted; declarations, ``= default``/``= delete``
bodies, lambdas and function-local definitions are not.  Constructors,
destructors and operators are extracted but flagged via ``kind`` so
callers can exclude them.

Known blind spots, accepted as the cost of not preprocessing: function
definitions hidden behind unexpanded macros are extracted as written
(macro name and all), functions returning function pointers in the
old-style spelling are skipped, and ``#if``/``#else`` branches that leave
the brace structure unbalanced fail the whole file.
"""

from dataclasses import dataclass

from .lexer import raw_tokenize
from .tokens import COMMENT, IDENT, PP_DIRECTIVE, PUNCT, STRING

# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


class ExtractionError(ValueError):
    """Source text could not be parsed far enough to extract functions."""

    def __init__(self, message, offset, line=None):
        loc = f"offset {offset}" if line is None else f"line {line}"
        super().__init__(f"{message} ({loc})")
        self.reason = message
        self.offset = offset
        self.line = line


@dataclass(frozen=True)
class ExtractedFunction:
    """One function definition, sliced verbatim out of the source."""

    name: str                      # unqualified name as written
    qualified_name: str            # scope path + explicit qualifiers + name
    arg_types: tuple = ()          # normalized parameter type spellings
    kind: str = "plain"            # plain | constructor | destructor | operator
    signature_text: str = ""       # declaration start through the opening brace
    body_lines: tuple = ()         # lines strictly between the outer braces
    full_text: str = ""            # signature + body + closing brace, verbatim
    name_span: tuple = (0, 0)      # name offsets within full_text
    start_offset: int = 0          # offset of full_text within the source
    start_line: int = 1            # 1-based line of the declaration start

    @property
    def body_line_count(self):
        return len(self.body_lines)

    @property
    def body_region(self):
        """Raw text between the outer braces (reconstruction-exact)."""
        return self.full_text[len(self.signature_text):-1]


# ---------------------------------------------------------------------------
# keyword tables
# ---------------------------------------------------------------------------

_CONTROL_WORDS = frozenset((
    "if", "for", "while", "switch", "catch", "return", "do", "else",
    "goto", "case", "default",
))

_TYPE_WORDS = frozenset((
    "void", "int", "char", "bool", "float", "double", "short", "long",
    "signed", "unsigned", "auto", "wchar_t", "char8_t", "char16_t",
    "char32_t",
))

# words that can never be the name in `name(...)` of a function definition
_NOT_A_NAME = _CONTROL_WORDS | _TYPE_WORDS | frozenset((
    "sizeof", "alignof", "alignas", "decltype", "typeid", "noexcept",
    "throw", "new", "delete", "static_assert", "asm", "requires",
    "co_await", "co_return", "co_yield",
    "and", "or", "not", "bitand", "bitor", "xor", "compl",
    "const", "constexpr", "consteval", "constinit", "volatile", "static",
    "inline", "virtual", "explicit", "friend", "typename", "template",
    "using", "namespace", "operator", "public", "private", "protected",
    "try", "enum", "class", "struct", "union", "extern", "register",
    "thread_local", "mutable", "export", "this", "true", "false",
    "nullptr", "__attribute__", "__declspec", "__asm", "__asm__",
))

# allowed between `)` and the body `{`; noexcept/throw/alignas/requires may
# carry a parenthesised group
_TAIL_OK_WORDS = frozenset((
    "const", "volatile", "noexcept", "throw", "override", "final",
    "mutable", "try", "requires", "alignas",
))
_TAIL_PAREN_WORDS = frozenset(("noexcept", "throw", "alignas", "requires"))

# cv-ish words that do not by themselves carry a parameter's type
_QUALIFIER_WORDS = frozenset((
    "const", "volatile", "struct", "class", "enum", "union", "typename",
    "register", "constexpr", "mutable",
))

_NO_SPACE_BEFORE = frozenset((",", ")", "]", ">", ">>", "::", "<", "...", "["))
_NO_SPACE_AFTER = frozenset(("(", "[", "<", "::", "~", "!"))


# ---------------------------------------------------------------------------
# small helpers over the structural token list
# ---------------------------------------------------------------------------


def _tight_join(parts):
    """Join token texts with single spaces, tightened around punctuation."""
    out = []
    prev = None
    for p in parts:
        if not p:
            continue
        if out and not (
            p in _NO_SPACE_BEFORE
            or prev in _NO_SPACE_AFTER
            or (p == "(" and prev == ")")
            or (p in ("*", "&", "&&") and prev in ("*", "&", "&&"))
        ):
            out.append(" ")
        out.append(p)
        prev = p
    return "".join(out)


def _match_brackets(st, text):
    """Map open-bracket index -> close-bracket index for (), {}, []."""
    match = {}
    rmatch = {}
    stack = []
    closers = {")": "(", "}": "{", "]": "["}
    for idx, (kind, s, e) in enumerate(st):
        if kind != PUNCT or e - s != 1:
            continue
        ch = text[s]
        if ch in "({[":
            stack.append((ch, idx, s))
        elif ch in ")}]":
            if not stack or stack[-1][0] != closers[ch]:
                raise ExtractionError(f"unbalanced '{ch}'", s)
            opener = stack.pop()
            match[opener[1]] = idx
            rmatch[idx] = opener[1]
    if stack:
        ch, _, s = stack[-1]
        raise ExtractionError(f"unclosed '{ch}'", s)
    return match, rmatch


def _skip_template_args(st, i, text, match):
    """st[i] is '<'; return index just past the matching '>', or -1."""
    depth = 0
    n = len(st)
    steps = 0
    while i < n and steps < 4000:
        kind, s, e = st[i]
        t = text[s:e]
        if t == "<":
            depth += 1
            i += 1
        elif t == ">":
            depth -= 1
            i += 1
            if depth <= 0:
                return i
        elif t == ">>":
            depth -= 2
            i += 1
            if depth <= 0:
                return i
        elif t in ("(", "[", "{"):
            i = match[i] + 1
        elif t == ";":
            return -1
        else:
            i += 1
        steps += 1
    return -1


def _skip_template_back(st, i, text, rmatch):
    """st[i] is '>' or '>>'; return index of the matching '<', or -1."""
    depth = 0
    steps = 0
    while i >= 0 and steps < 4000:
        kind, s, e = st[i]
        t = text[s:e]
        if t == ">":
            depth += 1
        elif t == ">>":
            depth += 2
        elif t == "<":
            depth -= 1
            if depth <= 0:
                return i
        elif t in (")", "]", "}"):
            i = rmatch.get(i, i)
        elif t in (";", "{"):
            return -1
        i -= 1
        steps += 1
    return -1


def _skip_past_semicolon(st, i, text, match):
    """Advance past the next top-level ';', hopping over bracket groups."""
    n = len(st)
    while i < n:
        kind, s, e = st[i]
        t = text[s:e]
        if t == ";":
            return i + 1
        if t in ("(", "[", "{"):
            i = match[i] + 1
            continue
        i += 1
    return n


# ---------------------------------------------------------------------------
# parameter type spellings
# ---------------------------------------------------------------------------


def _param_segments(st, open_idx, close_idx, text, match):
    """Token-index segments between top-level commas of a parameter list."""
    segs = []
    cur = []
    angle = 0
    j = open_idx + 1
    while j < close_idx:
        kind, s, e = st[j]
        t = text[s:e]
        if t in ("(", "[", "{"):
            end = match[j]
            while j <= end:
                cur.append(j)
                j += 1
            continue
        if t == "<":
            angle += 1
        elif t == ">":
            angle = angle - 1 if angle else 0
        elif t == ">>":
            angle = max(0, angle - 2)
        elif t == "," and angle == 0:
            segs.append(cur)
            cur = []
            j += 1
            continue
        cur.append(j)
        j += 1
    segs.append(cur)
    return segs


def _spell_type(st, seg, text):
    """Normalize one parameter: strip the default, drop the declared name."""
    texts = []
    kinds = []
    angle = 0
    depth = 0
    for idx in seg:
        kind, s, e = st[idx]
        t = text[s:e]
        if depth == 0 and angle == 0 and t == "=":
            break
        if t in ("(", "[", "{"):
            depth += 1
        elif t in (")", "]", "}"):
            depth -= 1
        elif depth == 0:
            if t == "<":
                angle += 1
            elif t == ">":
                angle = angle - 1 if angle else 0
            elif t == ">>":
                angle = max(0, angle - 2)
        texts.append(t)
        kinds.append(kind)
    if not texts:
        return ""
    if texts == ["..."]:
        return "..."

    # candidate name position: last token before any trailing [...] groups
    end = len(texts)
    while end > 0 and texts[end - 1] == "]":
        depth = 0
        k = end - 1
        while k >= 0:
            if texts[k] == "]":
                depth += 1
            elif texts[k] == "[":
                depth -= 1
                if depth == 0:
                    break
            k -= 1
        if k < 0 or depth != 0:
            break
        end = k
    cand = end - 1

    def _carries_type(upto):
        for k in range(upto):
            if kinds[k] == IDENT and texts[k] not in _QUALIFIER_WORDS:
                return True
            if texts[k] in (">", ">>", ")", "*", "&", "&&"):
                return True
        return False

    dropped = False
    if (
        cand >= 0
        and kinds[cand] == IDENT
        and texts[cand] not in _TYPE_WORDS
        and texts[cand] not in _QUALIFIER_WORDS
        and (cand == 0 or texts[cand - 1] != "::")
        and _carries_type(cand)
    ):
        del texts[cand]
        dropped = True
    if not dropped:
        # function-pointer style: drop `name` in (*name) / (C::*name)
        for k in range(len(texts) - 1, -1, -1):
            if (
                kinds[k] == IDENT
                and texts[k] not in _TYPE_WORDS
                and texts[k] not in _QUALIFIER_WORDS
                and k > 0
                and texts[k - 1] in ("*", "&", "&&")
                and "(" in texts[:k]
                and ")" in texts[k + 1:]
            ):
                del texts[k]
                break
    return _tight_join(texts)


def _param_spellings(st, open_idx, close_idx, text, match):
    segs = _param_segments(st, open_idx, close_idx, text, match)
    if len(segs) == 1 and not segs[0]:
        return ()
    spells = [_spell_type(st, seg, text) for seg in segs]
    if spells == ["void"]:
        return ()
    return tuple(spells)


# ---------------------------------------------------------------------------
# name recognition
# ---------------------------------------------------------------------------

_OPERATOR_WALK_PUNCT = frozenset((
    "*", "&", "&&", "::", "<", ">", ">>", "~", "[", "]",
    "+", "-", "/", "%", "^", "|", "!", "=", "==", "!=", "<=", ">=",
    "<<", "<=>", "++", "--", "+=", "-=", "*=", "/=", "%=", "^=", "&=",
    "|=", "<<=", ">>=", "->", "->*", ",",
))


def _name_before_paren(st, open_idx, text, rmatch):
    """Recognise the function name ending directly before ``st[open_idx]``.

    Returns ``(name, kind, first_idx, name_span, qual_names)`` or None.
    ``first_idx`` is the index of the leftmost token belonging to the
    (possibly qualified) name; ``name_span`` are source offsets of the
    declaration-site name itself.
    """
    p = open_idx - 1
    if p < 0:
        return None
    kind_p, s_p, e_p = st[p]
    t_p = text[s_p:e_p]
    if kind_p == IDENT and t_p in _CONTROL_WORDS:
        return None

    name = None
    fn_kind = "plain"
    first = p
    span = (s_p, e_p)

    def _txt(i):
        k, s, e = st[i]
        return text[s:e]

    if kind_p == IDENT and t_p not in _NOT_A_NAME:
        if p >= 1 and _txt(p - 1) == "~":
            name = "~" + t_p
            fn_kind = "destructor"
            first = p - 1
            span = (st[p - 1][1], e_p)
        elif p >= 1 and _txt(p - 1) == "operator":
            # conversion to a plain class type: operator T()
            name = "operator " + t_p
            fn_kind = "operator"
            first = p - 1
            span = (st[p - 1][1], e_p)
        elif p >= 2 and st[p - 1][0] == STRING and _txt(p - 2) == "operator":
            # user-defined literal: operator"" _suffix
            name = "operator" + _txt(p - 1) + " " + t_p
            fn_kind = "operator"
            first = p - 2
            span = (st[p - 2][1], e_p)
        else:
            name = t_p
    elif kind_p == PUNCT and t_p == ")" and p in rmatch:
        q = rmatch[p]
        if q >= 1 and _txt(q - 1) == "operator":
            name = "operator()"
            fn_kind = "operator"
            first = q - 1
            span = (st[q - 1][1], e_p)
    elif kind_p == PUNCT and t_p in (">", ">>"):
        # explicit specialization: name<args>(...)
        lt = _skip_template_back(st, p, text, rmatch)
        if lt >= 1 and st[lt - 1][0] == IDENT and _txt(lt - 1) not in _NOT_A_NAME:
            name = _txt(lt - 1)
            first = lt - 1
            span = (st[lt - 1][1], st[lt - 1][2])
    if name is None:
        # operator symbol or conversion-type sequence: walk back a bounded
        # number of tokens looking for the `operator` keyword
        q = p
        steps = 0
        while q >= 0 and steps < 12:
            tq = _txt(q)
            kq = st[q][0]
            if tq == "operator":
                parts = [_txt(r) for r in range(q + 1, open_idx)]
                tail = _tight_join(parts)
                name = "operator" + ("" if tail[:1] in "+-*/%^&|!=<>~[](),"
                                     else " ") + tail
                fn_kind = "operator"
                first = q
                span = (st[q][1], st[open_idx - 1][2])
                break
            if kq == IDENT or kq == STRING or tq in _OPERATOR_WALK_PUNCT:
                q -= 1
                steps += 1
                continue
            break
    if name is None:
        return None
    if fn_kind == "plain" and name in _NOT_A_NAME:
        return None

    # walk back over explicit qualifiers: A::B<T>::name
    quals = []
    if fn_kind != "operator":
        q = first - 1
        while q >= 0 and _txt(q) == "::":
            r = q - 1
            if r >= 0 and _txt(r) in (">", ">>"):
                lt = _skip_template_back(st, r, text, rmatch)
                if lt < 1:
                    break
                r = lt - 1
            if r >= 0 and st[r][0] == IDENT and _txt(r) not in _NOT_A_NAME:
                quals.insert(0, _txt(r))
                first = r
                q = r - 1
            else:
                break
        if first >= 1 and _txt(first - 1) == "operator":
            # conversion to a qualified type: operator std::string()
            name = "operator " + "::".join(quals + [name])
            fn_kind = "operator"
            quals = []
            first -= 1
            span = (st[first][1], span[1])
    return name, fn_kind, first, span, quals


# ---------------------------------------------------------------------------
# function candidate at an open paren
# ---------------------------------------------------------------------------


def _scan_ctor_init(st, j, text, match):
    """Scan a ctor-initializer list; return the body '{' index or -1."""
    n = len(st)
    while True:
        saw_id = False
        while j < n:
            kind, s, e = st[j]
            t = text[s:e]
            if kind == IDENT:
                saw_id = True
                j += 1
                continue
            if t == "::":
                j += 1
                continue
            if t == "<" and saw_id:
                nj = _skip_template_args(st, j, text, match)
                if nj < 0:
                    return -1
                j = nj
                continue
            break
        if not saw_id or j >= n:
            return -1
        t = text[st[j][1]:st[j][2]]
        if t in ("(", "{"):
            j = match[j] + 1
        else:
            return -1
        if j < n and text[st[j][1]:st[j][2]] == "...":
            j += 1
        if j >= n:
            return -1
        t = text[st[j][1]:st[j][2]]
        if t == ",":
            j += 1
            continue
        if t == "{":
            return j
        return -1


def _try_function(st, open_idx, text, match, rmatch):
    """If an open paren starts a function definition, locate its body.

    Returns ``(name, kind, first_idx, name_span, quals, open_paren,
    body_open, body_close)`` or None.
    """
    info = _name_before_paren(st, open_idx, text, rmatch)
    if info is None:
        return None
    name, fn_kind, first, span, quals = info
    close = match[open_idx]
    n = len(st)
    j = close + 1
    body_open = -1
    trailing = False
    angle = 0
    while j < n:
        kind, s, e = st[j]
        t = text[s:e]
        if t == "{":
            if trailing and angle > 0:
                j = match[j] + 1
                continue
            body_open = j
            break
        if trailing:
            # inside a trailing return type; commas are fine within <...>
            if t == ";" or t == "=" or (t == "," and angle == 0):
                return None
            if t == "<":
                angle += 1
            elif t == ">":
                angle = angle - 1 if angle else 0
            elif t == ">>":
                angle = max(0, angle - 2)
            elif t in ("(", "["):
                j = match[j] + 1
                continue
            j += 1
            continue
        if t in (";", ",", "="):
            return None
        if t == "->":
            trailing = True
            j += 1
            continue
        if t == ":":
            body_open = _scan_ctor_init(st, j + 1, text, match)
            break
        if kind == IDENT:
            if t in _TAIL_PAREN_WORDS and j + 1 < n and \
                    text[st[j + 1][1]:st[j + 1][2]] == "(":
                j = match[j + 1] + 1
                continue
            if t in _TAIL_OK_WORDS:
                j += 1
                continue
            if t in _NOT_A_NAME:
                return None  # a new declaration starts here
            if j + 1 < n and text[st[j + 1][1]:st[j + 1][2]] == "(":
                return None  # post-signature macro with arguments
            j += 1
            continue
        if t in ("&", "&&"):
            j += 1
            continue
        if t == "[":
            j = match[j] + 1
            continue
        return None
    if body_open < 0:
        return None
    return name, fn_kind, first, span, quals, open_idx, body_open, match[body_open]


# ---------------------------------------------------------------------------
# body line splitting
# ---------------------------------------------------------------------------


def split_body_lines(body_region):
    """Lines strictly between the outer braces.

    The fragment sharing a line with the opening or closing brace counts
    as a body line only when it is not pure whitespace.
    """
    if body_region.strip() == "":
        return ()
    pieces = body_region.split("\n")
    lo = 0
    hi = len(pieces)
    if len(pieces) > 1 and pieces[0].strip() == "":
        lo = 1
    if hi > lo and len(pieces) > 1 and pieces[hi - 1].strip() == "":
        hi -= 1
    return tuple(pieces[lo:hi])


# ---------------------------------------------------------------------------
# main walk
# ---------------------------------------------------------------------------


def extract_functions(source_text, file_path="<memory>"):
    """Extract every function definition from one C++ source file.

    Pure function of the source text; raises ExtractionError when the file
    cannot be tokenized or its brackets do not balance.  Returned functions
    appear in source order; ``full_text`` slices reconstruct the source
    byte-for-byte.
    """
    text = source_text
    if "﻿" in text:
        text = text.replace("﻿", " ")
    toks, err_off, err_msg = raw_tokenize(text)
    if err_off >= 0:
        line = text.count("\n", 0, err_off) + 1
        raise ExtractionError(err_msg, err_off, line)
    st = [t for t in toks if t[0] not in (COMMENT, PP_DIRECTIVE)]
    try:
        match, rmatch = _match_brackets(st, text)
    except ExtractionError as exc:
        raise ExtractionError(
            exc.reason, exc.offset, text.count("\n", 0, exc.offset) + 1
        ) from None

    def _txt(i):
        k, s, e = st[i]
        return text[s:e]

    out = []
    scopes = []  # (kind, name, close_idx)
    stmt_start = 0
    i = 0
    n = len(st)
    while i < n:
        kind, s, e = st[i]
        t = text[s:e]
        if kind == PUNCT:
            if t == ";":
                i += 1
                stmt_start = i
                continue
            if t == "{":
                i = match[i] + 1  # aggregate initializer or stray block
                stmt_start = i
                continue
            if t == "}":
                if scopes and scopes[-1][2] == i:
                    scopes.pop()
                i += 1
                stmt_start = i
                continue
            if t == "(":
                hit = _try_function(st, i, text, match, rmatch)
                if hit is not None:
                    fn = _build_function(
                        st, text, hit, stmt_start, scopes, match
                    )
                    out.append(fn)
                    i = hit[7] + 1
                    stmt_start = i
                    continue
                i += 1
                continue
            i += 1
            continue

        if kind == IDENT:
            if (
                t in ("public", "private", "protected")
                and i + 1 < n
                and _txt(i + 1) == ":"
            ):
                i += 2
                stmt_start = i
                continue
            if t == "namespace":
                j = i + 1
                parts = []
                moved = False
                while j < n:
                    tj = _txt(j)
                    if tj == "{":
                        scopes.append(("namespace", "::".join(parts), match[j]))
                        i = j + 1
                        stmt_start = i
                        moved = True
                        break
                    if tj in (";", "="):
                        i = _skip_past_semicolon(st, j, text, match)
                        stmt_start = i
                        moved = True
                        break
                    if st[j][0] == IDENT and tj != "inline":
                        parts.append(tj)
                    j += 1
                if not moved:
                    i = n
                continue
            if t in ("class", "struct", "union"):
                j = i + 1
                name = ""
                seen_colon = False
                moved = False
                while j < n:
                    kj, sj, ej = st[j]
                    tj = text[sj:ej]
                    if tj == "(":
                        i = j  # elaborated type in a declarator; reprocess
                        moved = True
                        break
                    if tj == "=":
                        i = _skip_past_semicolon(st, j, text, match)
                        stmt_start = i
                        moved = True
                        break
                    if tj == ";":
                        i = j + 1
                        stmt_start = i
                        moved = True
                        break
                    if tj == "{":
                        scopes.append(("class", name, match[j]))
                        i = j + 1
                        stmt_start = i
                        moved = True
                        break
                    if tj == ":":
                        seen_colon = True
                        j += 1
                        continue
                    if tj == "<":
                        nj = _skip_template_args(st, j, text, match)
                        if nj < 0:
                            break
                        j = nj
                        continue
                    if tj == "[":
                        j = match[j] + 1
                        continue
                    if (
                        kj == IDENT
                        and not seen_colon
                        and tj not in ("final", "alignas")
                    ):
                        name = tj
                    j += 1
                if not moved:
                    i = j if j > i else i + 1
                continue
            if t == "enum":
                j = i + 1
                moved = False
                while j < n:
                    tj = _txt(j)
                    if tj == ";":
                        i = j + 1
                        stmt_start = i
                        moved = True
                        break
                    if tj == "{":
                        i = match[j] + 1
                        stmt_start = i
                        moved = True
                        break
                    if tj == "(":  # `enum` used in a declarator
                        i = j
                        moved = True
                        break
                    j += 1
                if not moved:
                    i = n
                continue
            if t == "extern" and i + 1 < n and st[i + 1][0] == STRING:
                if i + 2 < n and _txt(i + 2) == "{":
                    scopes.append(("extern", "", match[i + 2]))
                    i += 3
                    stmt_start = i
                else:
                    i += 2  # extern "C" on a single declaration
                continue
            if t == "template":
                if i + 1 < n and _txt(i + 1) == "<":
                    j = _skip_template_args(st, i + 1, text, match)
                    if j > 0:
                        i = j
                        continue
                i += 1
                continue
            if t in ("using", "typedef", "static_assert"):
                i = _skip_past_semicolon(st, i, text, match)
                stmt_start = i
                continue
            i += 1
            continue

        i += 1

    return out


def _build_function(st, text, hit, stmt_start, scopes, match):
    name, fn_kind, first, span, quals, open_paren, body_open, body_close = hit
    arg_types = _param_spellings(st, open_paren, match[open_paren], text, match)

    sig_first = min(stmt_start, first)
    sig_off = st[sig_first][1]
    open_brace_end = st[body_open][2]
    close_brace_end = st[body_close][2]

    signature_text = text[sig_off:open_brace_end]
    full_text = text[sig_off:close_brace_end]
    body_region = text[open_brace_end:st[body_close][1]]
    body_lines = split_body_lines(body_region)

    scope_names = [nm for (kd, nm, _) in scopes if nm]
    if fn_kind == "plain":
        enclosing = None
        for kd, nm, _ in reversed(scopes):
            if kd == "class":
                enclosing = nm
                break
        base = quals[-1] if quals else enclosing
        if base is not None and base == name:
            fn_kind = "constructor"
    qualified = "::".join(scope_names + quals + [name])

    return ExtractedFunction(
        name=name,
        qualified_name=qualified,
        arg_types=arg_types,
        kind=fn_kind,
        signature_text=signature_text,
        body_lines=body_lines,
        full_text=full_text,
        name_span=(span[0] - sig_off, span[1] - sig_off),
        start_offset=sig_off,
        start_line=text.count("\n", 0, sig_off) + 1,
    )


def is_syntactically_valid(full_text):
    """True iff the text re-extracts as exactly one function definition.

    Implies balanced brackets and a clean tokenization (no unterminated
    strings or comments), with nothing but whitespace around the function.
    """
    try:
        fns = extract_functions(full_text)
    except ExtractionError:
        return False
    if len(fns) != 1:
        return False
    fn = fns[0]
    if full_text[:fn.start_offset].strip():
        return False
    return full_text[fn.start_offset:].strip() == fn.full_text.strip()
