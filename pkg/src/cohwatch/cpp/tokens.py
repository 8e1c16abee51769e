"""Token kinds shared by the tokenizer backends.

Both tokenizer implementations (pure Python and the compiled extension)
emit plain ``(kind, start, end)`` tuples with these kind codes, where
``start``/``end`` are character offsets into the source string.  Keeping
the output this primitive makes backend parity trivial to test.
"""

IDENT = 1
NUMBER = 2
STRING = 3
CHAR = 4
PUNCT = 5
COMMENT = 6
PP_DIRECTIVE = 7

KIND_NAMES = {
    IDENT: "ident",
    NUMBER: "number",
    STRING: "string",
    CHAR: "char",
    PUNCT: "punct",
    COMMENT: "comment",
    PP_DIRECTIVE: "pp",
}

# Multi-character operators, longest match first.  ">>" stays one token;
# consumers that match template angle brackets treat it as two closers.
OPS3 = ("<<=", ">>=", "...", "->*", "<=>")
OPS2 = (
    "::", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "^=", "&=", "|=",
    ".*", "##",
)

__all__ = [
    "IDENT", "NUMBER", "STRING", "CHAR", "PUNCT", "COMMENT", "PP_DIRECTIVE",
    "KIND_NAMES", "OPS2", "OPS3",
]
