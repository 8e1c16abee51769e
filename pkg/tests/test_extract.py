"""Function extraction tests: shapes, spans, spellings, and rejects."""

import pytest

from cohwatch.cpp import (
    ExtractionError,
    extract_functions,
    is_syntactically_valid,
)

# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def one(text):
    fns = extract_functions(text)
    assert len(fns) == 1, [f.qualified_name for f in fns]
    return fns[0]


def names(text):
    return [f.qualified_name for f in extract_functions(text)]


# ---------------------------------------------------------------------------
# basic shapes
# ---------------------------------------------------------------------------


def test_free_function():
    fn = one("int add(int a, int b) {\n    return a + b;\n}\n")
    assert fn.name == "add"
    assert fn.qualified_name == "add"
    assert fn.kind == "plain"
    assert fn.arg_types == ("int", "int")
    assert fn.body_line_count == 1


def test_empty_body_variants():
    assert one("void f() {}").body_line_count == 0
    assert one("void f() {\n}").body_line_count == 0
    assert one("void f() {   }").body_line_count == 0


def test_method_inside_class():
    fn = one("class C {\n  int get() const { return v_; }\n  int v_;\n};\n")
    assert fn.qualified_name == "C::get"
    assert fn.arg_types == ()


def test_constructor_and_destructor():
    text = (
        "class C {\n"
        "  C(int v) : v_(v) {}\n"
        "  ~C() { v_ = 0; }\n"
        "  int v_;\n"
        "};\n"
    )
    ctor, dtor = extract_functions(text)
    assert ctor.kind == "constructor"
    assert ctor.qualified_name == "C::C"
    assert ctor.arg_types == ("int",)
    assert dtor.kind == "destructor"
    assert dtor.name == "~C"


def test_out_of_class_definition():
    fn = one("size_t Buffer::capacity() const {\n    return n_;\n}\n")
    assert fn.qualified_name == "Buffer::capacity"
    assert fn.name == "capacity"


def test_out_of_class_constructor():
    fn = one("Buffer::Buffer(int n) : n_(n) {\n    init();\n}\n")
    assert fn.kind == "constructor"
    assert fn.qualified_name == "Buffer::Buffer"


def test_namespace_qualification():
    text = (
        "namespace a {\n"
        "namespace b {\n"
        "void run() {}\n"
        "}\n"
        "}\n"
    )
    assert names(text) == ["a::b::run"]


def test_inline_namespace_and_alias():
    text = (
        "inline namespace v1 {\n"
        "void f() {}\n"
        "}\n"
        "namespace short_name = very::long_name;\n"
        "void g() {}\n"
    )
    assert names(text) == ["v1::f", "g"]


def test_extern_c_block_and_inline_form():
    block = 'extern "C" {\nint f(void) { return 0; }\n}\n'
    assert names(block) == ["f"]
    inline = 'extern "C" int g(int x) { return x; }\n'
    fn = one(inline)
    assert fn.name == "g"
    assert fn.arg_types == ("int",)


# ---------------------------------------------------------------------------
# operators and conversions
# ---------------------------------------------------------------------------


def test_free_operator():
    fn = one("bool operator==(const P &a, const P &b) { return a.x == b.x; }")
    assert fn.kind == "operator"
    assert fn.name == "operator=="
    assert fn.arg_types == ("const P &", "const P &")


def test_call_operator():
    fn = one("struct F {\n  int operator()(int x) const { return x; }\n};")
    assert fn.name == "operator()"
    assert fn.kind == "operator"
    assert fn.arg_types == ("int",)


def test_index_operator():
    fn = one("struct V {\n  int &operator[](int i) { return d_[i]; }\n};")
    assert fn.name == "operator[]"


def test_conversion_operator_bool():
    fn = one("struct W {\n  explicit operator bool() const "
             "{ return ok_; }\n};")
    assert fn.kind == "operator"
    assert fn.name == "operator bool"


def test_conversion_operator_qualified_type():
    fn = one("struct W {\n  operator std::string() const { return s_; }\n};")
    assert fn.name == "operator std::string"
    assert fn.kind == "operator"


def test_shift_operator_with_templates():
    fn = one("std::ostream &operator<<(std::ostream &os, const P &p) {\n"
             "    return os;\n}")
    assert fn.name == "operator<<"


# ---------------------------------------------------------------------------
# templates, trailing returns, tail qualifiers
# ---------------------------------------------------------------------------


def test_template_function():
    fn = one("template <typename T>\nT max_of(T a, T b) {\n"
             "    return a < b ? b : a;\n}\n")
    assert fn.name == "max_of"
    assert fn.arg_types == ("T", "T")


def test_template_specialization():
    fn = one("template <>\nint max_of<int>(int a, int b) { return a; }\n")
    assert fn.name == "max_of"
    assert fn.arg_types == ("int", "int")


def test_trailing_return_type():
    fn = one("template <typename T, typename U>\n"
             "auto sum_pair(T a, U b) -> decltype(a + b) {\n"
             "    return a + b;\n}\n")
    assert fn.name == "sum_pair"


def test_trailing_return_with_template_angle_brackets():
    fn = one("auto f() -> std::map<int, int> { return {}; }")
    assert fn.name == "f"


def test_noexcept_and_noexcept_expression():
    assert one("void f() noexcept {}").name == "f"
    assert one("void g() noexcept(true) {}").name == "g"
    assert one("void h() noexcept(noexcept(x())) {}").name == "h"


def test_throw_spec_and_attributes():
    assert one("void f() throw() {}").name == "f"
    assert one("struct B { virtual void f(); };\n"
               "struct D : B { void f() override {} };")


def test_constructor_with_brace_initializers():
    fn = one("struct S {\n  S() : a_{1}, b_{2} { run(); }\n  int a_, b_;\n};")
    assert fn.kind == "constructor"
    assert fn.body_line_count == 1


# ---------------------------------------------------------------------------
# things that must not be extracted
# ---------------------------------------------------------------------------


def test_declarations_are_skipped():
    assert names("int f(int);\nvoid g();\n") == []


def test_defaulted_and_deleted_are_skipped():
    text = ("struct S {\n"
            "  S() = default;\n"
            "  S(const S &) = delete;\n"
            "  void real() {}\n"
            "};\n")
    assert names(text) == ["S::real"]


def test_control_statements_are_not_functions():
    text = ("void f() {\n"
            "  if (a) { b(); }\n"
            "  while (c) { d(); }\n"
            "  for (;;) { break; }\n"
            "  switch (x) { case 1: break; }\n"
            "}\n")
    assert names(text) == ["f"]


def test_lambdas_and_local_structs_stay_inside_bodies():
    text = ("int outer() {\n"
            "  auto fn = [](int x) { return x + 1; };\n"
            "  struct Local { int go() { return 2; } };\n"
            "  return fn(1);\n"
            "}\n")
    assert names(text) == ["outer"]


def test_macro_call_statement_is_not_a_function():
    text = "REGISTER_MODULE(watcher, init)\nvoid real() {}\n"
    assert names(text) == ["real"]


def test_macro_with_tail_call_is_rejected():
    # looks like a signature but the tail is another call
    text = "CHECK(x) FAIL(y);\nvoid real() {}\n"
    assert names(text) == ["real"]


def test_struct_initializer_is_not_a_function():
    assert names("Point p = make(1, 2);\n") == []
    assert names("int xs[] = {1, 2, 3};\n") == []


def test_enum_and_using_are_skipped():
    text = ("enum class Mode { a, b };\n"
            "using Fn = int (*)(int);\n"
            "typedef int (*Other)(void);\n"
            "static_assert(sizeof(int) == 4, \"x\");\n"
            "void f() {}\n")
    assert names(text) == ["f"]


# ---------------------------------------------------------------------------
# parameter spellings
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("params,expected", [
    ("", ()),
    ("void", ()),
    ("int", ("int",)),
    ("int x", ("int",)),
    ("int x, long y", ("int", "long")),
    ("const std::string &name", ("const std::string &",)),
    ("std::map<int, std::string> m", ("std::map<int, std::string>",)),
    ("char buf[10]", ("char[10]",)),
    ("const char *argv[]", ("const char *[]",)),
    ("int (*cb)(int, char)", ("int (*)(int, char)",)),
    ("char **argv", ("char **",)),
    ("int *&ref", ("int *&",)),
    ("T &&value", ("T &&",)),
    ("int x = 4, char c = 'a'", ("int", "char")),
    ("std::vector<int> v = {1, 2}", ("std::vector<int>",)),
    ("int, char", ("int", "char")),
    ("unsigned long long n", ("unsigned long long",)),
    ("...", ("...",)),
    ("const char *fmt, ...", ("const char *", "...")),
])
def test_parameter_spellings(params, expected):
    fn = one(f"void f({params}) {{}}")
    assert fn.arg_types == expected, params


def test_unnamed_vs_named_spell_identically():
    named = one("void f(const std::string &name) {}").arg_types
    unnamed = one("void f(const std::string &) {}").arg_types
    assert named == unnamed


# ---------------------------------------------------------------------------
# spans and reconstruction invariants
# ---------------------------------------------------------------------------


def test_name_span_slices_the_name(fifty_functions):
    for fn in fifty_functions:
        lo, hi = fn.name_span
        assert fn.full_text[lo:hi] == fn.name, fn.qualified_name


def test_full_text_reconstruction(fifty_functions):
    for fn in fifty_functions:
        assert fn.signature_text + fn.body_region + "}" == fn.full_text
        assert fn.full_text.endswith("}")


def test_start_offset_locates_full_text():
    text = "// header\n\nint add(int a, int b) {\n    return a + b;\n}\n"
    fn = one(text)
    assert text[fn.start_offset:fn.start_offset + len(fn.full_text)] == \
        fn.full_text
    assert fn.start_line == 3


def test_body_lines_match_body_region(fifty_functions):
    from cohwatch.cpp.extract import split_body_lines

    for fn in fifty_functions:
        assert split_body_lines(fn.body_region) == fn.body_lines


def test_bom_is_tolerated():
    fn = one("﻿int f() { return 1; }")
    assert fn.name == "f"


# ---------------------------------------------------------------------------
# validity checker
# ---------------------------------------------------------------------------


def test_extracted_functions_are_valid(fifty_functions):
    for fn in fifty_functions:
        assert is_syntactically_valid(fn.full_text), fn.qualified_name


def test_fragments_are_invalid():
    assert not is_syntactically_valid("int f() {")
    assert not is_syntactically_valid("int f();")
    assert not is_syntactically_valid("int f() {} int g() {}")
    assert not is_syntactically_valid("int x = 1;")
    assert not is_syntactically_valid("int f() {} leftover")


# ---------------------------------------------------------------------------
# structural errors
# ---------------------------------------------------------------------------


def test_unbalanced_braces_raise_with_position():
    with pytest.raises(ExtractionError) as info:
        extract_functions("int f() {\n  if (x) {\n}\n")
    assert info.value.offset >= 0
    assert info.value.line >= 1


def test_stray_closer_raises():
    with pytest.raises(ExtractionError):
        extract_functions("int f() {}\n}\n")


def test_unterminated_comment_raises():
    with pytest.raises(ExtractionError):
        extract_functions("int f() {} /* open")


def test_error_reports_offset_of_unmatched_bracket():
    text = "void ok() {}\nint bad(int x {\n"
    with pytest.raises(ExtractionError) as info:
        extract_functions(text)
    assert text[info.value.offset] in "({"


# ---------------------------------------------------------------------------
# fixture corpus census
# ---------------------------------------------------------------------------


def test_fixture_census(fifty_functions):
    kinds = {}
    for fn in fifty_functions:
        kinds[fn.kind] = kinds.get(fn.kind, 0) + 1
    assert kinds["constructor"] == 2
    assert kinds["destructor"] == 1
    assert kinds["operator"] == 6
    assert kinds["plain"] == 41
    by_name = {f.qualified_name for f in fifty_functions}
    assert "util::trim" in by_name
    assert "net::tcp::connect_once" in by_name
    assert "Buffer::~Buffer" in by_name
    assert "Wrapper::operator bool" in by_name
