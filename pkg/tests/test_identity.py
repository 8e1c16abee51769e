"""Function identity and key formatting."""

import pytest

from cohwatch.mining import FunctionIdentity, identity_key


def test_key_format():
    ident = FunctionIdentity(
        name="util::trim",
        arg_types=("const std::string &",),
        file_path="src/util.cpp")
    assert identity_key(ident) == \
        "src/util.cpp::util::trim(const std::string &)"


def test_key_with_multiple_args():
    ident = FunctionIdentity(
        name="add", arg_types=("int", "int"), file_path="a.cpp")
    assert identity_key(ident) == "a.cpp::add(int,int)"


def test_key_with_no_args():
    ident = FunctionIdentity(name="noop", arg_types=(), file_path="a.cpp")
    assert identity_key(ident) == "a.cpp::noop()"


def test_same_name_different_args_distinct():
    a = FunctionIdentity("f", ("int",), "x.cpp")
    b = FunctionIdentity("f", ("long",), "x.cpp")
    assert identity_key(a) != identity_key(b)
    assert a != b


def test_same_signature_different_files_distinct():
    a = FunctionIdentity("f", ("int",), "x.cpp")
    b = FunctionIdentity("f", ("int",), "y.cpp")
    assert identity_key(a) != identity_key(b)


def test_identity_is_hashable_and_equal_by_value():
    a = FunctionIdentity("f", ("int",), "x.cpp")
    b = FunctionIdentity("f", ("int",), "x.cpp")
    assert a == b
    assert len({a, b}) == 1


def test_empty_fields_rejected():
    with pytest.raises(ValueError):
        FunctionIdentity("", ("int",), "x.cpp")
    with pytest.raises(ValueError):
        FunctionIdentity("f", ("int",), "")
