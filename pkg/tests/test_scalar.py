"""Field arithmetic over Q and Q(sqrt(d)): exactness, canonical form, parsing."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from beilinson_hh.scalar import (
    FieldMismatchError,
    QuadScalar,
    ScalarError,
    ScalarParseError,
    parse_scalar,
)

rationals = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=9
)


def quad_scalars(d=5):
    return st.builds(lambda a, b: QuadScalar(a, b, d), rationals, rationals)


def mixed_scalars():
    return st.one_of(st.builds(QuadScalar, rationals), quad_scalars())


def test_multiplication_examples():
    half = QuadScalar(Fraction(1, 2))
    two_root5 = QuadScalar(0, 2, 5)
    assert half * two_root5 == QuadScalar(0, 1, 5)
    # norm form a^2 - d b^2
    assert QuadScalar(1, 1, 5) * QuadScalar(1, -1, 5) == QuadScalar(-4)


def test_inverse_by_rationalizing():
    # solve (3 + sqrt(5)) x = 1: multiply by the conjugate over the norm 9 - 5
    x = QuadScalar(3, 1, 5)
    inv = x.inverse()
    assert inv == QuadScalar(Fraction(3, 4), Fraction(-1, 4), 5)
    assert x * inv == QuadScalar(1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadScalar(1) / QuadScalar(0)
    with pytest.raises(ZeroDivisionError):
        QuadScalar(0, 0, 5).inverse()


def test_mismatched_fields_raise():
    with pytest.raises(FieldMismatchError):
        QuadScalar(0, 1, 5) + QuadScalar(0, 1, 2)
    with pytest.raises(FieldMismatchError):
        QuadScalar(1, 1, 5) * QuadScalar(1, 1, 3)


def test_rationals_embed_into_any_field():
    # b == 0 canonically drops the tag, so plain rationals mix with any d
    assert (QuadScalar(2) + QuadScalar(0, 1, 5)) == QuadScalar(2, 1, 5)
    assert QuadScalar(3, 0, 5).d is None


def test_field_tag_validation():
    with pytest.raises(ScalarError):
        QuadScalar(0, 1, 4)  # not squarefree
    with pytest.raises(ScalarError):
        QuadScalar(0, 1, 1)
    with pytest.raises(ScalarError):
        QuadScalar(0, 1)  # irrational part without a tag


def test_parse_examples():
    assert parse_scalar("-3/4") == QuadScalar(Fraction(-3, 4))
    assert parse_scalar("0") == QuadScalar(0)
    assert parse_scalar("(-3+1*sqrt(5))/2", 5) == QuadScalar(
        Fraction(-3, 2), Fraction(1, 2), 5
    )


def test_parse_errors():
    with pytest.raises(ScalarParseError):
        parse_scalar("3/")
    with pytest.raises(ScalarParseError):
        parse_scalar("1/0")
    with pytest.raises(ScalarParseError):
        parse_scalar("0.5")
    with pytest.raises(ScalarParseError):
        parse_scalar("sqrt(3)", 5)  # d mismatch
    with pytest.raises(ScalarParseError):
        parse_scalar("sqrt(5)")  # no tag in a rational-only session
    with pytest.raises(ScalarParseError):
        parse_scalar("__import__('os')")


@given(mixed_scalars(), mixed_scalars(), mixed_scalars())
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


@given(mixed_scalars())
def test_inverse_roundtrip(x):
    if not x.is_zero():
        assert x * x.inverse() == QuadScalar(1)


@given(mixed_scalars())
def test_string_roundtrip_is_canonical(x):
    # canonical form is idempotent: rendering and reparsing is a fixed point
    text = str(x)
    back = parse_scalar(text, x.d if x.d is not None else 5)
    assert back == x
    assert str(back) == text


@given(mixed_scalars(), mixed_scalars())
def test_subtraction_and_negation(x, y):
    assert x - y == x + (-y)
    assert (x - y) + y == x


def test_equality_and_hash_against_plain_numbers():
    assert QuadScalar(3) == 3
    assert QuadScalar(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(QuadScalar(3)) == hash(3)
    assert QuadScalar(3, 1, 5) != 3
