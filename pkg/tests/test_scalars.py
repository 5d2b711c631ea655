import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kashaev.errors import InexactSquareRoot, ModeMismatch, NegativeRadicand
from kashaev.scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    FLOAT,
    ToleranceContext,
    approx_eq,
    coerce,
    common_mode,
    decode_scalar,
    div,
    encode_scalar,
    half,
    is_square,
    is_zero,
    loose_eq,
    sqrt_principal,
)

from conftest import nonzero_rationals, rationals


def test_sqrt_of_zero():
    assert sqrt_principal(0) == 0
    assert sqrt_principal(0.0) == 0.0


def test_sqrt_of_eight_squares_back():
    r = sqrt_principal(8.0)
    assert r == pytest.approx(2.8284271247461903)
    assert approx_eq(r * r, 8.0)


def test_sqrt_of_exact_perfect_square():
    assert sqrt_principal(Fraction(9, 4)) == Fraction(3, 2)
    assert isinstance(sqrt_principal(Fraction(9, 4)), Fraction)


def test_sqrt_errors():
    with pytest.raises(NegativeRadicand):
        sqrt_principal(Fraction(-1))
    with pytest.raises(NegativeRadicand):
        sqrt_principal(-2.0)
    with pytest.raises(InexactSquareRoot):
        sqrt_principal(Fraction(2))
    assert not is_square(Fraction(8))
    assert is_square(Fraction(49, 9))


def test_approx_eq_examples():
    assert approx_eq(Fraction(1, 3), Fraction(1, 3))
    assert approx_eq(1.0, 1.0 + 1e-13)
    assert not approx_eq(1.0, 1.001)


def test_exact_comparison_ignores_tolerance():
    loose = ToleranceContext(rel_tol=0.5, abs_tol=0.5)
    assert not approx_eq(Fraction(1), Fraction(11, 10), loose)
    assert approx_eq(1.0, 1.1, loose)


def test_mixed_modes_need_coercion():
    with pytest.raises(ModeMismatch):
        approx_eq(Fraction(1), 1.0)
    assert loose_eq(Fraction(1, 3), 1 / 3)


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        ToleranceContext(rel_tol=0)
    with pytest.raises(ValueError):
        ToleranceContext(abs_tol=-1e-3)


def test_modes_and_coercion():
    assert common_mode([1, Fraction(1, 2)]) == EXACT
    assert common_mode([1, 0.5]) == FLOAT
    assert coerce(0.1, EXACT) == Fraction(1, 10)
    assert coerce(Fraction(1, 4), FLOAT) == 0.25
    with pytest.raises(ValueError):
        coerce(1, "decimal")


def test_exact_division_and_half():
    assert div(1, 3) == Fraction(1, 3)
    assert half(Fraction(3)) == Fraction(3, 2)
    assert isinstance(div(1.0, 4), float)


def test_is_zero():
    assert is_zero(Fraction(0))
    assert not is_zero(1e-15)
    assert is_zero(1e-15, DEFAULT_TOLERANCE)


def test_json_encoding():
    assert encode_scalar(Fraction(-6, 4)) == "-3/2"
    assert encode_scalar(Fraction(4, 2)) == "2"
    assert encode_scalar(0.5) == 0.5
    assert decode_scalar("-3/2") == Fraction(-3, 2)
    assert decode_scalar(7) == Fraction(7)
    assert decode_scalar(0.25) == 0.25
    with pytest.raises(ValueError):
        decode_scalar(True)
    with pytest.raises(ValueError):
        decode_scalar("1/0x")


@given(nonzero_rationals, nonzero_rationals)
def test_reciprocal_product_is_one(p, q):
    assert (p / q) * (q / p) == 1


@given(rationals)
def test_exact_square_roots_are_exact(x):
    y = sqrt_principal(x * x)
    assert y == abs(x)
    assert y * y == x * x


@given(st.floats(min_value=0, max_value=1e12, allow_nan=False))
def test_float_square_roots_square_back(x):
    r = sqrt_principal(x)
    assert r >= 0
    assert approx_eq(r * r, x)


@given(rationals)
def test_encoding_round_trip(x):
    text = encode_scalar(x)
    assert decode_scalar(text) == x
    if x.denominator != 1:
        p, q = text.split("/")
        assert int(q) > 0 and math.gcd(int(p), int(q)) == 1
