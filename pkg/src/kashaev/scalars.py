"""Numeric tower: exact rationals and tolerance-aware floats.

Scalars are plain Python numbers.  ``int`` and ``Fraction`` values are
*exact*; ``float`` values are *float* mode.  Polynomial identities are
checked literally on exact data, and with a :class:`ToleranceContext`
otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

from .errors import InexactSquareRoot, ModeMismatch, NegativeRadicand

Scalar = Union[int, Fraction, float]

EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class ToleranceContext:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOLERANCE = ToleranceContext()


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def mode_of(x) -> str:
    return EXACT if is_exact(x) else FLOAT


def coerce(x, mode: str) -> Scalar:
    """Convert ``x`` to the requested mode."""
    if mode == EXACT:
        if is_exact(x):
            return Fraction(x)
        # repr gives the shortest decimal that round-trips
        return Fraction(repr(float(x)))
    if mode == FLOAT:
        return float(x)
    raise ValueError(f"unknown mode {mode!r}")


def common_mode(values: Iterable) -> str:
    """``exact`` if every value is exact, else ``float``."""
    for v in values:
        if not is_exact(v):
            return FLOAT
    return EXACT


def _exact_isqrt(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


def sqrt_principal(x: Scalar) -> Scalar:
    """Nonnegative square root; exact for perfect squares of rationals."""
    if is_exact(x):
        x = Fraction(x)
        if x < 0:
            raise NegativeRadicand(f"square root of negative value {x}")
        p = _exact_isqrt(x.numerator)
        q = _exact_isqrt(x.denominator)
        if p is None or q is None:
            raise InexactSquareRoot(f"{x} is not the square of a rational")
        return Fraction(p, q)
    if x < 0:
        raise NegativeRadicand(f"square root of negative value {x!r}")
    return math.sqrt(x)


def is_square(x: Scalar) -> bool:
    try:
        sqrt_principal(x)
    except (InexactSquareRoot, NegativeRadicand):
        return False
    return True


def approx_eq(a: Scalar, b: Scalar, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> bool:
    """Literal equality for exact operands, mixed tolerance for floats."""
    ea, eb = is_exact(a), is_exact(b)
    if ea and eb:
        return a == b
    if ea != eb:
        raise ModeMismatch("cannot compare an exact value with a float")
    return abs(a - b) <= ctx.abs_tol + ctx.rel_tol * max(abs(a), abs(b))


def loose_eq(a: Scalar, b: Scalar, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> bool:
    """Like :func:`approx_eq` but promotes a mixed pair to float."""
    if is_exact(a) != is_exact(b):
        a, b = float(a), float(b)
    return approx_eq(a, b, ctx)


def is_zero(x: Scalar, ctx: ToleranceContext | None = None) -> bool:
    if is_exact(x) or ctx is None:
        return x == 0
    return abs(x) <= ctx.abs_tol


def prod(values: Iterable[Scalar]) -> Scalar:
    return math.prod(values, start=1)


def div(a: Scalar, b: Scalar) -> Scalar:
    """Quotient that stays exact when both operands are exact."""
    if is_exact(a) and is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


def half(x: Scalar) -> Scalar:
    return div(x, 2)


def encode_scalar(x: Scalar):
    """JSON form: exact values as ``"p/q"`` strings, floats as numbers."""
    if is_exact(x):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return float(x)


def decode_scalar(obj) -> Scalar:
    if isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, str):
        return Fraction(obj.strip())
    raise ValueError(f"cannot decode scalar from {obj!r}")
