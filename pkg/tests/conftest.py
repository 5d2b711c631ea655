"""Shared oracles and strategies.

The oracles here are written independently of the package: determinants
by permutation expansion and derivatives by polynomial interpolation.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def leibniz_det(m):
    n = len(m)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def minor(m, rows, cols):
    """Determinant of the submatrix on 1-based rows and columns."""
    if not rows:
        return Fraction(1)
    return leibniz_det([[m[r - 1][c - 1] for c in cols] for r in rows])


def quadratic_coefficients(fn, x0):
    """Coefficients of a polynomial of degree <= 2 in one variable, from
    three evaluations (exact Lagrange interpolation at x0, x0+1, x0+2)."""
    y0, y1, y2 = fn(x0), fn(x0 + 1), fn(x0 + 2)
    a = Fraction(y2 - 2 * y1 + y0, 2)
    b = (y1 - y0) - a * (2 * x0 + 1)
    c = y0 - a * x0 * x0 - b * x0
    return a, b, c


FIXTURE_M3 = [[2, 1, 1], [1, 2, 1], [1, 1, 2]]

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_ints = small_ints.filter(lambda x: x != 0)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
nonzero_rationals = st.builds(Fraction, nonzero_ints, st.integers(min_value=1, max_value=5))


def rational_draw(rng, span=6):
    def draw():
        while True:
            x = Fraction(rng.randint(-span, span), rng.randint(1, 3))
            if x:
                return x
    return draw


@pytest.fixture
def rng():
    return random.Random(20240611)
