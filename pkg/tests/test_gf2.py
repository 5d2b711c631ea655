from hypothesis import given, strategies as st

from kashaev import gf2

NCOLS = 6
rows_strategy = st.lists(st.integers(min_value=0, max_value=(1 << NCOLS) - 1), max_size=7)


def brute_solutions(rows, rhs):
    return [
        x for x in range(1 << NCOLS)
        if all(gf2.parity(r & x) == b for r, b in zip(rows, rhs))
    ]


def brute_rank(rows):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return len(span).bit_length() - 1


def test_small_examples():
    assert gf2.rank([0b011, 0b110, 0b101]) == 2
    assert gf2.solve([0b11], [1]) in (0b01, 0b10)
    assert gf2.solve([0b11, 0b11], [0, 1]) is None
    assert gf2.bits(0b10110) == [1, 2, 4]
    assert gf2.nullspace([], 3) == [1, 2, 4]


@given(rows_strategy)
def test_rank_matches_span_size(rows):
    assert gf2.rank(rows) == brute_rank(rows)


@given(rows_strategy, st.data())
def test_solve_agrees_with_enumeration(rows, data):
    rhs = data.draw(st.lists(st.integers(0, 1), min_size=len(rows), max_size=len(rows)))
    x = gf2.solve(rows, rhs)
    sols = brute_solutions(rows, rhs)
    if x is None:
        assert sols == []
    else:
        assert x in sols


@given(rows_strategy)
def test_nullspace_is_a_basis_of_the_kernel(rows):
    basis = gf2.nullspace(rows, NCOLS)
    kernel = brute_solutions(rows, [0] * len(rows))
    assert all(v in kernel for v in basis)
    assert gf2.rank(basis) == len(basis)
    assert 1 << len(basis) == len(kernel)


@given(rows_strategy, st.integers(0, (1 << NCOLS) - 1))
def test_span_membership(rows, v):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    assert gf2.in_span(v, rows) == (v in span)
