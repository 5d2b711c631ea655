import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kashaev import complexes as cx
from kashaev import minors as mn
from kashaev import tilings as tl
from kashaev.errors import BadBase, DegenerateOffDiagonal, NotRealizable, Ungeneric, UnlabeledVertex
from kashaev.scalars import ToleranceContext, loose_eq

from conftest import FIXTURE_M3, leibniz_det, minor, rationals

L = tl.parse_label
seeds = st.integers(min_value=0, max_value=10**9)
quick = settings(max_examples=15, deadline=None)
square3 = st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3)
square4 = st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=4, max_size=4)


def oracle_tuple(m):
    n = len(m)
    out = {}
    for s in range(1 << n):
        idx = tl.members(s)
        out[s] = (-1) ** (len(idx) // 2) * minor(m, idx, idx)
    return out


def oracle_tile(m, base, pair):
    """Sign and minor chosen straight from the defining parity rule."""
    i, j = pair
    size = len(tl.members(base))
    if (i - j) * (-1) ** size < 0:
        i, j = j, i
    rows = sorted(tl.members(base) + [i])
    cols = sorted(tl.members(base) + [j])
    return (-1) ** ((size + 1) // 2) * minor(m, rows, cols)


# -- determinants and tuples -----------------------------------------------------


@given(square4)
def test_determinant_matches_permutation_expansion(m):
    assert mn.determinant(m) == leibniz_det(m)


@given(square3)
def test_float_determinant_is_close(m):
    f = [[float(x) for x in row] for row in m]
    assert mn.determinant(f) == pytest.approx(float(leibniz_det(m)), abs=1e-9)


def test_fixture_tuple():
    t = mn.signed_minor_tuple(FIXTURE_M3)
    assert t.entries == oracle_tuple(FIXTURE_M3)
    assert t[0] == 1
    assert all(t[tl.bit(i)] == 2 for i in (1, 2, 3))
    assert all(t[L(p)] == -3 for p in ("12", "13", "23"))
    assert t[L("123")] == -4


def test_identity_and_diagonal_tuples():
    n = 4
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    t = mn.signed_minor_tuple(ident)
    assert all(t[s] == (-1) ** (bin(s).count("1") // 2) for s in range(1 << n))
    d = [2, -3, 5, 7]
    diag = [[d[i] if i == j else 0 for j in range(n)] for i in range(n)]
    t = mn.signed_minor_tuple(diag)
    for s in range(1 << n):
        idx = tl.members(s)
        want = (-1) ** (len(idx) // 2)
        for i in idx:
            want *= d[i - 1]
        assert t[s] == want


def test_missing_entries_are_rejected():
    with pytest.raises(KeyError):
        mn.MinorTuple(2, {0: 1, 1: 2, 2: 3})


# -- L and K terms ----------------------------------------------------------------


def test_L_examples():
    t = mn.signed_minor_tuple(FIXTURE_M3)
    assert mn.L_term(t, 0, (1, 2)) == 1
    ident = mn.signed_minor_tuple([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert mn.L_term(ident, 0, (1, 2)) == 0
    diag = mn.signed_minor_tuple([[2, 0, 0], [0, 3, 0], [0, 0, 4]])
    assert mn.L_term(diag, 0, (1, 3)) == 0


def test_K_examples():
    t = mn.signed_minor_tuple(FIXTURE_M3)
    assert tuple(mn.K_terms(t, 0, (1, 2, 3))) == (0, -1)
    assert mn.K_terms(t, L("2"), (1, 2, 3)).Kv == 1


@quick
@given(seeds, st.integers(3, 6))
def test_forward_identities_hold_for_symmetric_matrices(seed, n):
    m = mn.random_symmetric(n, random.Random(seed), generic=False)
    t = mn.signed_minor_tuple(m)
    assert mn.mixed_identity_report(t) == {"kashaev": 0, "product": 0}


@quick
@given(seeds, st.integers(2, 5))
def test_L_is_the_square_of_the_tile_minor(seed, n):
    m = mn.random_symmetric(n, random.Random(seed), generic=False)
    t = mn.signed_minor_tuple(m)
    for I in range(1 << n):
        for pair in itertools.combinations(range(1, n + 1), 2):
            if I & (tl.bit(pair[0]) | tl.bit(pair[1])):
                continue
            tile = mn.odd_almost_principal(m, I, pair)
            assert tile == oracle_tile(m, I, pair)
            assert mn.L_term(t, I, pair) == tile ** 2


# -- realizability ----------------------------------------------------------------


@pytest.mark.parametrize("n", [4, 5])
def test_symmetric_tuples_are_realizable(n, rng):
    for _ in range(3):
        t = mn.signed_minor_tuple(mn.random_symmetric(n, rng))
        res = mn.realizability_test(t)
        assert res.ok and res.certificate is None


@pytest.mark.parametrize("n", [4, 5])
def test_perturbed_top_entry_fails(n, rng):
    t = mn.signed_minor_tuple(mn.random_symmetric(n, rng))
    top = (1 << n) - 1
    res = mn.realizability_test(t.replace(top, t[top] + 1))
    assert not res.ok
    assert res.certificate["kind"] == "kashaev"
    assert mn.mixed_identity_report(t.replace(top, t[top] + 1))["kashaev"] > 0


def test_three_element_tuples_need_no_product_identity():
    res = mn.realizability_test(mn.signed_minor_tuple(FIXTURE_M3))
    assert res.ok


def test_realizability_preconditions():
    t = mn.signed_minor_tuple(FIXTURE_M3)
    with pytest.raises(BadBase):
        mn.realizability_test(t.replace(0, 2))
    ident = mn.signed_minor_tuple([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(Ungeneric) as exc:
        mn.realizability_test(ident)
    I, pair = exc.value.witness
    assert mn.L_term(ident, I, pair) == 0


def test_full_product_condition_equals_the_four_set_condition_for_n4(rng):
    for k in range(12):
        t = mn.signed_minor_tuple(mn.random_symmetric(4, rng))
        if k % 2:
            s = rng.randrange(1, 16)
            t = t.replace(s, t[s] + 1)
        cube_ok = all(
            mn.K_terms(t, I, J).K == 0
            for I in range(16) for J in itertools.combinations(range(1, 5), 3)
        )
        prod_ok = all(loose_eq(*mn.four_subset_identity(t, I, (1, 2, 3, 4))) for I in range(16))
        try:
            verdict = mn.realizability_test(t).ok
        except Ungeneric:
            continue
        assert verdict == (cube_ok and prod_ok)


# -- reconstruction ---------------------------------------------------------------


def test_reconstruct_fixture_exactly():
    assert mn.reconstruct_symmetric(mn.signed_minor_tuple(FIXTURE_M3)) == FIXTURE_M3


def test_reconstruct_fixes_the_first_row_sign():
    m = [[Fraction(x) for x in row] for row in ([1, -2, 3], [-2, 5, 1], [3, 1, -1])]
    got = mn.reconstruct_symmetric(mn.signed_minor_tuple(m))
    signs = mn.first_row_gauge(m)
    want = mn.sign_conjugate(m, signs)
    assert all(loose_eq(a, b) for ra, rb in zip(got, want) for a, b in zip(ra, rb))
    assert all(x >= 0 for x in got[0])


def test_reconstruct_diagonal():
    m = [[1, 0, 0], [0, 2, 0], [0, 0, 3]]
    assert mn.reconstruct_symmetric(mn.signed_minor_tuple(m)) == m


@quick
@given(seeds, st.integers(3, 5))
def test_reconstruction_round_trip(seed, n):
    r = random.Random(seed)
    m = mn.random_symmetric(n, r)
    t = mn.signed_minor_tuple(m)
    got = mn.reconstruct_symmetric(t)
    back = mn.signed_minor_tuple(got)
    ctx = ToleranceContext(rel_tol=1e-8)
    assert all(loose_eq(back[s], t[s], ctx) for s in range(1 << n))
    want = mn.sign_conjugate(m, mn.first_row_gauge(m))
    assert all(loose_eq(a, b, ctx) for ra, rb in zip(got, want) for a, b in zip(ra, rb))


def test_reconstruct_rejects_unrealizable_tuples(rng):
    t = mn.signed_minor_tuple(mn.random_symmetric(4, rng))
    with pytest.raises(NotRealizable):
        mn.reconstruct_symmetric(t.replace(15, t[15] + 1))


def test_reconstruct_without_check_reports_zero_first_row():
    m = [[1, 0, 1], [0, 2, 1], [1, 1, 3]]
    with pytest.raises(DegenerateOffDiagonal):
        mn.reconstruct_symmetric(mn.signed_minor_tuple(m), check=False)


# -- fields on complexes ------------------------------------------------------------


def test_fixture_on_the_three_element_pile():
    p, _ = tl.lex_standard_pile(3)
    c = cx.build_complex(p)
    values = mn.tuple_on_complex(mn.signed_minor_tuple(FIXTURE_M3), c)
    assert cx.check_complex_kashaev(c, values).ok
    assert cx.check_complex_coherence(c, values).ok
    vals, faces = mn.matrix_khex_field(FIXTURE_M3, p)
    tiles = {mn.square_tile(c, k): v for k, v in faces.items()}
    assert tiles[(2, 3), 0] == 1 == FIXTURE_M3[2][1]
    assert c.labels[c.cubes[0].top] == L("13")
    assert cx.check_complex_khex(c, vals, faces).ok


def test_unlabeled_vertices():
    c = cx.build_complex(tl.lex_standard_pile(4)[0])
    with pytest.raises(UnlabeledVertex):
        mn.tuple_on_complex(mn.signed_minor_tuple(FIXTURE_M3), c)


def test_both_four_element_piles_are_coherent(rng):
    t = mn.signed_minor_tuple(mn.random_symmetric(4, rng))
    for sigma in tl.enumerate_piles(4):
        c = cx.build_complex(tl.pile_from_admissible(sigma))
        values = mn.tuple_on_complex(t, c)
        assert cx.check_complex_kashaev(c, values).ok
        assert cx.check_complex_coherence(c, values).ok


def test_perturbation_seen_by_an_interior_vertex_fails(rng):
    t = mn.signed_minor_tuple(mn.random_symmetric(4, rng))
    c = cx.build_complex(tl.lex_standard_pile(4)[0])
    (v,) = c.interior
    bad = t.replace(c.labels[v], t[c.labels[v]] + 1)
    values = mn.tuple_on_complex(bad, c)
    assert not (cx.check_complex_kashaev(c, values).ok and cx.check_complex_coherence(c, values).ok)


def test_every_flip_cube_passes_the_lattice_check(rng):
    from kashaev import kashaev3d as k3

    m = mn.random_symmetric(5, rng)
    for J in itertools.combinations(range(1, 6), 3):
        rest = [e for e in range(1, 6) if e not in J]
        for r in range(len(rest) + 1):
            for S in itertools.combinations(rest, r):
                I = sum(tl.bit(e) for e in S)
                f = mn.minor_khex_cube(m, I, J)
                assert k3.check_khex(f).ok
                i, j, k = J
                assert f.vertices[0, 0, 0] == oracle_tuple(m)[I | tl.bit(j)]
                assert f.vertices[1, 1, 1] == oracle_tuple(m)[I | tl.bit(i) | tl.bit(k)]
