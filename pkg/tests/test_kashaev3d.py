import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kashaev import kashaev3d as k3
from kashaev.errors import NeighborhoodIncomplete, NotCoherent, VertexMismatch, ZeroBaseVertex
from kashaev.scalars import ToleranceContext, approx_eq, prod

from conftest import nonzero_rationals, quadratic_coefficients, rational_draw, rationals

CORNERS = k3.CORNERS
SQ2 = math.sqrt(2)
seeds = st.integers(min_value=0, max_value=10**9)
quick = settings(max_examples=25, deadline=None)


def m3_cube():
    """Signed principal minors of the all-2-diagonal, all-1-off-diagonal 3x3 matrix."""
    z = {c: [1, 2, -3, -4][sum(c)] for c in CORNERS}
    return k3.CubeView(z)


def khex_box(seed, size=3):
    return k3.random_khex_box(size, rational_draw(random.Random(seed)))


def symmetries():
    for perm in itertools.permutations(range(3)):
        for flips in CORNERS:
            yield perm, flips


def transform(z, perm, flips):
    return {c: z[tuple(c[perm[i]] ^ flips[i] for i in range(3))] for c in CORNERS}


cubes8 = st.lists(rationals, min_size=8, max_size=8).map(k3.CubeView.from_list)
nonzero_cubes8 = st.lists(nonzero_rationals, min_size=8, max_size=8).map(k3.CubeView.from_list)


# -- Kashaev polynomial -----------------------------------------------------------


def test_kashaev_K_examples():
    assert k3.kashaev_K(k3.CubeView.from_list([0] * 8)) == 0
    assert k3.kashaev_K(k3.CubeView.from_list([1] * 8)) == -16
    assert k3.kashaev_K(m3_cube()) == 0


def test_kashaev_Kv_examples():
    cube = m3_cube()
    assert k3.kashaev_Kv(cube, (0, 0, 0)) == -1
    assert k3.kashaev_Kv(cube, (0, 1, 0)) == 1
    zero = k3.CubeView.from_list([0] * 8)
    assert all(k3.kashaev_Kv(zero, c) == 0 for c in CORNERS)


def test_kashaev_Kv_matches_finite_difference_on_fixture():
    cube = m3_cube()
    for corner in CORNERS:
        w = tuple(1 - x for x in corner)

        def K_at(t):
            z = dict(cube.z)
            z[w] = t
            return k3.kashaev_K(k3.CubeView(z))

        h = 1e-4
        fd = (K_at(cube.z[w] + h) - K_at(cube.z[w] - h)) / (2 * h)
        assert fd / 4 == pytest.approx(float(k3.kashaev_Kv(cube, corner)), abs=1e-6)


@given(cubes8)
def test_kashaev_K_invariant_under_cube_symmetries(cube):
    k = k3.kashaev_K(cube)
    for perm, flips in symmetries():
        assert k3.kashaev_K(k3.CubeView(transform(cube.z, perm, flips))) == k


@given(cubes8, st.sampled_from(CORNERS))
def test_Kv_is_a_quarter_of_the_exact_derivative(cube, corner):
    w = tuple(1 - x for x in corner)

    def K_at(t):
        z = dict(cube.z)
        z[w] = t
        return k3.kashaev_K(k3.CubeView(z))

    a, b, _ = quadratic_coefficients(K_at, cube.z[w])
    assert 4 * k3.kashaev_Kv(cube, corner) == 2 * a * cube.z[w] + b


@given(cubes8, st.sampled_from(CORNERS))
def test_Kv_square_identity(cube, corner):
    kv = k3.kashaev_Kv(cube, corner)
    xv = cube.z[corner]
    lhs = kv * kv - xv * xv * k3.kashaev_K(cube) / 4
    assert lhs == prod(k3.corner_face_expressions(cube, corner))


@given(cubes8, nonzero_rationals)
def test_homogeneity(cube, c):
    scaled = k3.CubeView({p: c * v for p, v in cube.z.items()})
    assert k3.kashaev_K(scaled) == c ** 4 * k3.kashaev_K(cube)


# -- roots and the positive recurrence --------------------------------------------


def test_cube_roots_examples():
    ones = {c: 1 for c in CORNERS[:-1]}
    r = k3.cube_roots({c: 1.0 for c in CORNERS[:-1]})
    assert (k3.cube_A(ones), k3.cube_D(ones)) == (5, 8)
    assert r.plus == pytest.approx(5 + 4 * SQ2)
    assert r.minus == pytest.approx(5 - 4 * SQ2)
    m3 = {c: v for c, v in m3_cube().z.items() if c != (1, 1, 1)}
    r = k3.cube_roots(m3)
    assert (r.A, r.D, r.plus, r.minus) == (-2, 1, 0, -4)
    degenerate = {c: 0 for c in CORNERS[:-1]}
    degenerate[0, 0, 0] = 1
    r = k3.cube_roots(degenerate)
    assert (r.A, r.D, r.plus, r.minus) == (0, 0, 0, 0)


def test_cube_roots_needs_nonzero_base():
    seven = {c: 1 for c in CORNERS[:-1]}
    seven[0, 0, 0] = 0
    with pytest.raises(ZeroBaseVertex):
        k3.cube_roots(seven)


def heights(field):
    out = {}
    for p, v in field.values.items():
        out.setdefault(k3.height(p), []).append(v)
    return out


def test_positive_recurrence_from_ones():
    f = k3.run_positive_kashaev(k3.positive_slab(6, lambda p: 1.0), 2)
    h = heights(f)
    assert all(v == pytest.approx(5 + 4 * SQ2) for v in h[3])
    assert all(v == pytest.approx(57 + 40 * SQ2) for v in h[4])
    assert k3.check_kashaev(f, ToleranceContext(rel_tol=1e-9)).ok


@pytest.mark.parametrize("c", [0.5, 3.0])
def test_positive_recurrence_is_homogeneous(c):
    f = k3.run_positive_kashaev(k3.positive_slab(4, lambda p: c), 1)
    assert all(v == pytest.approx(c * (5 + 4 * SQ2)) for v in heights(f)[3])


def test_positive_recurrence_rejects_nonpositive_data():
    with pytest.raises(ValueError):
        k3.run_positive_kashaev(k3.positive_slab(3, lambda p: -1.0), 1)


def test_check_kashaev_lists_every_failing_cube():
    f = k3.VertexField3.from_function((0, 0, 0), (2, 1, 1), lambda p: Fraction(1))
    rep = k3.check_kashaev(f)
    assert sorted(rep.locations()) == [(0, 0, 0), (1, 0, 0)]
    assert all(x.residual == -16 for x in rep.findings)


def test_single_cube_with_root_choice_passes():
    z = {c: Fraction(1) for c in CORNERS}
    z[1, 1, 1] = Fraction(-4)
    z.update({(0, 0, 0): 1, (1, 0, 0): 2, (0, 1, 0): 2, (0, 0, 1): 2,
              (1, 1, 0): -3, (1, 0, 1): -3, (0, 1, 1): -3})
    assert k3.check_kashaev(k3.VertexField3(z)).ok


# -- coherence --------------------------------------------------------------------


def test_positive_fields_are_coherent():
    rng = random.Random(7)
    f = k3.run_positive_kashaev(k3.positive_slab(8, lambda p: rng.uniform(0.5, 2)), 4)
    pts = f.interior_points()
    assert pts
    assert all(k3.check_coherence(f, v).ok for v in pts)


def test_other_root_breaks_coherence_with_opposite_sign():
    f = khex_box(3).vertices
    v, top = (1, 1, 1), (2, 2, 2)
    assert k3.check_coherence(f, v).ok
    vals = dict(f.values)
    vals[top] = k3.other_root(f.cube(v).z)
    g = k3.VertexField3(vals)
    assert k3.check_kashaev(g).ok
    res = k3.check_coherence(g, v)
    assert not res.ok
    assert res.lhs == -res.rhs


def test_coherence_needs_full_neighbourhood():
    f = khex_box(1).vertices
    with pytest.raises(NeighborhoodIncomplete):
        k3.check_coherence(f, (0, 0, 0))


@quick
@given(seeds, st.booleans())
def test_squared_coherence_for_any_solution(seed, flip):
    f = khex_box(seed).vertices
    if flip:
        vals = dict(f.values)
        vals[2, 2, 2] = k3.other_root(f.cube((1, 1, 1)).z)
        f = k3.VertexField3(vals)
    res = k3.check_coherence(f, (1, 1, 1))
    assert res.lhs ** 2 == res.rhs ** 2
    assert res.even ** 2 == res.odd ** 2
    assert res.ok == res.split_ok


# -- K-hexahedron -----------------------------------------------------------------


def test_khex_step_from_ones():
    seven = {c: 1.0 for c in CORNERS[:-1]}
    step = k3.khex_step(seven, (SQ2, SQ2, SQ2))
    assert all(u == pytest.approx(2 + SQ2) for u in step.upper)
    assert step.top == pytest.approx(5 + 4 * SQ2)


def test_khex_step_on_fixture():
    seven = {c: v for c, v in m3_cube().z.items() if c != (1, 1, 1)}
    assert k3.khex_step(seven, (-1, 1, 1)).top == -4


@given(st.lists(nonzero_rationals, min_size=7, max_size=7), st.lists(nonzero_rationals, min_size=3, max_size=3))
def test_top_depends_on_the_face_product_only(vals, faces):
    seven = dict(zip(CORNERS[:-1], vals))
    f1, f2, f3 = faces
    assert k3.khex_step(seven, (f1, f2, f3)).top == k3.khex_step(seven, (-f1, -f2, f3)).top


def test_khex_step_needs_nonzero_base():
    seven = {c: 1 for c in CORNERS[:-1]}
    seven[0, 0, 0] = 0
    with pytest.raises(ZeroBaseVertex):
        k3.khex_step(seven, (1, 1, 1))


@quick
@given(seeds)
def test_swept_fields_pass_check_khex(seed):
    assert k3.check_khex(khex_box(seed, 4)).ok


def test_negating_one_face_flags_adjacent_cubes():
    f = khex_box(11, 4)
    key = (2, (1, 1, 1))
    faces = dict(f.faces)
    faces[key] = -faces[key]
    rep = k3.check_khex(k3.KHexField3(f.vertices, faces))
    flagged = set(rep.locations())
    assert 1 <= len(flagged) <= 4
    assert all(key in k3.cube_faces(b).values() for b in flagged)
    assert "face-condition" not in rep.kinds()


@quick
@given(seeds)
def test_corner_sign_law(seed):
    f = khex_box(seed, 2)
    cube = f.cube((0, 0, 0))
    for corner in CORNERS:
        faces = prod(f.faces[k] for k in k3.corner_faces((0, 0, 0), corner))
        sign = 1 if corner in ((0, 0, 0), (1, 1, 1)) else -1
        assert k3.kashaev_Kv(cube, corner) == sign * faces


@quick
@given(seeds)
def test_restriction_is_a_coherent_solution(seed):
    f = khex_box(seed, 4).vertices
    assert k3.check_kashaev(f).ok
    assert k3.coherence_report(f).ok


# -- extension --------------------------------------------------------------------


def test_extension_of_the_all_ones_solution():
    f = k3.run_positive_kashaev(k3.positive_slab(6, lambda p: 1.0), 2)
    ext = k3.extend_to_khex(f)
    assert k3.check_khex(ext).ok
    want = {0: SQ2, 1: 2 + SQ2, 2: 8 + 5 * SQ2}
    for (a, p), v in ext.faces.items():
        assert v == pytest.approx(want[k3.height(p)])


@quick
@given(seeds)
def test_extension_of_a_restriction_is_gauge_equivalent(seed):
    f = khex_box(seed, 3)
    ext = k3.extend_to_khex(f.vertices)
    assert ext.vertices.values == f.vertices.values
    assert k3.check_khex(ext).ok
    cmp = k3.gauge_compare(f, ext)
    assert cmp.gauge is not None
    again = k3.gauge_transform(f, *cmp.gauge)
    assert again.faces == ext.faces


def test_extension_rejects_incoherent_fields():
    f = khex_box(5).vertices
    vals = dict(f.values)
    vals[2, 2, 2] = k3.other_root(f.cube((1, 1, 1)).z)
    with pytest.raises(NotCoherent):
        k3.extend_to_khex(k3.VertexField3(vals))


# -- gauges and reversal ----------------------------------------------------------


def test_trivial_gauge_is_identity():
    f = khex_box(2)
    assert k3.gauge_transform(f).faces == f.faces
    assert k3.gauge_compare(f, f).gauge == k3.Gauge(
        *[{c: 1 for c in range(3)} for _ in range(3)]
    )


def test_single_alpha_flips_its_lines():
    f = khex_box(4)
    g = k3.gauge_transform(f, alpha={0: -1})
    for (a, p), v in f.faces.items():
        flipped = a in (2, 3) and p[0] == 0
        assert g.faces[a, p] == (-v if flipped else v)


@quick
@given(seeds, seeds)
def test_random_gauges_preserve_khex(seed, gseed):
    f = khex_box(seed)
    r = random.Random(gseed)
    signs = [{c: r.choice((1, -1)) for c in range(3)} for _ in range(3)]
    g = k3.gauge_transform(f, *signs)
    assert k3.check_khex(g).ok
    assert g.vertices.values == f.vertices.values


def test_single_face_negation_is_not_a_gauge():
    f = khex_box(9, 2)
    faces = dict(f.faces)
    key = (1, (0, 0, 0))
    faces[key] = -faces[key]
    cmp = k3.gauge_compare(f, k3.KHexField3(f.vertices, faces))
    assert cmp.gauge is None
    assert cmp.witness["kind"] == "cube"


def test_gauge_compare_needs_equal_vertices():
    f = khex_box(1)
    other = khex_box(2)
    with pytest.raises(VertexMismatch):
        k3.gauge_compare(f, other)


@quick
@given(seeds)
def test_reversal(seed):
    f = khex_box(seed)
    r = k3.reverse_field(f)
    assert k3.check_khex(r).ok
    back = k3.reverse_field(r)
    assert back.faces == f.faces and back.vertices.values == f.vertices.values
    assert k3.check_kashaev(k3.reverse_field(f.vertices)).ok


def test_float_checks_respect_tolerance():
    f = k3.run_positive_kashaev(k3.positive_slab(5, lambda p: 1.0), 1)
    vals = dict(f.values)
    p = next(q for q in vals if k3.height(q) == 3)
    vals[p] *= 1 + 1e-6
    g = k3.VertexField3(vals)
    assert not k3.check_kashaev(g).ok
    assert k3.check_kashaev(g, ToleranceContext(rel_tol=1e-4)).ok
    assert approx_eq(vals[p], f.values[p], ToleranceContext(rel_tol=1e-5))
