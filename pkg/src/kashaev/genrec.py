"""Kashaev-like recurrences on box-shaped stencils in Z^d.

An instance fixes a box shape ``a``, a polynomial ``f`` in the values on
``[a]`` that is quadratic in the corner ``z_a``, discriminant factors
``f_1 .. f_d`` (``f_i`` lives on the box ``[a - 1_i]``), face updates
``r_1 .. r_d`` and a table of propagation signs.  Four families are built in:
``kashaev3d``, ``sholo2d``, ``cubic1d`` and ``box2d``.

Face values are keyed ``(i, base)``: the box ``base + [a - 1_i]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import BadParams, NeighborhoodIncomplete, ZeroDenominator, ZeroG
from .report import Report
from .scalars import (
    DEFAULT_TOLERANCE,
    Scalar,
    ToleranceContext,
    common_mode,
    div,
    is_exact,
    is_zero,
    loose_eq,
    prod,
    sqrt_principal,
)

Point = Tuple[int, ...]
Values = Mapping[Point, Scalar]
FaceKey = Tuple[int, Point]

INSTANCES = ("kashaev3d", "sholo2d", "cubic1d", "box2d")


def box(a: Sequence[int]) -> List[Point]:
    return list(itertools.product(*(range(k + 1) for k in a)))


def shrink(a: Sequence[int], i: int) -> Point:
    """``a - 1_i`` with axes counted from 1."""
    return tuple(k - 1 if j == i - 1 else k for j, k in enumerate(a))


def unit(d: int, i: int) -> Point:
    return tuple(1 if j == i - 1 else 0 for j in range(d))


def vadd(p: Point, q: Point) -> Point:
    return tuple(x + y for x, y in zip(p, q))


def vmul(p: Point, q: Point) -> Point:
    return tuple(x * y for x, y in zip(p, q))


def signs(d: int) -> List[Point]:
    return list(itertools.product((1, -1), repeat=d))


@dataclass(frozen=True)
class Instance:
    """One recurrence family with fixed parameters."""

    name: str
    a: Point
    params: Tuple[Scalar, ...]
    f: Callable[[Values], Scalar]
    fs: Tuple[Callable[[Values], Scalar], ...]
    r: Callable[[Values, Tuple[Scalar, ...]], Tuple[Scalar, ...]]
    gamma: Mapping[Point, int]
    gh: Callable[[Values], Tuple[Scalar, Scalar]]
    face_scale: Tuple[str, ...] = ()
    negated: Tuple[int, ...] = field(default=())

    @property
    def d(self) -> int:
        return len(self.a)

    @property
    def corner(self) -> Point:
        return self.a

    def coefficients(self, z: Values) -> Tuple[Scalar, Scalar, Scalar]:
        """``(g, h, c)`` with ``f = g z_a^2 + h z_a + c``."""
        g, h = self.gh(z)
        c = self.f({**z, self.a: 0})
        return g, h, c

    def g(self, z: Values) -> Scalar:
        return self.gh(z)[0]

    def h(self, z: Values) -> Scalar:
        return self.gh(z)[1]

    def df(self, z: Values) -> Scalar:
        """Partial derivative of ``f`` in the corner ``z_a``."""
        g, h = self.gh(z)
        return 2 * g * z[self.a] + h

    def face_poly(self, i: int, z: Values) -> Scalar:
        """``f_i`` on the values of ``[a - 1_i]``; extra keys are ignored."""
        sub = {p: z[p] for p in box(shrink(self.a, i))}
        return self.fs[i - 1](sub)

    def discriminant(self, z: Values) -> Scalar:
        g, h, c = self.coefficients(z)
        return h * h - 4 * g * c

    def gamma_product(self) -> int:
        return math.prod(self.gamma.values())

    def with_negated(self, i: int) -> "Instance":
        """Same ``f`` with ``r_i`` replaced by ``-r_i``; signs with
        ``alpha_i = -1`` flip."""
        r = self.r

        def r_neg(z, faces):
            out = list(r(z, faces))
            out[i - 1] = -out[i - 1]
            return tuple(out)

        gamma = {al: (-g if al[i - 1] == -1 else g) for al, g in self.gamma.items()}
        return Instance(
            self.name, self.a, self.params, self.f, self.fs, r_neg, gamma, self.gh,
            self.face_scale, tuple(sorted(set(self.negated) ^ {i})),
        )


# -- the four families -------------------------------------------------------


def _sign_table(d: int, rule: Callable[[Point], bool]) -> Dict[Point, int]:
    return {al: (1 if rule(al) else -1) for al in signs(d)}


def _kashaev3d() -> Instance:
    def f(z):
        a = z[0, 0, 0] * z[1, 1, 1]
        b = z[1, 0, 0] * z[0, 1, 1]
        c = z[0, 1, 0] * z[1, 0, 1]
        d = z[0, 0, 1] * z[1, 1, 0]
        s = z[0, 0, 0] * z[0, 1, 1] * z[1, 0, 1] * z[1, 1, 0]
        t = z[1, 0, 0] * z[0, 1, 0] * z[0, 0, 1] * z[1, 1, 1]
        return 2 * (a * a + b * b + c * c + d * d) - (a + b + c + d) ** 2 - 4 * (s + t)

    def f1(z):
        return 16 * (z[0, 0, 0] * z[0, 1, 1] + z[0, 1, 0] * z[0, 0, 1])

    def f2(z):
        return z[0, 0, 0] * z[1, 0, 1] + z[1, 0, 0] * z[0, 0, 1]

    def f3(z):
        return z[0, 0, 0] * z[1, 1, 0] + z[1, 0, 0] * z[0, 1, 0]

    def r(z, w):
        w1, w2, w3 = w
        z0 = z[0, 0, 0]
        return (
            div(4 * w2 * w3 + w1 * z[1, 0, 0], z0),
            div(w1 * w3 + 4 * w2 * z[0, 1, 0], 4 * z0),
            div(w1 * w2 + 4 * w3 * z[0, 0, 1], 4 * z0),
        )

    def gh(z):
        p = z[0, 0, 0]
        bcd = z[1, 0, 0] * z[0, 1, 1] + z[0, 1, 0] * z[1, 0, 1] + z[0, 0, 1] * z[1, 1, 0]
        return p * p, -2 * p * bcd - 4 * z[1, 0, 0] * z[0, 1, 0] * z[0, 0, 1]

    gamma = _sign_table(3, lambda al: len(set(al)) == 1)
    return Instance("kashaev3d", (1, 1, 1), (), f, (f1, f2, f3), r, gamma, gh, ("x4", "x1", "x1"))


def _sholo2d() -> Instance:
    def f(z):
        z00, z10, z01, z11 = z[0, 0], z[1, 0], z[0, 1], z[1, 1]
        return (
            z00 * z00 + z10 * z10 + z01 * z01 + z11 * z11
            - 2 * (z00 * z10 + z10 * z11 + z11 * z01 + z01 * z00)
            - 6 * (z00 * z11 + z10 * z01)
        )

    def f1(z):
        return 32 * (z[0, 0] + z[0, 1])

    def f2(z):
        return z[0, 0] + z[1, 0]

    def r(z, w):
        w1, w2 = w
        return (w1 + 8 * w2, w2 + div(w1, 4))

    def gh(z):
        return 1, -2 * z[1, 0] - 2 * z[0, 1] - 6 * z[0, 0]

    gamma = _sign_table(2, lambda al: al == (1, 1))
    return Instance("sholo2d", (1, 1), (), f, (f1, f2), r, gamma, gh, ("x4sqrt2", "x1"))


def _cubic1d(a1, a2, a3) -> Instance:
    def f(z):
        z0, z1, z2, z3 = z[(0,)], z[(1,)], z[(2,)], z[(3,)]
        return (
            z0 * z0 * z3 * z3 + a1 * z1 * z1 * z2 * z2 + a2 * z0 * z1 * z2 * z3
            + a3 * (z0 * z2 ** 3 + z1 ** 3 * z3)
        )

    def f1(z):
        z0, z1, z2 = z[(0,)], z[(1,)], z[(2,)]
        return (
            a3 * a3 * z1 ** 6 + 2 * a2 * a3 * z0 * z1 ** 4 * z2
            + (a2 * a2 - 4 * a1) * z0 ** 2 * z1 ** 2 * z2 ** 2 - 4 * a3 * z0 ** 3 * z2 ** 3
        )

    def r(z, w):
        (w1,) = w
        z0, z1, z2 = z[(0,)], z[(1,)], z[(2,)]
        num = (
            a3 * a3 * z1 ** 6 + a2 * a3 * z0 * z1 ** 4 * z2 + 2 * a3 * z0 ** 3 * z2 ** 3
            + w1 * w1 + (-2 * a3 * z1 ** 3 - a2 * z0 * z1 * z2) * w1
        )
        return (div(num, 2 * z0 ** 3),)

    def gh(z):
        z0, z1, z2 = z[(0,)], z[(1,)], z[(2,)]
        return z0 * z0, a2 * z0 * z1 * z2 + a3 * z1 ** 3

    gamma = {(1,): 1, (-1,): 1}
    return Instance("cubic1d", (3,), (a1, a2, a3), f, (f1,), r, gamma, gh, ("x1",))


def _box2d(a1, a2) -> Instance:
    def f(z):
        z00, z10, z01, z11, z02, z12 = z[0, 0], z[1, 0], z[0, 1], z[1, 1], z[0, 2], z[1, 2]
        return (
            z00 ** 2 * z12 ** 2 + z10 ** 2 * z02 ** 2
            + div(a2 * a2 - a1 * a1, 4) * z01 ** 2 * z11 ** 2
            - a1 * (z00 * z02 * z11 ** 2 + z10 * z12 * z01 ** 2)
            - 2 * z00 * z10 * z02 * z12
            - a2 * (z00 * z12 * z01 * z11 + z10 * z02 * z01 * z11)
        )

    def f1(z):
        return a1 * z[0, 1] ** 2 + 4 * z[0, 0] * z[0, 2]

    def f2(z):
        z00, z10, z01, z11 = z[0, 0], z[1, 0], z[0, 1], z[1, 1]
        return a1 * (z00 ** 2 * z11 ** 2 + z01 ** 2 * z10 ** 2) + 2 * a2 * z00 * z01 * z10 * z11

    def r(z, w):
        w01, wcc = w
        z00, z10, z01, z11, z02 = z[0, 0], z[1, 0], z[0, 1], z[1, 1], z[0, 2]
        return (
            div(z10 * w01 + wcc, z00),
            div(z01 * (a1 * z01 * z10 + a2 * z00 * z11) * w01 + (a1 * z01 ** 2 + 2 * z00 * z02) * wcc, 2 * z00 ** 2),
        )

    def gh(z):
        z00, z10, z01, z11, z02 = z[0, 0], z[1, 0], z[0, 1], z[1, 1], z[0, 2]
        return z00 * z00, -a1 * z10 * z01 ** 2 - 2 * z00 * z10 * z02 - a2 * z00 * z01 * z11

    gamma = _sign_table(2, lambda al: len(set(al)) == 1)
    return Instance("box2d", (1, 2), (a1, a2), f, (f1, f2), r, gamma, gh, ("x1", "x1"))


_ARITY = {"kashaev3d": 0, "sholo2d": 0, "cubic1d": 3, "box2d": 2}


def make_instance(name: str, params: Sequence[Scalar] = ()) -> Instance:
    if name not in _ARITY:
        raise BadParams(f"unknown instance {name!r}; expected one of {', '.join(INSTANCES)}")
    params = tuple(params)
    if len(params) != _ARITY[name]:
        raise BadParams(f"{name} takes {_ARITY[name]} parameters, got {len(params)}")
    if name == "kashaev3d":
        return _kashaev3d()
    if name == "sholo2d":
        return _sholo2d()
    if name == "cubic1d":
        return _cubic1d(*params)
    return _box2d(*params)


# -- single step ---------------------------------------------------------------


class GenStep(NamedTuple):
    top: Scalar
    faces: Tuple[Scalar, ...]


def gen_step(inst: Instance, z: Values, faces: Sequence[Scalar]) -> GenStep:
    """Top corner and upper faces of one box from its lower data."""
    lower = {p: z[p] for p in box(inst.a) if p != inst.a}
    g, h = inst.gh(lower)
    if is_zero(g):
        raise ZeroG("leading coefficient g vanishes")
    top = div(-h + prod(faces), 2 * g)
    try:
        new = inst.r(lower, tuple(faces))
    except ZeroDivisionError as exc:
        raise ZeroDenominator("face update denominator vanishes") from exc
    return GenStep(top, tuple(new))


# -- fields --------------------------------------------------------------------


@dataclass
class GridField:
    d: int
    a: Point
    vertices: Dict[Point, Scalar]
    faces: Dict[FaceKey, Scalar] = field(default_factory=dict)

    @property
    def mode(self) -> str:
        return common_mode(list(self.vertices.values()) + list(self.faces.values()))

    def local(self, v: Point, alpha: Optional[Point] = None) -> Optional[Dict[Point, Scalar]]:
        """Values ``z_i = x_{v + i * alpha}`` on ``[a]``, or None if incomplete."""
        alpha = alpha or (1,) * self.d
        out = {}
        for i in box(self.a):
            p = vadd(v, vmul(i, alpha))
            if p not in self.vertices:
                return None
            out[i] = self.vertices[p]
        return out

    def oriented_faces(self, v: Point, alpha: Point) -> Optional[Tuple[Scalar, ...]]:
        out = []
        for i in range(1, self.d + 1):
            key = oriented_face_key(self.a, i, v, alpha)
            if key not in self.faces:
                return None
            out.append(self.faces[key])
        return tuple(out)


def oriented_face_key(a: Point, i: int, v: Point, alpha: Point) -> FaceKey:
    """Key of the box ``v + [alpha * (a - 1_i)]``."""
    ext = vmul(shrink(a, i), alpha)
    return (i, tuple(x + min(0, e) for x, e in zip(v, ext)))


def face_values(inst: Instance, vertices: Mapping[Point, Scalar], key: FaceKey) -> Optional[Dict[Point, Scalar]]:
    i, base = key
    out = {}
    for p in box(shrink(inst.a, i)):
        q = vadd(base, p)
        if q not in vertices:
            return None
        out[p] = vertices[q]
    return out


def _height(p: Point) -> int:
    return sum(p)


def _requirements(inst: Instance, bases: Iterable[Point]):
    bases = sorted(set(bases), key=lambda b: (_height(b), b))
    d = inst.d
    tops = {vadd(b, inst.a) for b in bases}
    uppers = {(i, vadd(b, unit(d, i))) for b in bases for i in range(1, d + 1)}
    need_v = {vadd(b, p) for b in bases for p in box(inst.a) if p != inst.a}
    need_f = {(i, b) for b in bases for i in range(1, d + 1)}
    return bases, sorted(need_v - tops), sorted(need_f - uppers), tops


def sweep_gen(
    inst: Instance,
    vertices: Mapping[Point, Scalar],
    faces: Mapping[FaceKey, Scalar],
    bases: Iterable[Point],
) -> GridField:
    """Run the recurrence over the boxes at ``bases`` in height order."""
    bases, _, _, _ = _requirements(inst, bases)
    vals = dict(vertices)
    fcs = dict(faces)
    for b in bases:
        z = {p: vals[vadd(b, p)] for p in box(inst.a) if p != inst.a}
        step = gen_step(inst, z, [fcs[(i, b)] for i in range(1, inst.d + 1)])
        vals[vadd(b, inst.a)] = step.top
        for i, w in enumerate(step.faces, start=1):
            fcs[(i, vadd(b, unit(inst.d, i)))] = w
    return GridField(inst.d, inst.a, vals, fcs)


def region(shape: Sequence[int]) -> List[Point]:
    """Box bases ``[0, shape_1) x ... x [0, shape_d)``."""
    return list(itertools.product(*(range(k) for k in shape)))


def seed_positive(inst: Instance, bases: Iterable[Point], draw: Callable[[], Scalar]):
    """Random positive initial vertices and principal-root initial faces."""
    _, init_v, init_f, _ = _requirements(inst, bases)
    verts = {p: draw() for p in init_v}
    faces = {}
    for key in init_f:
        faces[key] = sqrt_principal(inst.face_poly(key[0], face_values(inst, verts, key)))
    return verts, faces


def positive_sweep(inst: Instance, shape: Sequence[int], draw: Callable[[], Scalar]) -> GridField:
    bases = region(shape)
    verts, faces = seed_positive(inst, bases, draw)
    return sweep_gen(inst, verts, faces, bases)


def cubic_exact_seed(inst: Instance, s: Scalar, z0: Scalar, z1: Scalar) -> Tuple[Dict[Point, Scalar], Dict[FaceKey, Scalar]]:
    """Rational initial data for cubic1d at the two cluster parameter sets.

    At ``(-3, -6, -4)`` the discriminant is ``16 (z1^2 + z0 z2)^3``; at
    ``(0, 0, -4)`` it is ``16 z1^6 + 16 z0^3 z2^3``.
    """
    if inst.name != "cubic1d":
        raise BadParams("exact seeding is only available for cubic1d")
    params = tuple(Fraction(p) for p in inst.params)
    if params == (-3, -6, -4):
        z2 = div(s * s - z1 * z1, z0)
        w = 4 * s ** 3
    elif params == (0, 0, -4):
        z1 = s
        z2 = div(2 * s * s, z0)
        w = 12 * s ** 3
    else:
        raise BadParams("exact seeding needs parameters (-3,-6,-4) or (0,0,-4)")
    verts = {(0,): z0, (1,): z1, (2,): z2}
    return verts, {(1, (0,)): w}


# -- checks ----------------------------------------------------------------------


def f_sides(inst: Instance, z: Values) -> Tuple[Scalar, Scalar]:
    """Two sides whose agreement means ``f(z) = 0``.

    Exact values give ``(f, 0)``.  Floats give ``((df)^2, f_1 ... f_d)``,
    which differ by ``4 g f`` and avoid the cancellation inside ``f``.
    """
    if all(is_exact(v) for v in z.values()):
        return inst.f(z), 0
    return inst.df(z) ** 2, prod(inst.face_poly(i, z) for i in range(1, inst.d + 1))


def check_gen(inst: Instance, fld: GridField, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Report:
    """f on every complete box, face squares, and the recurrence on every
    box whose lower faces, upper faces and top are present."""
    rep = Report(mode=fld.mode)
    d = inst.d
    for key in sorted(fld.faces):
        zz = face_values(inst, fld.vertices, key)
        if zz is None:
            continue
        w = fld.faces[key]
        rep.compare(f"face-{key[0]}", [key[0], list(key[1])], w * w, inst.face_poly(key[0], zz), ctx)
    bases = sorted({tuple(x - a for x, a in zip(p, inst.a)) for p in fld.vertices}, key=lambda b: (_height(b), b))
    for b in bases:
        z = fld.local(b)
        if z is None:
            continue
        rep.compare("f", list(b), *f_sides(inst, z), ctx)
        lower = [fld.faces.get((i, b)) for i in range(1, d + 1)]
        upper = [fld.faces.get((i, vadd(b, unit(d, i)))) for i in range(1, d + 1)]
        if None in lower or None in upper:
            continue
        step = gen_step(inst, z, lower)
        rep.compare("top", list(b), z[inst.a], step.top, ctx)
        for i, (want, got) in enumerate(zip(upper, step.faces), start=1):
            rep.compare(f"r{i}", list(b), want, got, ctx)
    return rep


class GenCoherence(NamedTuple):
    lhs: Scalar
    rhs: Scalar
    ok: bool
    even: Scalar
    odd: Scalar
    split_ok: bool


def _coherence_boxes(a: Point) -> List[Tuple[Point, Point, Point]]:
    """``(alpha, origin offset, direction)`` for the boxes around ``v + [a - 1]``."""
    out = []
    for al in itertools.product((-1, 0), repeat=len(a)):
        origin = tuple(-(k - 1) * x for k, x in zip(a, al))
        direction = tuple(1 + 2 * x for x in al)
        out.append((al, origin, direction))
    return out


def check_gen_coherence(
    inst: Instance, vertices: Mapping[Point, Scalar], v: Point, ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> GenCoherence:
    fld = vertices if isinstance(vertices, GridField) else GridField(inst.d, inst.a, dict(vertices))
    even, odd = [], []
    for al, origin, direction in _coherence_boxes(inst.a):
        z = fld.local(vadd(v, origin), direction)
        if z is None:
            raise NeighborhoodIncomplete(f"box around {v} with direction {direction} leaves the field")
        (even if sum(al) % 2 == 0 else odd).append(inst.df(z))
    facs = []
    for i in range(1, inst.d + 1):
        for beta in itertools.product((-1, 0), repeat=inst.d):
            if beta[i - 1] != 0:
                continue
            zz = face_values(inst, fld.vertices, (i, vadd(v, beta)))
            if zz is None:
                raise NeighborhoodIncomplete(f"face box near {v} leaves the field")
            facs.append(inst.face_poly(i, zz))
    gp = inst.gamma_product()
    lhs = prod(even) * prod(odd)
    rhs = gp * prod(facs)
    pe, po = prod(even), gp * prod(odd)
    return GenCoherence(lhs, rhs, loose_eq(lhs, rhs, ctx), pe, po, loose_eq(pe, po, ctx))


def coherence_points(inst: Instance, fld: GridField) -> List[Point]:
    out = []
    for v in sorted(fld.vertices):
        try:
            check_gen_coherence(inst, fld, v)
        except NeighborhoodIncomplete:
            continue
        out.append(v)
    return out


def gen_coherence_report(inst: Instance, fld: GridField, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Report:
    rep = Report(mode=common_mode(fld.vertices.values()))
    checked = 0
    for v in sorted(fld.vertices):
        try:
            res = check_gen_coherence(inst, fld, v, ctx)
        except NeighborhoodIncomplete:
            continue
        checked += 1
        if not res.ok:
            rep.add("coherence", list(v), res.lhs, res.rhs)
        if res.ok != res.split_ok:
            rep.add("split-form", list(v), res.even, res.odd)
    rep.extra["checked"] = checked
    return rep


class SignObservation(NamedTuple):
    alpha: Point
    expected: int
    observed: Dict[int, int]


def observed_signs(inst: Instance, fld: GridField, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Dict[Point, Dict[int, int]]:
    """For every orientation, counts of the sign relating the oriented
    corner derivative to the product of the oriented faces."""
    out: Dict[Point, Dict[int, int]] = {al: {1: 0, -1: 0, 0: 0} for al in signs(inst.d)}
    for v in fld.vertices:
        for al in signs(inst.d):
            z = fld.local(v, al)
            if z is None:
                continue
            fw = fld.oriented_faces(v, al)
            if fw is None:
                continue
            lhs, p = inst.df(z), prod(fw)
            if loose_eq(lhs, p, ctx):
                out[al][1] += 1
            elif loose_eq(lhs, -p, ctx):
                out[al][-1] += 1
            else:
                out[al][0] += 1
    return out


def verify_propagation_signs(
    inst: Instance,
    trials: int,
    rng,
    shape: Optional[Sequence[int]] = None,
    ctx: ToleranceContext = DEFAULT_TOLERANCE,
) -> Report:
    """Sweep random positive data and compare every orientation's sign
    with the instance table."""
    shape = shape or default_shape(inst)
    totals: Dict[Point, Dict[int, int]] = {al: {1: 0, -1: 0, 0: 0} for al in signs(inst.d)}
    for _ in range(trials):
        fld = positive_sweep(inst, shape, lambda: random_positive(rng))
        for al, counts in observed_signs(inst, fld, ctx).items():
            for k, n in counts.items():
                totals[al][k] += n
    rep = Report(mode="float")
    for al in signs(inst.d):
        want = inst.gamma[al]
        c = totals[al]
        if c[-want] or c[0] or not c[want]:
            rep.add("sign", list(al), want, -want if c[-want] else 0)
    rep.extra["counts"] = {",".join(str(x) for x in al): [totals[al][1], totals[al][-1], totals[al][0]] for al in signs(inst.d)}
    return rep


def default_shape(inst: Instance) -> Tuple[int, ...]:
    return {1: (6,), 2: (4, 4), 3: (3, 3, 3)}[inst.d]


def random_positive(rng) -> float:
    return rng.uniform(0.5, 2.0)


def random_params(name: str, rng) -> Tuple[Scalar, ...]:
    """Rational parameters in the positivity cones of each family."""
    if name == "cubic1d":
        a2 = Fraction(-rng.randint(0, 12), 2)
        a3 = Fraction(-rng.randint(1, 12), 2)
        a1 = a2 * a2 / 4 - Fraction(rng.randint(0, 12), 2)
        return (a1, a2, a3)
    if name == "box2d":
        return (Fraction(rng.randint(1, 12), 2), Fraction(rng.randint(0, 12), 2))
    return ()


# -- polynomial identities -------------------------------------------------------


def discriminant_identity(inst: Instance, z: Values) -> Tuple[Scalar, Scalar]:
    """``((df)^2 - 4 f g, f_1 ... f_d)`` at one point."""
    g = inst.g(z)
    lhs = inst.df(z) ** 2 - 4 * inst.f(z) * g
    rhs = prod(inst.face_poly(i, z) for i in range(1, inst.d + 1))
    return lhs, rhs


def flip(z: Values, a: Point, i: int) -> Dict[Point, Scalar]:
    """Reflect the index of every value in coordinate ``i``."""
    return {tuple(a[j] - p[j] if j == i - 1 else p[j] for j in range(len(p))): v for p, v in z.items()}


def invariance_defects(inst: Instance, z: Values) -> List[str]:
    """Names of the reflections that change ``f`` or some ``f_j`` at ``z``."""
    bad = []
    for i in range(1, inst.d + 1):
        if inst.f(flip(z, inst.a, i)) != inst.f(z):
            bad.append(f"f/{i}")
        for j in range(1, inst.d + 1):
            sub = {p: z[p] for p in box(shrink(inst.a, j))}
            if inst.fs[j - 1](flip(sub, shrink(inst.a, j), i)) != inst.fs[j - 1](sub):
                bad.append(f"f{j}/{i}")
    return bad


def random_rational_point(inst: Instance, rng, span: int = 9) -> Dict[Point, Fraction]:
    return {p: Fraction(rng.randint(-span, span), rng.randint(1, 5)) for p in box(inst.a)}


# -- reversal ---------------------------------------------------------------------


def reverse_grid(inst: Instance, fld: GridField) -> GridField:
    """The field ``s -> x_{-s}`` on vertices and face boxes."""
    verts = {tuple(-x for x in p): v for p, v in fld.vertices.items()}
    faces = {}
    for (i, b), w in fld.faces.items():
        far = vadd(b, shrink(inst.a, i))
        faces[(i, tuple(-x for x in far))] = w
    return GridField(fld.d, fld.a, verts, faces)


def is_exact_field(fld: GridField) -> bool:
    return all(is_exact(v) for v in fld.vertices.values()) and all(is_exact(v) for v in fld.faces.values())
