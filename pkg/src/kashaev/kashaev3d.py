"""Kashaev equation, K-hexahedron equations and coherence on windows of Z^3.

Vertex values live on integer points.  Face values are keyed by
``(axis, base)``: the face of axis 1 at base ``p`` is the unit square with
corners ``p, p+e2, p+e3, p+e2+e3`` (its center is ``p + (0, 1/2, 1/2)``).
Cube corners are labelled by bit triples ``(a, b, c)`` relative to the
cube's base vertex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from . import gf2
from .errors import (
    NeighborhoodIncomplete,
    NonConvergent,
    NotCoherent,
    VertexMismatch,
    ZeroBaseVertex,
    ZeroFaceExpression,
    ZeroVertexValue,
)
from .report import Report
from .scalars import (
    DEFAULT_TOLERANCE,
    FLOAT,
    Scalar,
    ToleranceContext,
    coerce,
    common_mode,
    div,
    half,
    is_exact,
    is_zero,
    loose_eq,
    prod,
    sqrt_principal,
)

Point = Tuple[int, int, int]
FaceKey = Tuple[int, Point]

CORNERS: Tuple[Point, ...] = tuple(itertools.product((0, 1), repeat=3))
UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
AXES = (1, 2, 3)


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def unit(axis: int) -> Point:
    return UNIT[axis - 1]


def height(p: Point) -> int:
    return p[0] + p[1] + p[2]


def _xor(c: Point, e: Point) -> Point:
    return (c[0] ^ e[0], c[1] ^ e[1], c[2] ^ e[2])


def face_corners(axis: int, base: Point) -> Tuple[Point, Point, Point, Point]:
    """Corners of a face in cyclic order ``v1, v2, v3, v4``."""
    b, c = [unit(a) for a in AXES if a != axis]
    return (base, add(base, b), add(add(base, b), c), add(base, c))


def cube_faces(base: Point) -> Dict[Tuple[int, int], FaceKey]:
    """Face keys of a cube, indexed by ``(axis, side)`` with side 0 = lower."""
    out = {}
    for a in AXES:
        out[(a, 0)] = (a, base)
        out[(a, 1)] = (a, add(base, unit(a)))
    return out


def corner_faces(base: Point, corner: Point) -> List[FaceKey]:
    """The three faces of the cube at ``base`` that meet ``corner``."""
    return [(a, add(base, unit(a)) if corner[a - 1] else base) for a in AXES]


# -- single cube ------------------------------------------------------------


@dataclass(frozen=True)
class CubeView:
    """Values on one unit cube.

    ``z`` maps corner bit triples to values.  ``faces`` (optional) maps
    ``(axis, side)`` to face values; ``(1, 0)`` is the face at ``0,1/2,1/2``.
    """

    z: Mapping[Point, Scalar]
    faces: Optional[Mapping[Tuple[int, int], Scalar]] = None
    base: Point = (0, 0, 0)

    @classmethod
    def from_labels(cls, values: Mapping[str, Scalar], faces=None, base=(0, 0, 0)):
        """Build from string labels such as ``{"000": 1, "101": 2, ...}``."""
        z = {tuple(int(ch) for ch in k): v for k, v in values.items()}
        return cls(z, faces, tuple(base))

    @classmethod
    def from_list(cls, values: Iterable[Scalar], faces=None, base=(0, 0, 0)):
        """Eight values in label order ``000, 001, 010, ..., 111``."""
        values = list(values)
        if len(values) != 8:
            raise ValueError("a cube needs eight corner values")
        return cls(dict(zip(CORNERS, values)), faces, tuple(base))

    def __getitem__(self, corner: Point) -> Scalar:
        return self.z[corner]

    def relabel(self, corner: Point) -> "CubeView":
        """The same cube with ``corner`` moved to the label ``000``."""
        return CubeView({e: self.z[_xor(corner, e)] for e in CORNERS})


def _six(z):
    a = z[0, 0, 0] * z[1, 1, 1]
    b = z[1, 0, 0] * z[0, 1, 1]
    c = z[0, 1, 0] * z[1, 0, 1]
    d = z[0, 0, 1] * z[1, 1, 0]
    s = z[0, 0, 0] * z[0, 1, 1] * z[1, 0, 1] * z[1, 1, 0]
    t = z[1, 1, 1] * z[1, 0, 0] * z[0, 1, 0] * z[0, 0, 1]
    return a, b, c, d, s, t


def kashaev_sides(cube: CubeView) -> Tuple[Scalar, Scalar]:
    """The two sides of the Kashaev equation, so that K = lhs - rhs."""
    a, b, c, d, s, t = _six(cube.z)
    return 2 * (a * a + b * b + c * c + d * d), (a + b + c + d) ** 2 + 4 * (s + t)


def kashaev_K(cube: CubeView) -> Scalar:
    lhs, rhs = kashaev_sides(cube)
    return lhs - rhs


def kashaev_Kv(cube: CubeView, corner: Point = (0, 0, 0)) -> Scalar:
    """A quarter of dK/dz_w, where w is the corner opposite ``corner``."""
    z = cube.relabel(tuple(corner)).z
    pairs = z[1, 0, 0] * z[0, 1, 1] + z[0, 1, 0] * z[1, 0, 1] + z[0, 0, 1] * z[1, 1, 0]
    z0 = z[0, 0, 0]
    return half(z[1, 1, 1] * z0 * z0 - z0 * pairs) - z[1, 0, 0] * z[0, 1, 0] * z[0, 0, 1]


def corner_face_expressions(cube: CubeView, corner: Point) -> List[Scalar]:
    """Face expressions ``x_v x_opp + x_1 x_2`` of the three faces at ``corner``."""
    out = []
    for a in AXES:
        i, j = [unit(b) for b in AXES if b != a]
        v = tuple(corner)
        vi, vj = _xor(v, i), _xor(v, j)
        out.append(cube.z[v] * cube.z[_xor(vi, j)] + cube.z[vi] * cube.z[vj])
    return out


class CubeRoots(NamedTuple):
    A: Scalar
    D: Scalar
    plus: Scalar
    minus: Scalar


def cube_A(z: Mapping[Point, Scalar]) -> Scalar:
    return 2 * z[1, 0, 0] * z[0, 1, 0] * z[0, 0, 1] + z[0, 0, 0] * (
        z[1, 0, 0] * z[0, 1, 1] + z[0, 1, 0] * z[1, 0, 1] + z[0, 0, 1] * z[1, 1, 0]
    )


def cube_D(z: Mapping[Point, Scalar]) -> Scalar:
    z0 = z[0, 0, 0]
    return (
        (z0 * z[0, 1, 1] + z[0, 1, 0] * z[0, 0, 1])
        * (z0 * z[1, 0, 1] + z[1, 0, 0] * z[0, 0, 1])
        * (z0 * z[1, 1, 0] + z[1, 0, 0] * z[0, 1, 0])
    )


def cube_roots(seven: Mapping[Point, Scalar]) -> CubeRoots:
    """Both solutions for the top corner given the other seven."""
    z0 = seven[0, 0, 0]
    if z0 == 0:
        raise ZeroBaseVertex("base vertex value is zero")
    A, D = cube_A(seven), cube_D(seven)
    r = sqrt_principal(D)
    z0sq = z0 * z0
    return CubeRoots(A, D, div(A + 2 * r, z0sq), div(A - 2 * r, z0sq))


def other_root(z: Mapping[Point, Scalar]) -> Scalar:
    """The second root of the cube's quadratic in the top corner."""
    z0 = z[0, 0, 0]
    return div(2 * cube_A(z), z0 * z0) - z[1, 1, 1]


class KhexStep(NamedTuple):
    upper: Tuple[Scalar, Scalar, Scalar]
    top: Scalar


def khex_step(seven: Mapping[Point, Scalar], lower: Tuple[Scalar, Scalar, Scalar]) -> KhexStep:
    """Upper faces and top corner from the lower corners and lower faces."""
    z0 = seven[0, 0, 0]
    if z0 == 0:
        raise ZeroBaseVertex("base vertex value is zero")
    f1, f2, f3 = lower
    u1 = div(f2 * f3 + f1 * seven[1, 0, 0], z0)
    u2 = div(f1 * f3 + f2 * seven[0, 1, 0], z0)
    u3 = div(f1 * f2 + f3 * seven[0, 0, 1], z0)
    top = div(cube_A(seven) + 2 * f1 * f2 * f3, z0 * z0)
    return KhexStep((u1, u2, u3), top)


# -- fields -----------------------------------------------------------------


@dataclass
class VertexField3:
    """Values on a finite set of points of Z^3.

    The window is the bounding box of the points.  Points of the box
    without a value are simply outside the domain.
    """

    values: Dict[Point, Scalar]

    def __post_init__(self):
        self.values = {tuple(p): v for p, v in self.values.items()}
        if not self.values:
            raise ValueError("empty field")

    @classmethod
    def from_function(cls, lo: Point, hi: Point, fn: Callable[[Point], Scalar]):
        pts = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        return cls({p: fn(p) for p in pts})

    @property
    def window(self) -> Tuple[Point, Point]:
        pts = self.values.keys()
        lo = tuple(min(p[i] for p in pts) for i in range(3))
        hi = tuple(max(p[i] for p in pts) for i in range(3))
        return lo, hi

    @property
    def mode(self) -> str:
        return common_mode(self.values.values())

    def __getitem__(self, p: Point) -> Scalar:
        return self.values[p]

    def __contains__(self, p) -> bool:
        return p in self.values

    def points(self) -> List[Point]:
        return sorted(self.values)

    def to_mode(self, mode: str) -> "VertexField3":
        return VertexField3({p: coerce(v, mode) for p, v in self.values.items()})

    def cube(self, base: Point) -> CubeView:
        try:
            z = {c: self.values[add(base, c)] for c in CORNERS}
        except KeyError as exc:
            raise NeighborhoodIncomplete(f"cube at {base} leaves the domain") from exc
        return CubeView(z, None, base)

    def has_cube(self, base: Point) -> bool:
        return all(add(base, c) in self.values for c in CORNERS)

    def cube_bases(self) -> List[Point]:
        """Bases of all cubes whose eight corners carry values, by height."""
        out = [p for p in self.values if self.has_cube(p)]
        return sorted(out, key=lambda p: (height(p), p))

    def has_face(self, key: FaceKey) -> bool:
        return all(q in self.values for q in face_corners(*key))

    def face_keys(self) -> List[FaceKey]:
        return sorted(
            (a, p) for p in self.values for a in AXES if self.has_face((a, p))
        )

    def face_expression(self, key: FaceKey) -> Scalar:
        v1, v2, v3, v4 = (self.values[q] for q in face_corners(*key))
        return v1 * v3 + v2 * v4

    def is_interior(self, v: Point) -> bool:
        return all(
            add(v, d) in self.values for d in itertools.product((-1, 0, 1), repeat=3)
        )

    def interior_points(self) -> List[Point]:
        return [p for p in self.points() if self.is_interior(p)]


@dataclass
class KHexField3:
    """Vertex values plus face values keyed by ``(axis, base)``."""

    vertices: VertexField3
    faces: Dict[FaceKey, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.vertices, VertexField3):
            self.vertices = VertexField3(dict(self.vertices))
        self.faces = {(a, tuple(p)): v for (a, p), v in self.faces.items()}

    @property
    def window(self):
        return self.vertices.window

    @property
    def mode(self) -> str:
        if self.vertices.mode == FLOAT:
            return FLOAT
        return common_mode(self.faces.values())

    def cube(self, base: Point) -> CubeView:
        view = self.vertices.cube(base)
        keys = cube_faces(base)
        try:
            faces = {k: self.faces[f] for k, f in keys.items()}
        except KeyError as exc:
            raise NeighborhoodIncomplete(f"cube at {base} lacks a face value") from exc
        return CubeView(view.z, faces, base)

    def has_cube(self, base: Point) -> bool:
        return self.vertices.has_cube(base) and all(
            f in self.faces for f in cube_faces(base).values()
        )

    def cube_bases(self) -> List[Point]:
        return [b for b in self.vertices.cube_bases() if self.has_cube(b)]


# -- checks -----------------------------------------------------------------


def check_kashaev(
    field: VertexField3,
    ctx: ToleranceContext = DEFAULT_TOLERANCE,
    bases: Optional[Iterable[Point]] = None,
) -> Report:
    """Report every complete cube on which the Kashaev equation fails.

    ``bases`` restricts the check to some of the cubes.
    """
    rep = Report(mode=field.mode)
    for b in field.cube_bases() if bases is None else bases:
        lhs, rhs = kashaev_sides(field.cube(b))
        rep.compare("kashaev", b, lhs, rhs, ctx)
    return rep


def neighborhood_cubes(v: Point) -> List[Tuple[Point, Point]]:
    """``(base, corner)`` for the 8 cubes at ``v``; ``corner`` locates ``v``."""
    out = []
    for signs in itertools.product((1, -1), repeat=3):
        corner = tuple(0 if s == 1 else 1 for s in signs)
        out.append((sub(v, corner), corner, signs))
    return out


def neighborhood_square_expressions(field: VertexField3, v: Point) -> List[Scalar]:
    """``x_v x_opp + x_1 x_2`` for the 12 unit squares containing ``v``."""
    out = []
    x = field.values
    for i, j in ((1, 2), (1, 3), (2, 3)):
        ei, ej = unit(i), unit(j)
        for si in (1, -1):
            for sj in (1, -1):
                di = tuple(si * c for c in ei)
                dj = tuple(sj * c for c in ej)
                out.append(x[v] * x[add(add(v, di), dj)] + x[add(v, di)] * x[add(v, dj)])
    return out


class Coherence(NamedTuple):
    lhs: Scalar
    rhs: Scalar
    ok: bool
    even: Scalar
    odd: Scalar
    split_ok: bool


def check_coherence(
    field: VertexField3, v: Point, ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> Coherence:
    """Compare the product of the eight corner quantities at ``v`` with the
    product of the twelve square expressions around ``v``."""
    v = tuple(v)
    if not field.is_interior(v):
        raise NeighborhoodIncomplete(f"{v} lacks a full 3x3x3 neighbourhood")
    even, odd = 1, 1
    for base, corner, signs in neighborhood_cubes(v):
        kv = kashaev_Kv(field.cube(base), corner)
        if signs[0] * signs[1] * signs[2] == 1:
            even = even * kv
        else:
            odd = odd * kv
    lhs = even * odd
    rhs = prod(neighborhood_square_expressions(field, v))
    return Coherence(lhs, rhs, loose_eq(lhs, rhs, ctx), even, odd, loose_eq(even, odd, ctx))


def coherence_report(
    field: VertexField3,
    ctx: ToleranceContext = DEFAULT_TOLERANCE,
    points: Optional[Iterable[Point]] = None,
) -> Report:
    rep = Report(mode=field.mode)
    for v in field.interior_points() if points is None else points:
        res = check_coherence(field, v, ctx)
        if not res.ok:
            rep.add("coherence", v, res.lhs, res.rhs)
    return rep


def check_khex(field: KHexField3, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Report:
    """Verify the face condition on every face and the four cube equations
    on every complete cube."""
    x = field.vertices
    for p, val in x.values.items():
        if val == 0:
            raise ZeroVertexValue(f"vertex {p} has value zero")
    rep = Report(mode=field.mode)
    for key in sorted(field.faces):
        if not x.has_face(key):
            continue
        s = field.faces[key]
        rep.compare("face-condition", key, s * s, x.face_expression(key), ctx)
    for b in field.cube_bases():
        cube = field.cube(b)
        lower = tuple(cube.faces[(a, 0)] for a in AXES)
        step = khex_step(cube.z, lower)
        for a, u in zip(AXES, step.upper):
            rep.compare(f"khex-face-{a}", b, cube.faces[(a, 1)], u, ctx)
        rep.compare("khex-top", b, cube.z[1, 1, 1], step.top, ctx)
    return rep


# -- recurrences ------------------------------------------------------------


def run_positive_kashaev(init: VertexField3, steps: int) -> VertexField3:
    """Fill ``steps`` further heights, always choosing the larger root.

    A point at height ``h`` is filled when the seven other corners of the
    cube below it are already known.
    """
    values = {p: float(v) for p, v in init.values.items()}
    for v in values.values():
        if not v > 0:
            raise ValueError("positive recurrence needs positive initial values")
    start = max(height(p) for p in values) + 1
    for h in range(start, start + steps):
        bases = [p for p in values if height(p) == h - 3]
        for b in sorted(bases):
            top = add(b, (1, 1, 1))
            seven = {}
            for c in CORNERS[:-1]:
                q = add(b, c)
                if q not in values:
                    break
                seven[c] = values[q]
            else:
                values[top] = cube_roots(seven).plus
    return VertexField3(values)


def positive_slab(size: int, fn: Callable[[Point], float]) -> VertexField3:
    """Heights 0, 1, 2 over a ``size x size`` transverse square.

    The point at height ``h`` with transverse coordinates ``(i, j)`` is
    ``(i, j, h - i - j)``.
    """
    vals = {}
    for h in range(3):
        for i in range(size):
            for j in range(size):
                p = (i, j, h - i - j)
                vals[p] = fn(p)
    return VertexField3(vals)


# -- extension --------------------------------------------------------------


def _check_nonzero(field: VertexField3, ctx: ToleranceContext):
    for p, v in field.values.items():
        if is_zero(v, ctx if not is_exact(v) else None):
            raise ZeroVertexValue(f"vertex {p} has value zero")


def extend_to_khex(field: VertexField3, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> KHexField3:
    """Extend a coherent Kashaev solution to face values.

    Faces not produced by any cube of the domain take principal square
    roots.  Cubes are swept by height; when a whole height disagrees with
    the given tops, a GF(2) system picks a set of face lines whose sign
    change corrects exactly the mismatched cubes, keeping lower cubes.
    """
    _check_nonzero(field, ctx)
    bad = check_kashaev(field, ctx)
    if not bad.ok:
        raise NotCoherent(f"Kashaev equation fails on cube {bad.findings[0].location}")
    bad = coherence_report(field, ctx)
    if not bad.ok:
        raise NotCoherent(f"coherence fails at {bad.findings[0].location}")

    x = field.values
    for key in field.face_keys():
        e = field.face_expression(key)
        if is_zero(e, None if is_exact(e) else ctx):
            raise ZeroFaceExpression(f"face {key} has zero expression")

    bases = field.cube_bases()
    base_set = set(bases)
    faces: Dict[FaceKey, Scalar] = {}
    segment: Dict[FaceKey, int] = {}
    nseg = 0
    for key in field.face_keys():
        a, p = key
        if sub(p, unit(a)) not in base_set:
            faces[key] = sqrt_principal(field.face_expression(key))
            segment[key] = nseg
            nseg += 1

    def psi_row(b):
        r = 0
        for a in AXES:
            r ^= 1 << segment[(a, b)]
        return r

    by_height: Dict[int, List[Point]] = {}
    for b in bases:
        by_height.setdefault(height(b), []).append(b)
    done: List[Point] = []
    for h in sorted(by_height):
        level = by_height[h]
        mismatched = []
        for b in level:
            z = field.cube(b).z
            lower = tuple(faces[(a, b)] for a in AXES)
            pred = khex_step(z, lower).top
            if loose_eq(pred, z[1, 1, 1], ctx):
                continue
            alt = div(2 * cube_A(z), z[0, 0, 0] ** 2) - pred
            if not loose_eq(alt, z[1, 1, 1], ctx):
                raise NonConvergent(f"cube {b}: neither root matches the given top")
            mismatched.append(b)
        if mismatched:
            flagged = set(mismatched)
            rows = [psi_row(b) for b in done] + [psi_row(b) for b in level]
            rhs = [0] * len(done) + [int(b in flagged) for b in level]
            t = gf2.solve(rows, rhs)
            if t is None:
                raise NotCoherent(f"no sign change repairs height {h} (cube {mismatched[0]})")
            for key in faces:
                if (t >> segment[key]) & 1:
                    faces[key] = -faces[key]
        for b in level:
            z = field.cube(b).z
            lower = tuple(faces[(a, b)] for a in AXES)
            step = khex_step(z, lower)
            for a, u in zip(AXES, step.upper):
                up = (a, add(b, unit(a)))
                faces[up] = u
                segment[up] = segment[(a, b)]
        done.extend(level)
    return KHexField3(VertexField3(dict(x)), faces)


def sweep_khex(field: KHexField3, bases: Optional[Iterable[Point]] = None) -> KHexField3:
    """Fill tops and upper faces of the given cubes (default: every cube
    whose lower data is available), in order of height."""
    verts = dict(field.vertices.values)
    faces = dict(field.faces)
    if bases is None:
        todo = sorted(
            (p for p in verts), key=lambda p: (height(p), p)
        )
    else:
        todo = sorted(bases, key=lambda p: (height(p), p))
    for b in todo:
        try:
            seven = {c: verts[add(b, c)] for c in CORNERS[:-1]}
            lower = tuple(faces[(a, b)] for a in AXES)
        except KeyError:
            if bases is None:
                continue
            raise NeighborhoodIncomplete(f"cube at {b} lacks lower data")
        step = khex_step(seven, lower)
        verts[add(b, (1, 1, 1))] = step.top
        for a, u in zip(AXES, step.upper):
            faces[(a, add(b, unit(a)))] = u
    return KHexField3(VertexField3(verts), faces)


def random_khex_box(size: int, draw: Callable[[], Scalar], tries: int = 100) -> KHexField3:
    """A K-hexahedron field on ``[0, size-1]^3`` from random wall data.

    ``draw`` returns random nonzero scalars.  Vertices on the three
    coordinate axes and all faces lying in the walls ``x_a = 0`` are drawn;
    wall corners are solved from the face condition, then the cubes are
    swept.  Draws leading to zero values are retried.
    """
    n = size
    for _ in range(tries):
        try:
            verts: Dict[Point, Scalar] = {}
            faces: Dict[FaceKey, Scalar] = {}
            for a in AXES:
                for k in range(n):
                    p = tuple(k * c for c in unit(a))
                    if p not in verts:
                        verts[p] = draw()
            for a in AXES:
                i, j = [b for b in AXES if b != a]
                for s in range(n - 1):
                    for t in range(n - 1):
                        base = [0, 0, 0]
                        base[i - 1], base[j - 1] = s, t
                        key = (a, tuple(base))
                        v1, v2, v3, v4 = face_corners(*key)
                        if key not in faces:
                            faces[key] = draw()
                        if v3 not in verts:
                            f = faces[key]
                            if verts[v1] == 0:
                                raise ZeroBaseVertex("zero wall vertex")
                            verts[v3] = div(f * f - verts[v2] * verts[v4], verts[v1])
                        if verts[v3] == 0:
                            raise ZeroBaseVertex("zero wall vertex")
            bases = list(itertools.product(range(n - 1), repeat=3))
            out = sweep_khex(KHexField3(VertexField3(verts), faces), bases)
            if any(v == 0 for v in out.vertices.values.values()):
                continue
            if any(v == 0 for v in out.faces.values()):
                continue
            return out
        except ZeroDivisionError:
            continue
    raise ValueError("could not draw a nondegenerate field")


# -- gauges and reversal ----------------------------------------------------


class Gauge(NamedTuple):
    alpha: Dict[int, int]
    beta: Dict[int, int]
    gamma: Dict[int, int]


def _sign(seq, i) -> int:
    if seq is None:
        return 1
    if callable(seq):
        return seq(i)
    return seq.get(i, 1)


def gauge_factor(key: FaceKey, alpha, beta, gamma) -> int:
    a, (i, j, k) = key
    if a == 1:
        return _sign(beta, j) * _sign(gamma, k)
    if a == 2:
        return _sign(alpha, i) * _sign(gamma, k)
    return _sign(alpha, i) * _sign(beta, j)


def gauge_transform(field: KHexField3, alpha=None, beta=None, gamma=None) -> KHexField3:
    """Multiply face values by the coordinate-line signs of the gauge."""
    faces = {k: gauge_factor(k, alpha, beta, gamma) * v for k, v in field.faces.items()}
    return KHexField3(VertexField3(dict(field.vertices.values)), faces)


class GaugeComparison(NamedTuple):
    gauge: Optional[Gauge]
    witness: Optional[dict]


def gauge_compare(
    f1: KHexField3, f2: KHexField3, ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> GaugeComparison:
    """Find coordinate-line signs carrying ``f1`` to ``f2``.

    Returns the gauge, or ``None`` with a witness: a face whose values are
    not equal up to sign, or a cube whose face-sign pattern no gauge can
    produce.
    """
    v1, v2 = f1.vertices.values, f2.vertices.values
    if set(v1) != set(v2) or any(not loose_eq(v1[p], v2[p], ctx) for p in v1):
        raise VertexMismatch("fields differ on vertices")
    if set(f1.faces) != set(f2.faces):
        raise VertexMismatch("fields have different face sets")
    ratio: Dict[FaceKey, int] = {}
    for key in sorted(f1.faces):
        a, b = f1.faces[key], f2.faces[key]
        if loose_eq(a, b, ctx):
            ratio[key] = 0
        elif loose_eq(a, -b, ctx):
            ratio[key] = 1
        else:
            return GaugeComparison(None, {"kind": "face", "face": key})
    # unknowns: alpha, beta, gamma per coordinate, as bit positions
    coords = sorted({c for (_, p) in ratio for c in p})
    index = {}
    for name in range(3):
        for c in coords:
            index[(name, c)] = len(index)
    rows, rhs = [], []
    for (a, p), r in sorted(ratio.items()):
        i, j = [n for n in range(3) if n != a - 1]
        rows.append((1 << index[(i, p[i])]) | (1 << index[(j, p[j])]))
        rhs.append(r)
    sol = gf2.solve(rows, rhs)
    if sol is not None:
        seqs = [{}, {}, {}]
        for (name, c), bit in index.items():
            seqs[name][c] = -1 if (sol >> bit) & 1 else 1
        return GaugeComparison(Gauge(*seqs), None)
    return GaugeComparison(None, _gauge_obstruction(f1, ratio))


def _gauge_obstruction(f1: KHexField3, ratio: Dict[FaceKey, int]) -> dict:
    for b in f1.cube_bases():
        keys = cube_faces(b)
        for a in AXES:
            if ratio[keys[(a, 0)]] != ratio[keys[(a, 1)]]:
                return {"kind": "cube", "cube": b, "axis": a, "reason": "opposite faces"}
        if ratio[keys[(1, 0)]] ^ ratio[keys[(2, 0)]] ^ ratio[keys[(3, 0)]]:
            return {"kind": "cube", "cube": b, "reason": "lower face parity"}
    return {"kind": "system", "reason": "face signs are not a coordinate-line product"}


def reverse_point(p: Point) -> Point:
    return (-p[0], -p[1], -p[2])


def reverse_face(key: FaceKey) -> FaceKey:
    a, p = key
    return (a, reverse_point(sub(add(p, (1, 1, 1)), unit(a))))


def reverse_field(field):
    """Point reflection ``s -> -s`` of a vertex field or K-hexahedron field."""
    if isinstance(field, VertexField3):
        return VertexField3({reverse_point(p): v for p, v in field.values.items()})
    verts = reverse_field(field.vertices)
    faces = {reverse_face(k): v for k, v in field.faces.items()}
    return KHexField3(verts, faces)
