"""Directed cubical complexes built from piles, and checks on them.

Vertices are integer ids.  A square is a cyclic 4-tuple of vertex ids.  A
cube records its eight vertices, its six squares and its top vertex; the
bottom vertex is the one opposite the top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from . import gf2
from .errors import (
    InvalidComplex,
    MissingValue,
    NonConvergent,
    NotComfortable,
    NotCoherent,
    ZeroFaceExpression,
    ZeroVertexValue,
)
from .kashaev3d import CORNERS, CubeView, cube_A, kashaev_Kv, kashaev_sides, khex_step
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
from .tilings import Pile, bit, boundary_labels

Square = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Cube:
    verts: Tuple[int, ...]
    top: int
    bottom: int
    squares: Tuple[int, ...]
    frame: Mapping[Tuple[int, int, int], int]
    """Vertex id at each corner label, with the bottom at ``000``."""
    face_frame: Mapping[Tuple[int, int], int]
    """Square index at ``(axis, side)``; side 0 squares contain the bottom."""

    def corner_of(self, v: int) -> Tuple[int, int, int]:
        for c, u in self.frame.items():
            if u == v:
                return c
        raise KeyError(v)

    def lower_squares(self) -> Tuple[int, int, int]:
        return tuple(self.face_frame[(a, 0)] for a in (1, 2, 3))

    def upper_squares(self) -> Tuple[int, int, int]:
        return tuple(self.face_frame[(a, 1)] for a in (1, 2, 3))


@dataclass
class DirectedComplex:
    vertices: List[int]
    squares: List[Square]
    cubes: List[Cube]
    interior: FrozenSet[int]
    labels: Dict[int, int] = field(default_factory=dict)
    initial_vertices: FrozenSet[int] = frozenset()
    initial_squares: Tuple[int, ...] = ()

    def __post_init__(self):
        self._square_index = {frozenset(s): k for k, s in enumerate(self.squares)}

    def square_index(self, verts: Iterable[int]) -> int:
        return self._square_index[frozenset(verts)]

    def squares_at(self, v: int) -> List[int]:
        return [k for k, s in enumerate(self.squares) if v in s]

    def cubes_at(self, v: int) -> List[int]:
        return [k for k, c in enumerate(self.cubes) if v in c.verts]

    def label_of(self, v: int) -> int:
        return self.labels[v]


# -- construction -----------------------------------------------------------


def _make_cube(verts, top, squares: List[Square], square_ids: List[int], labels) -> Cube:
    """Orient a cube: bottom opposite top, corners read off its squares."""
    if len(square_ids) != 6:
        raise InvalidComplex(f"cube {sorted(verts)} has {len(square_ids)} squares, expected 6")
    sq = {k: squares[k] for k in square_ids}
    pairs = []
    used = set()
    for a in square_ids:
        if a in used:
            continue
        opp = [b for b in square_ids if b != a and b not in used and not set(sq[a]) & set(sq[b])]
        if len(opp) != 1:
            raise InvalidComplex(f"cube {sorted(verts)}: squares do not pair up")
        used.update((a, opp[0]))
        pairs.append((a, opp[0]))
    nbrs: Dict[int, set] = {v: set() for v in verts}
    for s in sq.values():
        for u, w in zip(s, s[1:] + s[:1]):
            nbrs[u].add(w)
            nbrs[w].add(u)
    if top not in nbrs:
        raise InvalidComplex(f"top {top} is not a vertex of its cube")
    reach = {top} | nbrs[top]
    reach = reach.union(*(nbrs[w] for w in nbrs[top]))
    far = [v for v in verts if v not in reach]
    if len(far) != 1:
        raise InvalidComplex(f"cube {sorted(verts)}: no vertex opposite the top")
    bottom = far[0]

    def key(v):
        return (labels.get(v, 0), v)

    n1, n2, n3 = sorted(nbrs[bottom], key=key)

    def common(a, b):
        c = (nbrs[a] & nbrs[b]) - {bottom}
        if len(c) != 1:
            raise InvalidComplex(f"cube {sorted(verts)} is not a combinatorial cube")
        return c.pop()

    frame = {
        (0, 0, 0): bottom,
        (1, 0, 0): n1,
        (0, 1, 0): n2,
        (0, 0, 1): n3,
        (1, 1, 0): common(n1, n2),
        (1, 0, 1): common(n1, n3),
        (0, 1, 1): common(n2, n3),
        (1, 1, 1): top,
    }
    if len(set(frame.values())) != 8:
        raise InvalidComplex(f"cube {sorted(verts)} is not a combinatorial cube")
    face_frame = {}
    for a in (1, 2, 3):
        for side in (0, 1):
            corners = {frame[c] for c in CORNERS if c[a - 1] == side}
            match = [k for k in square_ids if set(sq[k]) == corners]
            if len(match) != 1:
                raise InvalidComplex(f"cube {sorted(verts)}: missing face")
            face_frame[(a, side)] = match[0]
    return Cube(tuple(sorted(verts)), top, bottom, tuple(sorted(square_ids)), frame, face_frame)


def build_complex(p: Pile) -> DirectedComplex:
    """One cube per flip.  A label keeps its vertex id while it persists in
    the tilings; a label that disappears and returns gets a fresh id."""
    n = p.n
    current: Dict[int, int] = {}
    labels: Dict[int, int] = {}
    squares: List[Square] = []
    square_ids: Dict[FrozenSet[int], int] = {}

    def vertex(label):
        if label not in current:
            vid = len(labels)
            current[label] = vid
            labels[vid] = label
        return current[label]

    def add_square(labs):
        vs = tuple(vertex(lab) for lab in labs)
        key = frozenset(vs)
        if key not in square_ids:
            square_ids[key] = len(squares)
            squares.append(vs)
        return square_ids[key]

    t = p.start
    for (i, j) in t.tiles():
        add_square(t.tile_labels(i, j))
    initial_vertices = frozenset(current.values())
    initial_squares = tuple(range(len(squares)))
    cubes = []
    for step, t_next in zip(p.steps, p.tilings()[1:]):
        i, j, k = step.triple
        I = step.base
        hexagon = [I | m for m in (0, bit(i), bit(j), bit(k), bit(i) | bit(j), bit(i) | bit(k), bit(j) | bit(k), bit(i) | bit(j) | bit(k))]
        if step.removed not in current:
            raise ValueError("pile step removes an unknown vertex")
        old = [vertex(lab) for lab in hexagon if lab != step.added]
        before = [add_square(t.tile_labels(a, b)) for a, b in ((i, j), (i, k), (j, k))]
        del current[step.removed]
        top = vertex(step.added)
        after = [add_square(t_next.tile_labels(a, b)) for a, b in ((i, j), (i, k), (j, k))]
        cubes.append(_make_cube(old + [top], top, squares, before + after, labels))
        t = t_next
    final_vertices = set(current.values())
    bnd = boundary_labels(n)
    interior = frozenset(
        v for v, lab in labels.items()
        if v not in initial_vertices and v not in final_vertices and lab not in bnd
    )
    return DirectedComplex(
        list(labels), squares, cubes, interior, labels, initial_vertices, initial_squares
    )


def complex_from_parts(
    vertices: Sequence[int],
    squares: Sequence[Sequence[int]],
    cubes: Sequence[Tuple[Sequence[int], int]],
    interior: Iterable[int],
    labels: Optional[Mapping[int, int]] = None,
) -> DirectedComplex:
    """A complex given explicitly; each cube is ``(eight vertices, top)``."""
    labels = dict(labels or {})
    vset = set(vertices)
    sq = [tuple(s) for s in squares]
    for s in sq:
        if len(s) != 4 or len(set(s)) != 4 or not set(s) <= vset:
            raise InvalidComplex(f"bad square {s}")
    index = {frozenset(s): k for k, s in enumerate(sq)}
    if len(index) != len(sq):
        raise InvalidComplex("duplicate squares")
    out = []
    for verts, top in cubes:
        verts = tuple(verts)
        if len(set(verts)) != 8 or not set(verts) <= vset:
            raise InvalidComplex(f"bad cube {verts}")
        ids = [k for key, k in index.items() if key <= set(verts)]
        out.append(_make_cube(verts, top, sq, ids, labels))
    interior = frozenset(interior)
    if not interior <= vset:
        raise InvalidComplex("interior vertex not in the complex")
    return DirectedComplex(list(vertices), sq, out, interior, labels)


# -- checks -----------------------------------------------------------------


def _values_for(c: DirectedComplex, values: Mapping[int, Scalar], verts: Iterable[int]):
    try:
        return {v: values[v] for v in verts}
    except KeyError as exc:
        raise MissingValue(f"vertex {exc.args[0]} has no value") from exc


def cube_view(cube: Cube, values: Mapping[int, Scalar]) -> CubeView:
    try:
        return CubeView({c: values[v] for c, v in cube.frame.items()})
    except KeyError as exc:
        raise MissingValue(f"vertex {exc.args[0]} has no value") from exc


def square_expression(s: Square, values: Mapping[int, Scalar]) -> Scalar:
    a, b, c, d = (values[v] for v in s)
    return a * c + b * d


def square_expression_at(s: Square, v: int, values: Mapping[int, Scalar]) -> Scalar:
    """``x_v x_opp + x_1 x_2`` with ``v`` paired with its opposite corner."""
    k = s.index(v)
    r = s[k:] + s[:k]
    return values[r[0]] * values[r[2]] + values[r[1]] * values[r[3]]


def check_complex_kashaev(
    c: DirectedComplex, values: Mapping[int, Scalar], ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> Report:
    _values_for(c, values, c.vertices)
    rep = Report(mode=common_mode(values[v] for v in c.vertices))
    for k, cube in enumerate(c.cubes):
        lhs, rhs = kashaev_sides(cube_view(cube, values))
        rep.compare("kashaev", k, lhs, rhs, ctx)
    return rep


class VertexCoherence(NamedTuple):
    lhs: Scalar
    rhs: Scalar
    ok: bool


def vertex_coherence(
    c: DirectedComplex, values: Mapping[int, Scalar], v: int, ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> VertexCoherence:
    lhs = prod(kashaev_Kv(cube_view(c.cubes[k], values), c.cubes[k].corner_of(v)) for k in c.cubes_at(v))
    rhs = prod(square_expression_at(c.squares[k], v, values) for k in c.squares_at(v))
    return VertexCoherence(lhs, rhs, loose_eq(lhs, rhs, ctx))


def check_complex_coherence(
    c: DirectedComplex, values: Mapping[int, Scalar], ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> Report:
    """Compare both coherence products at every interior vertex.

    Vertices where both products vanish pass but are listed under
    ``extra["degenerate"]``.
    """
    _values_for(c, values, c.vertices)
    rep = Report(mode=common_mode(values[v] for v in c.vertices))
    degenerate = []
    for v in sorted(c.interior):
        res = vertex_coherence(c, values, v, ctx)
        if not res.ok:
            rep.add("coherence", v, res.lhs, res.rhs)
        elif is_zero(res.lhs) and is_zero(res.rhs):
            degenerate.append(v)
    if degenerate:
        rep.extra["degenerate"] = degenerate
    return rep


def check_complex_khex(
    c: DirectedComplex,
    values: Mapping[int, Scalar],
    faces: Mapping[int, Scalar],
    ctx: ToleranceContext = DEFAULT_TOLERANCE,
) -> Report:
    """Face condition on every square with a value, and the four cube
    equations, read in each cube's own direction."""
    _values_for(c, values, c.vertices)
    for v in c.vertices:
        if values[v] == 0:
            raise ZeroVertexValue(f"vertex {v} has value zero")
    allv = [values[v] for v in c.vertices] + list(faces.values())
    rep = Report(mode=common_mode(allv))
    for k in sorted(faces):
        s = faces[k]
        rep.compare("face-condition", k, s * s, square_expression(c.squares[k], values), ctx)
    for k, cube in enumerate(c.cubes):
        try:
            lower = tuple(faces[q] for q in cube.lower_squares())
            upper = tuple(faces[q] for q in cube.upper_squares())
        except KeyError as exc:
            raise MissingValue(f"square {exc.args[0]} has no value") from exc
        z = cube_view(cube, values).z
        step = khex_step(z, lower)
        for a, u, want in zip((1, 2, 3), step.upper, upper):
            rep.compare(f"khex-face-{a}", k, want, u, ctx)
        rep.compare("khex-top", k, z[1, 1, 1], step.top, ctx)
    return rep


# -- sign classes and comfortableness ---------------------------------------


def face_classes(c: DirectedComplex) -> List[int]:
    """Class id per square: opposite squares of a cube share a class."""
    parent = list(range(len(c.squares)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for cube in c.cubes:
        for a in (1, 2, 3):
            x, y = find(cube.face_frame[(a, 0)]), find(cube.face_frame[(a, 1)])
            if x != y:
                parent[max(x, y)] = min(x, y)
    roots = [find(k) for k in range(len(c.squares))]
    relabel: Dict[int, int] = {}
    return [relabel.setdefault(r, len(relabel)) for r in roots]


def psi_rows(c: DirectedComplex, classes: Optional[List[int]] = None) -> List[int]:
    """Per cube, the GF(2) row of classes meeting it (mod 2)."""
    classes = classes if classes is not None else face_classes(c)
    rows = []
    for cube in c.cubes:
        r = 0
        for q in cube.lower_squares():
            r ^= 1 << classes[q]
        rows.append(r)
    return rows


def interior_rows(c: DirectedComplex) -> List[int]:
    """Per interior vertex, the GF(2) row of cubes containing it."""
    rows = []
    for v in sorted(c.interior):
        r = 0
        for k in c.cubes_at(v):
            r |= 1 << k
        rows.append(r)
    return rows


class Comfort(NamedTuple):
    comfortable: bool
    dim_image_psi: int
    dim_c2: int
    image_in_c2: bool


def _transpose(rows: List[int], ncols: int) -> List[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        for j in gf2.bits(r):
            cols[j] |= 1 << i
    return cols


def is_comfortable(c: DirectedComplex) -> Comfort:
    """Compare the image of the class-to-cube sign map with the space of
    cube signs whose product around every interior vertex is trivial."""
    classes = face_classes(c)
    rows = psi_rows(c, classes)
    ncls = max(classes) + 1 if classes else 0
    cols = _transpose(rows, ncls)
    inc = interior_rows(c)
    dim_image = gf2.rank(cols)
    dim_c2 = len(c.cubes) - gf2.rank(inc)
    contained = all(gf2.parity(col & r) == 0 for col in cols for r in inc)
    return Comfort(contained and dim_image == dim_c2, dim_image, dim_c2, contained)


# -- extension --------------------------------------------------------------


def _sweep_order(c: DirectedComplex) -> List[int]:
    """Cube order in which every lower square is known before it is used."""
    produced = {}
    for k, cube in enumerate(c.cubes):
        for q in cube.upper_squares():
            produced[q] = k
    deps = {k: {produced[q] for q in cube.lower_squares() if q in produced} for k, cube in enumerate(c.cubes)}
    order, done = [], set()
    pending = list(range(len(c.cubes)))
    while pending:
        ready = [k for k in pending if deps[k] <= done]
        if not ready:
            raise InvalidComplex("cube directions contain a cycle")
        k = ready[0]
        order.append(k)
        done.add(k)
        pending.remove(k)
    return order


def free_squares(c: DirectedComplex) -> List[int]:
    """Squares that are not the upper face of any cube."""
    produced = {q for cube in c.cubes for q in cube.upper_squares()}
    return [k for k in range(len(c.squares)) if k not in produced]


def sweep_complex_khex(
    c: DirectedComplex, values: Mapping[int, Scalar], faces: Mapping[int, Scalar]
) -> Tuple[Dict[int, Scalar], Dict[int, Scalar]]:
    """Propagate initial vertex and face values through every cube."""
    vals = dict(values)
    fcs = dict(faces)
    for k in _sweep_order(c):
        cube = c.cubes[k]
        z = {corner: vals[v] for corner, v in cube.frame.items() if corner != (1, 1, 1)}
        step = khex_step(z, tuple(fcs[q] for q in cube.lower_squares()))
        vals[cube.top] = step.top
        for q, u in zip(cube.upper_squares(), step.upper):
            fcs[q] = u
    return vals, fcs


def extend_on_complex(
    c: DirectedComplex, values: Mapping[int, Scalar], ctx: ToleranceContext = DEFAULT_TOLERANCE
) -> Dict[int, Scalar]:
    """Face values extending a coherent solution on the complex.

    Free squares take principal square roots.  Cubes are swept in order;
    a cube whose top disagrees is repaired by flipping a set of face
    classes that leaves all earlier cubes unchanged.
    """
    _values_for(c, values, c.vertices)
    for v in c.vertices:
        if is_zero(values[v], None if is_exact(values[v]) else ctx):
            raise ZeroVertexValue(f"vertex {v} has value zero")
    bad = check_complex_kashaev(c, values, ctx)
    if not bad.ok:
        raise NotCoherent(f"Kashaev equation fails on cube {bad.findings[0].location}")
    bad = check_complex_coherence(c, values, ctx)
    if not bad.ok:
        raise NotCoherent(f"coherence fails at vertex {bad.findings[0].location}")
    for k, s in enumerate(c.squares):
        e = square_expression(s, values)
        if is_zero(e, None if is_exact(e) else ctx):
            raise ZeroFaceExpression(f"square {k} has zero expression")

    classes = face_classes(c)
    rows = psi_rows(c, classes)
    faces: Dict[int, Scalar] = {k: sqrt_principal(square_expression(c.squares[k], values)) for k in free_squares(c)}
    done: List[int] = []
    for k in _sweep_order(c):
        cube = c.cubes[k]
        z = cube_view(cube, values).z
        lower = tuple(faces[q] for q in cube.lower_squares())
        pred = khex_step(z, lower).top
        if not loose_eq(pred, z[1, 1, 1], ctx):
            alt = div(2 * cube_A(z), z[0, 0, 0] ** 2) - pred
            if not loose_eq(alt, z[1, 1, 1], ctx):
                raise NonConvergent(f"cube {k}: neither root matches the given top")
            t = gf2.solve([rows[j] for j in done] + [rows[k]], [0] * len(done) + [1])
            if t is None:
                if not is_comfortable(c).comfortable:
                    raise NotComfortable(f"no face-class flip repairs cube {k}")
                raise NotCoherent(f"no face-class flip repairs cube {k}")
            for q in faces:
                if (t >> classes[q]) & 1:
                    faces[q] = -faces[q]
            lower = tuple(faces[q] for q in cube.lower_squares())
        step = khex_step(z, lower)
        for q, u in zip(cube.upper_squares(), step.upper):
            faces[q] = u
        done.append(k)
    return faces


def grid_complex(shape: Tuple[int, int, int], interior: Optional[Iterable] = None) -> DirectedComplex:
    """The block ``[0, a] x [0, b] x [0, c]`` of Z^3 as a complex, every cube
    directed along ``(1, 1, 1)``.  By default the interior is every vertex
    with all eight surrounding cubes present."""
    pts = list(itertools.product(*(range(s + 1) for s in shape)))
    vid = {p: k for k, p in enumerate(pts)}
    bases = list(itertools.product(*(range(s) for s in shape)))
    return _grid_like(vid, bases, interior)


def _grid_like(vid, bases, interior=None) -> DirectedComplex:
    squares: List[Square] = []
    seen = set()
    cubes = []

    def add(p, q):
        return tuple(a + b for a, b in zip(p, q))

    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for b in bases:
        for a in range(3):
            for side in (0, 1):
                base = add(b, units[a]) if side else b
                u, w = [units[x] for x in range(3) if x != a]
                sq = (base, add(base, u), add(add(base, u), w), add(base, w))
                key = frozenset(sq)
                if key not in seen:
                    seen.add(key)
                    squares.append(tuple(vid[p] for p in sq))
        verts = [vid[add(b, c)] for c in CORNERS]
        cubes.append((verts, vid[add(b, (1, 1, 1))]))
    used = sorted({v for verts, _ in cubes for v in verts})
    if interior is None:
        base_set = set(bases)
        interior = [
            vid[p] for p in vid
            if all(tuple(x - y for x, y in zip(p, c)) in base_set for c in CORNERS)
        ]
    else:
        interior = [vid[tuple(p)] if not isinstance(p, int) else p for p in interior]
    return complex_from_parts(used, squares, cubes, interior)


def grid_subcomplex(bases: Iterable[Tuple[int, int, int]], interior: Optional[Iterable] = None) -> DirectedComplex:
    """The union of the given unit cubes of Z^3."""
    bases = sorted(set(tuple(b) for b in bases))
    pts = sorted({tuple(x + y for x, y in zip(b, c)) for b in bases for c in CORNERS})
    vid = {p: k for k, p in enumerate(pts)}
    return _grid_like(vid, bases, interior)
