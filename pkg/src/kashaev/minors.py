"""Signed principal minors of symmetric matrices and the realizability test.

A minor tuple assigns a value to every subset ``I`` of ``[n]`` (a bit mask,
element ``i`` is bit ``i - 1``).  For a matrix the value is
``(-1)^floor(|I|/2) det M[I, I]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .complexes import DirectedComplex, build_complex
from .errors import (
    BadBase,
    DegenerateOffDiagonal,
    InexactSquareRoot,
    MissingMinor,
    NotRealizable,
    Ungeneric,
    UnlabeledVertex,
    ZeroMinor,
)
from .kashaev3d import CORNERS, CubeView, KHexField3, VertexField3, face_corners, kashaev_K, kashaev_Kv
from .scalars import (
    DEFAULT_TOLERANCE,
    FLOAT,
    Scalar,
    ToleranceContext,
    coerce,
    common_mode,
    div,
    is_exact,
    is_zero,
    loose_eq,
    prod,
    sqrt_principal,
)
from .tilings import Pile, bit, members

Matrix = List[List[Scalar]]


def determinant(m: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by Gaussian elimination; exact on rational entries."""
    n = len(m)
    if n == 0:
        return 1
    exact = all(is_exact(v) for row in m for v in row)
    a = [[Fraction(v) if exact else float(v) for v in row] for row in m]
    det = Fraction(1) if exact else 1.0
    for c in range(n):
        if exact:
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        else:
            piv = max(range(c, n), key=lambda r: abs(a[r][c]))
            if a[piv][c] == 0:
                piv = None
        if piv is None:
            return Fraction(0) if exact else 0.0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def submatrix(m: Sequence[Sequence[Scalar]], rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    """Rows and columns are 1-based indices."""
    return [[m[r - 1][c - 1] for c in cols] for r in rows]


def is_symmetric(m: Sequence[Sequence[Scalar]]) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i))


def popcount(x: int) -> int:
    return bin(x).count("1")


def principal_sign(size: int) -> int:
    return -1 if (size // 2) % 2 else 1


@dataclass
class MinorTuple:
    n: int
    entries: Dict[int, Scalar]

    def __post_init__(self):
        missing = [m for m in range(1 << self.n) if m not in self.entries]
        if missing:
            raise MissingMinor(f"no entry for subset mask {missing[0]}")

    def __getitem__(self, m: int) -> Scalar:
        return self.entries[m]

    @property
    def mode(self) -> str:
        return common_mode(self.entries.values())

    def replace(self, m: int, value: Scalar) -> "MinorTuple":
        e = dict(self.entries)
        e[m] = value
        return MinorTuple(self.n, e)


def signed_minor_tuple(m: Sequence[Sequence[Scalar]]) -> MinorTuple:
    n = len(m)
    entries = {}
    for s in range(1 << n):
        idx = members(s)
        entries[s] = principal_sign(len(idx)) * determinant(submatrix(m, idx, idx))
    entries[0] = Fraction(1) if all(is_exact(v) for row in m for v in row) else 1.0
    return MinorTuple(n, entries)


def odd_almost_principal(m: Sequence[Sequence[Scalar]], base: int, pair: Tuple[int, int]) -> Scalar:
    """Signed odd almost-principal minor for the tile ``(pair, base)``."""
    i, j = pair
    if base & (bit(i) | bit(j)):
        raise ValueError("tile base contains a pair element")
    size = popcount(base)
    if (i - j) * (-1) ** size < 0:
        i, j = j, i
    rows = sorted(members(base) + [i])
    cols = sorted(members(base) + [j])
    return principal_sign(size + 1) * determinant(submatrix(m, rows, cols))


# -- identities on tuples ---------------------------------------------------


def L_term(t: MinorTuple, I: int, pair: Tuple[int, int]) -> Scalar:
    i, j = pair
    if i == j:
        raise ValueError("pair elements must differ")
    bi, bj = bit(i), bit(j)
    return t[I] * t[I ^ bi ^ bj] + t[I ^ bi] * t[I ^ bj]


def minor_cube(t: MinorTuple, I: int, triple: Tuple[int, int, int]) -> CubeView:
    """Cube with corner ``(a, b, c)`` holding ``x`` at ``I`` xor the chosen elements."""
    i, j, k = triple
    z = {}
    for c in CORNERS:
        s = I
        for flag, e in zip(c, (i, j, k)):
            if flag:
                s ^= bit(e)
        z[c] = t[s]
    return CubeView(z)


class KTerms(NamedTuple):
    K: Scalar
    Kv: Scalar


def K_terms(t: MinorTuple, I: int, triple: Tuple[int, int, int]) -> KTerms:
    if len(set(triple)) != 3:
        raise ValueError("triple elements must be distinct")
    cube = minor_cube(t, I, triple)
    return KTerms(kashaev_K(cube), kashaev_Kv(cube, (0, 0, 0)))


def check_generic(t: MinorTuple, ctx: Optional[ToleranceContext] = None) -> None:
    """Raise Ungeneric if some ``L`` term vanishes."""
    for I in range(1 << t.n):
        for pair in itertools.combinations(range(1, t.n + 1), 2):
            val = L_term(t, I, pair)
            if is_zero(val, None if is_exact(val) else (ctx or DEFAULT_TOLERANCE)):
                raise Ungeneric(f"L vanishes at I={members(I)}, pair={pair}", witness=(I, pair))


class Realizability(NamedTuple):
    ok: bool
    certificate: Optional[dict]


def realizability_test(t: MinorTuple, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Realizability:
    """Decide whether a generic tuple is the signed minor tuple of a
    symmetric matrix, from the cube identities and the 4-subset products."""
    one = t[0]
    if not loose_eq(one, 1, ctx):
        raise BadBase(f"entry at the empty set is {one}, expected 1")
    check_generic(t, ctx)
    n = t.n
    sets = range(1 << n)
    for J in itertools.combinations(range(1, n + 1), 3):
        for I in sets:
            k = K_terms(t, I, J).K
            if not loose_eq(k, 0, ctx):
                return Realizability(False, {"kind": "kashaev", "I": I, "J": J, "value": k})
    for A in itertools.combinations(range(1, n + 1), 4):
        for I in sets:
            lhs = prod(K_terms(t, I, J).Kv for J in itertools.combinations(A, 3))
            rhs = prod(L_term(t, I, P) for P in itertools.combinations(A, 2))
            if not loose_eq(lhs, rhs, ctx):
                return Realizability(
                    False, {"kind": "product", "I": I, "A": A, "lhs": lhs, "rhs": rhs}
                )
    return Realizability(True, None)


def four_subset_identity(t: MinorTuple, I: int, A: Sequence[int]) -> Tuple[Scalar, Scalar]:
    lhs = prod(K_terms(t, I, J).Kv for J in itertools.combinations(A, 3))
    rhs = prod(L_term(t, I, P) for P in itertools.combinations(A, 2))
    return lhs, rhs


def reconstruct_symmetric(
    t: MinorTuple, ctx: ToleranceContext = DEFAULT_TOLERANCE, check: bool = True
) -> Matrix:
    """A symmetric matrix with the given signed minors, first row nonnegative.

    Exact when every needed square root is rational, otherwise float.
    """
    n = t.n
    off = [L_term(t, 0, p) for p in itertools.combinations(range(1, n + 1), 2)]
    if all(is_zero(x, None if is_exact(x) else ctx) for x in off):
        # every off-diagonal entry squares to zero: only a diagonal matrix fits
        m = [[t[bit(i)] if i == j else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]
        got = signed_minor_tuple(m)
        if check and not all(loose_eq(got[s], t[s], ctx) for s in range(1 << n)):
            raise NotRealizable("tuple has no off-diagonal part but is not diagonal")
        return m
    if check:
        res = realizability_test(t, ctx)
        if not res.ok:
            raise NotRealizable(f"tuple fails {res.certificate['kind']} identity")
    e = dict(t.entries)
    try:
        roots = {j: sqrt_principal(L_term(t, 0, (1, j))) for j in range(2, n + 1)}
    except InexactSquareRoot:
        e = {k: coerce(v, FLOAT) for k, v in e.items()}
        t = MinorTuple(n, e)
        roots = {j: sqrt_principal(L_term(t, 0, (1, j))) for j in range(2, n + 1)}
    m: Matrix = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        m[i - 1][i - 1] = t[bit(i)]
    for j, r in roots.items():
        if is_zero(r, None if is_exact(r) else ctx):
            raise DegenerateOffDiagonal(f"entry (1,{j}) vanishes")
        m[0][j - 1] = m[j - 1][0] = r
    m11 = m[0][0]
    for j, k in itertools.combinations(range(2, n + 1), 2):
        mjj, mkk = m[j - 1][j - 1], m[k - 1][k - 1]
        m1j, m1k = m[0][j - 1], m[0][k - 1]
        det3 = -t[bit(1) | bit(j) | bit(k)]
        num = det3 - m11 * mjj * mkk + m11 * L_term(t, 0, (j, k)) + mjj * m1k * m1k + mkk * m1j * m1j
        m[j - 1][k - 1] = m[k - 1][j - 1] = div(num, 2 * m1j * m1k)
    return m


def sign_conjugate(m: Sequence[Sequence[Scalar]], signs: Sequence[int]) -> Matrix:
    """``D M D`` for the diagonal sign matrix ``D``."""
    n = len(m)
    return [[signs[i] * signs[j] * m[i][j] for j in range(n)] for i in range(n)]


def first_row_gauge(m: Sequence[Sequence[Scalar]]) -> List[int]:
    """Diagonal signs making the first row of ``D M D`` nonnegative."""
    return [1] + [(-1 if m[0][j] < 0 else 1) for j in range(1, len(m))]


# -- arrays on complexes ----------------------------------------------------


def tuple_on_complex(t: MinorTuple, c: DirectedComplex) -> Dict[int, Scalar]:
    out = {}
    for v in c.vertices:
        if v not in c.labels:
            raise UnlabeledVertex(f"vertex {v} has no label")
        lab = c.labels[v]
        if lab >> t.n:
            raise UnlabeledVertex(f"vertex {v} label exceeds [{t.n}]")
        out[v] = t[lab]
    return out


def square_tile(c: DirectedComplex, k: int) -> Tuple[Tuple[int, int], int]:
    """``(pair, base)`` of a square from its vertex labels."""
    labs = [c.labels[v] for v in c.squares[k]]
    base = labs[0]
    top = labs[0]
    for lab in labs[1:]:
        base &= lab
        top |= lab
    i, j = members(top & ~base)
    return (i, j), base


def matrix_khex_field(
    m: Sequence[Sequence[Scalar]], c: Union[DirectedComplex, Pile]
) -> Tuple[Dict[int, Scalar], Dict[int, Scalar]]:
    """Signed principal minors on vertices and signed odd almost-principal
    minors on squares.  A pile is turned into its complex first."""
    if isinstance(c, Pile):
        c = build_complex(c)
    n = len(m)
    values = {}
    for v in c.vertices:
        lab = c.labels.get(v)
        if lab is None:
            raise UnlabeledVertex(f"vertex {v} has no label")
        if lab >> n:
            raise MissingMinor(f"label of vertex {v} exceeds the matrix size")
        idx = members(lab)
        x = principal_sign(len(idx)) * determinant(submatrix(m, idx, idx))
        if x == 0:
            raise ZeroMinor(f"principal minor {idx} vanishes")
        values[v] = x
    faces = {}
    for k in range(len(c.squares)):
        pair, base = square_tile(c, k)
        x = odd_almost_principal(m, base, pair)
        if x == 0:
            raise ZeroMinor(f"almost-principal minor at {pair}, {members(base)} vanishes")
        faces[k] = x
    return values, faces


def minor_khex_cube(m: Sequence[Sequence[Scalar]], I: int, triple: Tuple[int, int, int]):
    """The cube a hexagon flip on ``triple`` over ``I`` adds, as a lattice field.

    The middle element runs against the second axis, so the corner at the
    origin carries ``I + {j}`` and the top corner ``I + {i, k}``.
    """
    i, j, k = sorted(triple)

    def label(p):
        s = I
        if p[0]:
            s |= bit(i)
        if not p[1]:
            s |= bit(j)
        if p[2]:
            s |= bit(k)
        return s

    verts = {}
    for p in CORNERS:
        idx = members(label(p))
        verts[p] = principal_sign(len(idx)) * determinant(submatrix(m, idx, idx))
    faces = {}
    for a in (1, 2, 3):
        for side in (0, 1):
            base = tuple(side if b == a else 0 for b in (1, 2, 3))
            labs = [label(q) for q in face_corners(a, base)]
            lo = labs[0] & labs[1] & labs[2] & labs[3]
            hi = labs[0] | labs[1] | labs[2] | labs[3]
            faces[(a, base)] = odd_almost_principal(m, lo, tuple(members(hi & ~lo)))
    return KHexField3(VertexField3(verts), faces)


def mixed_identity_report(t: MinorTuple, ctx: ToleranceContext = DEFAULT_TOLERANCE) -> Mapping:
    """Count failing cube and 4-subset identities (no genericity check)."""
    n = t.n
    bad_k = sum(
        1
        for J in itertools.combinations(range(1, n + 1), 3)
        for I in range(1 << n)
        if not loose_eq(K_terms(t, I, J).K, 0, ctx)
    )
    bad_p = sum(
        1
        for A in itertools.combinations(range(1, n + 1), 4)
        for I in range(1 << n)
        if not loose_eq(*four_subset_identity(t, I, A), ctx)
    )
    return {"kashaev": bad_k, "product": bad_p}


def is_generic(m: Sequence[Sequence[Scalar]]) -> bool:
    """All principal and odd almost-principal minors are nonzero."""
    n = len(m)
    t = signed_minor_tuple(m)
    if any(v == 0 for v in t.entries.values()):
        return False
    for I in range(1 << n):
        for pair in itertools.combinations(range(1, n + 1), 2):
            if I & (bit(pair[0]) | bit(pair[1])):
                continue
            if odd_almost_principal(m, I, pair) == 0:
                return False
    return True


def random_symmetric(n: int, rng, generic: bool = True, span: int = 9, tries: int = 1000) -> Matrix:
    """Random symmetric matrix with small rational entries."""
    for _ in range(tries):
        m: Matrix = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = Fraction(rng.randint(-span, span), rng.randint(1, 4))
        if not generic or is_generic(m):
            return m
    raise RuntimeError("no generic matrix found")
