"""Rhombus tilings of the regular 2n-gon, flips and piles.

Subsets of ``[n] = {1, ..., n}`` are bit masks: element ``i`` is bit
``i - 1``.  A tiling holds one tile per pair ``i < j``, recorded by its base
label ``I``; the tile's vertices are ``I``, ``I+i``, ``I+j`` and ``I+i+j``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .errors import BadN, InvalidPile, NotAdmissible, NotFlippable

MAX_N = 30

DELTA = "delta"
NABLA = "nabla"

Pair = Tuple[int, int]
Triple = Tuple[int, int, int]


def bit(i: int) -> int:
    return 1 << (i - 1)


def mask(elements) -> int:
    m = 0
    for i in elements:
        m |= bit(i)
    return m


def members(m: int) -> List[int]:
    out, i = [], 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def label_str(m: int) -> str:
    """Compact label such as ``"134"``; elements above 9 are comma separated."""
    els = members(m)
    if not els:
        return "{}"
    if els[-1] <= 9:
        return "".join(str(i) for i in els)
    return ",".join(str(i) for i in els)


def parse_label(s: str) -> int:
    s = s.strip()
    if s in ("", "{}", "0", "∅"):
        return 0
    if "," in s:
        return mask(int(x) for x in s.split(","))
    return mask(int(ch) for ch in s)


def interval(a: int, b: int) -> int:
    """Mask of ``{a, ..., b}`` (empty when ``a > b``)."""
    if a > b:
        return 0
    return ((1 << (b - a + 1)) - 1) << (a - 1)


def full(n: int) -> int:
    return (1 << n) - 1


@lru_cache(maxsize=None)
def pairs(n: int) -> Tuple[Pair, ...]:
    return tuple(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> Dict[Pair, int]:
    return {p: k for k, p in enumerate(pairs(n))}


def triples(n: int) -> List[Triple]:
    return list(itertools.combinations(range(1, n + 1), 3))


def boundary_labels(n: int) -> set:
    out = {0}
    for k in range(1, n + 1):
        out.add(interval(1, k))
        out.add(interval(k, n))
    return out


def _check_n(n: int):
    if not isinstance(n, int) or not 3 <= n <= MAX_N:
        raise BadN(f"n must be an integer in [3, {MAX_N}], got {n!r}")


@dataclass(frozen=True)
class DiamondTiling:
    """A rhombus tiling stored as the base label of each pair's tile."""

    n: int
    bases: Tuple[int, ...]

    @classmethod
    def from_tiles(cls, n: int, tiles: Dict[Pair, int]) -> "DiamondTiling":
        idx = pair_index(n)
        if set(tiles) != set(idx):
            raise ValueError("a tiling needs exactly one tile per pair")
        bases = [0] * len(idx)
        for p, b in tiles.items():
            bases[idx[tuple(p)]] = b
        return cls(n, tuple(bases))

    def base(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self.bases[pair_index(self.n)[(i, j)]]

    def tiles(self) -> Dict[Pair, int]:
        return dict(zip(pairs(self.n), self.bases))

    def tile_labels(self, i: int, j: int) -> Tuple[int, int, int, int]:
        """Vertex labels of a tile in cyclic order."""
        b = self.base(i, j)
        return (b, b | bit(i), b | bit(i) | bit(j), b | bit(j))

    def labels(self) -> set:
        out = set()
        for (i, j) in pairs(self.n):
            out.update(self.tile_labels(i, j))
        return out

    def edges(self) -> set:
        out = set()
        for (i, j) in pairs(self.n):
            a, b, c, d = self.tile_labels(i, j)
            for e in ((a, b), (b, c), (c, d), (d, a)):
                out.add(frozenset(e))
        return out

    def interior_labels(self) -> set:
        return self.labels() - boundary_labels(self.n)


def validate_tiling(t: DiamondTiling) -> None:
    """Check the combinatorial invariants of a tiling; raise ValueError."""
    n = t.n
    for (i, j), b in t.tiles().items():
        if b & (bit(i) | bit(j)):
            raise ValueError(f"tile {i}{j} has base containing {i} or {j}")
    labels = t.labels()
    if not boundary_labels(n) <= labels:
        raise ValueError("boundary labels missing")
    euler = len(labels) - len(t.edges()) + len(t.bases)
    if euler != 1:
        raise ValueError(f"Euler characteristic {euler}, expected 1")


def min_tiling(n: int) -> DiamondTiling:
    """The tiling whose labels are the intervals of ``[n]``."""
    _check_n(n)
    return DiamondTiling(n, tuple(interval(i + 1, j - 1) for i, j in pairs(n)))


def max_tiling(n: int) -> DiamondTiling:
    """The tiling whose labels are the complements of intervals."""
    _check_n(n)
    return DiamondTiling(n, tuple(full(n) & ~interval(i, j) for i, j in pairs(n)))


def vertex_position(label: int, n: int) -> complex:
    """Planar position of a vertex: the sum of the polygon's edge vectors."""
    return sum((cmath.exp(1j * math.pi * (i - 1) / n) for i in members(label)), 0j)


# -- flips ------------------------------------------------------------------


class FlipState(NamedTuple):
    direction: str
    base: int
    center: int
    new_center: int


def flip_state(t: DiamondTiling, triple: Triple) -> Optional[FlipState]:
    """How ``triple`` can be flipped in ``t``, or ``None``."""
    i, j, k = sorted(triple)
    bij, bik, bjk = t.base(i, j), t.base(i, k), t.base(j, k)
    bi, bj, bk = bit(i), bit(j), bit(k)
    if bij == bjk and bik == bij | bj:
        I = bij
        return FlipState(DELTA, I, I | bj, I | bi | bk)
    if bij == bik | bk and bjk == bik | bi:
        I = bik
        return FlipState(NABLA, I, I | bi | bk, I | bj)
    return None


def enumerate_flips(t: DiamondTiling) -> List[Tuple[Triple, str]]:
    out = []
    for tr in triples(t.n):
        st = flip_state(t, tr)
        if st is not None:
            out.append((tr, st.direction))
    return out


def apply_flip(t: DiamondTiling, triple: Triple) -> DiamondTiling:
    i, j, k = sorted(triple)
    st = flip_state(t, (i, j, k))
    if st is None:
        raise NotFlippable(f"triple {i}{j}{k} is not flippable")
    I = st.base
    if st.direction == DELTA:
        new = {(i, k): I, (i, j): I | bit(k), (j, k): I | bit(i)}
    else:
        new = {(i, k): I | bit(j), (i, j): I, (j, k): I}
    idx = pair_index(t.n)
    bases = list(t.bases)
    for p, b in new.items():
        bases[idx[p]] = b
    return DiamondTiling(t.n, tuple(bases))


# -- piles ------------------------------------------------------------------


class FlipRecord(NamedTuple):
    triple: Triple
    direction: str
    base: int
    removed: int
    added: int


@dataclass(frozen=True)
class Pile:
    start: DiamondTiling
    steps: Tuple[FlipRecord, ...]

    @property
    def n(self) -> int:
        return self.start.n

    @property
    def flips(self) -> List[Triple]:
        return [s.triple for s in self.steps]

    def tilings(self) -> List[DiamondTiling]:
        out = [self.start]
        for s in self.steps:
            out.append(apply_flip(out[-1], s.triple))
        return out

    def __len__(self):
        return len(self.steps)


def pile_from_flips(start: DiamondTiling, flips: Sequence[Triple]) -> Pile:
    """A pile from any flip sequence; directions are recorded per step."""
    t = start
    steps = []
    for tr in flips:
        tr = tuple(sorted(tr))
        st = flip_state(t, tr)
        if st is None:
            raise InvalidPile(f"step {len(steps) + 1}: triple {tr} not flippable")
        steps.append(FlipRecord(tr, st.direction, st.base, st.center, st.new_center))
        t = apply_flip(t, tr)
    return Pile(start, tuple(steps))


def quadruple_order(sigma: Sequence[Triple], quad: Tuple[int, ...]) -> Optional[str]:
    """``"lex"``, ``"revlex"`` or ``None`` for the triples of ``quad`` in ``sigma``."""
    pos = {tuple(sorted(t)): k for k, t in enumerate(sigma)}
    seq = [pos[t] for t in itertools.combinations(quad, 3)]
    if seq == sorted(seq):
        return "lex"
    if seq == sorted(seq, reverse=True):
        return "revlex"
    return None


def _infer_n(sigma: Sequence[Triple]) -> int:
    return max(max(t) for t in sigma)


def check_admissible(sigma: Sequence[Triple], n: Optional[int] = None) -> None:
    """Raise NotAdmissible unless ``sigma`` orders all triples admissibly."""
    sigma = [tuple(sorted(t)) for t in sigma]
    if n is None:
        n = _infer_n(sigma)
    if sorted(sigma) != triples(n) or len(set(sigma)) != len(sigma):
        raise NotAdmissible("not a permutation of all triples")
    for quad in itertools.combinations(range(1, n + 1), 4):
        if quadruple_order(sigma, quad) is None:
            raise NotAdmissible(f"4-subset {quad} is out of order", quadruple=quad)


def is_admissible(sigma: Sequence[Triple], n: Optional[int] = None) -> bool:
    try:
        check_admissible(sigma, n)
    except NotAdmissible:
        return False
    return True


def inversion_set(sigma: Sequence[Triple], n: Optional[int] = None) -> set:
    """4-subsets whose triples appear in reverse lexicographic order."""
    sigma = [tuple(sorted(t)) for t in sigma]
    if n is None:
        n = _infer_n(sigma)
    return {
        q
        for q in itertools.combinations(range(1, n + 1), 4)
        if quadruple_order(sigma, q) == "revlex"
    }


def pile_from_admissible(sigma: Sequence[Triple], n: Optional[int] = None) -> Pile:
    """The pile from the minimal to the maximal tiling flipping in ``sigma`` order."""
    sigma = [tuple(sorted(t)) for t in sigma]
    if n is None:
        n = _infer_n(sigma)
    check_admissible(sigma, n)
    pile = pile_from_flips(min_tiling(n), sigma)
    if any(s.direction != DELTA for s in pile.steps):
        raise InvalidPile("admissible order produced a backward flip")
    return pile


def enumerate_piles(n: int) -> Iterator[List[Triple]]:
    """Every flip sequence from the minimal to the maximal tiling."""
    _check_n(n)
    target = max_tiling(n)

    def walk(t, path):
        if t == target:
            yield list(path)
            return
        for tr, d in enumerate_flips(t):
            if d == DELTA:
                path.append(tr)
                yield from walk(apply_flip(t, tr), path)
                path.pop()

    yield from walk(min_tiling(n), [])


def count_piles(n: int) -> int:
    """Number of piles from the minimal to the maximal tiling."""
    _check_n(n)
    target = max_tiling(n)

    @lru_cache(maxsize=None)
    def count(t):
        if t == target:
            return 1
        return sum(count(apply_flip(t, tr)) for tr, d in enumerate_flips(t) if d == DELTA)

    return count(min_tiling(n))


def lex_order(n: int) -> List[Triple]:
    return triples(n)


def order_from_inversions(n: int, inversions: set, priority: Sequence[Triple]) -> List[Triple]:
    """An admissible order with the given inversion set.

    Each 4-subset orders its triples lexicographically, or in reverse when
    it is an inversion; ties are broken by position in ``priority``.
    """
    rank = {tuple(sorted(t)): k for k, t in enumerate(priority)}
    after: Dict[Triple, set] = {t: set() for t in triples(n)}
    indeg = {t: 0 for t in after}
    for q in itertools.combinations(range(1, n + 1), 4):
        chain = list(itertools.combinations(q, 3))
        if q in inversions:
            chain.reverse()
        for a, b in zip(chain, chain[1:]):
            if b not in after[a]:
                after[a].add(b)
                indeg[b] += 1
    ready = [t for t, d in indeg.items() if d == 0]
    out = []
    while ready:
        ready.sort(key=lambda t: rank[t], reverse=True)
        t = ready.pop()
        out.append(t)
        for u in after[t]:
            indeg[u] -= 1
            if indeg[u] == 0:
                ready.append(u)
    if len(out) != len(indeg):
        raise NotAdmissible("inversion set is not consistent")
    return out


def bubbling_schedule(n: int) -> List[List[Triple]]:
    """Admissible orders ``sigma_0, sigma_1, ...`` starting from lex order.

    Step ``i`` adds ``{1} + alpha`` to the inversion set, where ``alpha``
    is the ``i``-th triple avoiding 1; triples after ``alpha`` in lex order
    keep their positions.
    """
    alpha = lex_order(n)
    c = math.comb(n - 1, 2)
    out = [list(alpha)]
    inv: set = set()
    for i in range(1, len(alpha) - c + 1):
        inv = inv | {(1,) + alpha[i + c - 1]}
        out.append(order_from_inversions(n, inv, out[-1]))
    return out


def lex_standard_pile(n: int) -> Tuple[Pile, List[List[Triple]]]:
    """The pile flipping triples in lex order, with its bubbling schedule."""
    if not isinstance(n, int) or not 3 <= n <= 8:
        raise BadN(f"lex_standard_pile supports 3 <= n <= 8, got {n!r}")
    return pile_from_admissible(lex_order(n), n), bubbling_schedule(n)
