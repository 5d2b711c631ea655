"""GF(2) linear algebra on Python integers used as bit vectors.

A row is an ``int`` whose bit ``c`` is the coefficient of unknown ``c``.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def rank(rows: Iterable[int]) -> int:
    """Rank of a set of bit-vector rows."""
    pivots: dict[int, int] = {}
    r = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in pivots:
                row ^= pivots[top]
            else:
                pivots[top] = row
                r += 1
                break
    return r


def solve(rows: Sequence[int], rhs: Sequence[int]) -> Optional[int]:
    """Find ``x`` with ``parity(row & x) == b`` for every row.

    Returns a bit vector, or ``None`` if the system is inconsistent.
    Unknowns not forced by the system are set to zero.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and rhs differ in length")
    # eliminate on (row, rhs) pairs keyed by the lowest set bit
    basis: dict[int, tuple[int, int]] = {}
    for row, b in zip(rows, rhs):
        b &= 1
        while row:
            low = (row & -row).bit_length() - 1
            if low in basis:
                prow, pb = basis[low]
                row ^= prow
                b ^= pb
            else:
                basis[low] = (row, b)
                break
        else:
            if b:
                return None
    # back-substitute from the highest pivot down
    x = 0
    for low in sorted(basis, reverse=True):
        row, b = basis[low]
        rest = row & ~(1 << low)
        if parity(rest & x) ^ b:
            x |= 1 << low
    return x


def nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """A basis of ``{x : parity(row & x) == 0 for all rows}``."""
    reduced: dict[int, int] = {}
    for row in rows:
        for p, prow in reduced.items():
            if (row >> p) & 1:
                row ^= prow
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        for q in list(reduced):
            if (reduced[q] >> p) & 1:
                reduced[q] ^= row
        reduced[p] = row
    basis = []
    for free in range(ncols):
        if free in reduced:
            continue
        x = 1 << free
        for p, prow in reduced.items():
            if (prow >> free) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def in_span(vec: int, rows: Sequence[int]) -> bool:
    return rank(list(rows) + [vec]) == rank(rows)


def bits(x: int) -> List[int]:
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out
