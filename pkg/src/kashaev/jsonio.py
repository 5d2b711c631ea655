"""JSON payloads for fields, tilings, piles, complexes, tuples and grids.

Scalars follow :func:`encode_scalar`: exact values are ``"p/q"`` strings,
floats are JSON numbers.  Every encoder emits lists in sorted order so
that equal objects serialise to equal bytes.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .complexes import DirectedComplex, complex_from_parts
from .genrec import GridField, Instance, make_instance
from .kashaev3d import KHexField3, VertexField3
from .minors import MinorTuple
from .scalars import Scalar, coerce, decode_scalar, encode_scalar
from .tilings import DiamondTiling, Pile, pile_from_flips, validate_tiling


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _point(obj) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(c, int) for c in obj):
        raise ValueError(f"expected a list of integers, got {obj!r}")
    return tuple(obj)


def _convert(values: Dict, mode: Optional[str]) -> Dict:
    if mode is None:
        return values
    return {k: coerce(v, mode) for k, v in values.items()}


# -- Z^3 fields ---------------------------------------------------------------


def encode_field(field) -> dict:
    verts = field.vertices if isinstance(field, KHexField3) else field
    lo, hi = verts.window
    out = {
        "window": [list(lo), list(hi)],
        "vertices": [{"p": list(p), "v": encode_scalar(verts[p])} for p in verts.points()],
    }
    if isinstance(field, KHexField3):
        out["faces"] = [
            {"axis": a, "base": list(p), "v": encode_scalar(v)}
            for (a, p), v in sorted(field.faces.items())
        ]
    return out


def decode_field(obj: Mapping, mode: Optional[str] = None):
    """A :class:`VertexField3`, or a :class:`KHexField3` when faces are given."""
    verts = {_point(e["p"]): decode_scalar(e["v"]) for e in obj["vertices"]}
    if "window" in obj:
        lo, hi = (_point(w) for w in obj["window"])
        for p in verts:
            if not all(a <= c <= b for a, c, b in zip(lo, p, hi)):
                raise ValueError(f"point {list(p)} lies outside the window")
    field = VertexField3(_convert(verts, mode))
    if "faces" not in obj:
        return field
    faces = {}
    for e in obj["faces"]:
        if e["axis"] not in (1, 2, 3):
            raise ValueError(f"bad axis {e['axis']!r}")
        faces[(e["axis"], _point(e["base"]))] = decode_scalar(e["v"])
    return KHexField3(field, _convert(faces, mode))


# -- tilings and piles ----------------------------------------------------------


def encode_tiling(t: DiamondTiling) -> dict:
    return {
        "n": t.n,
        "tiles": [{"pair": list(p), "base": b} for p, b in sorted(t.tiles().items())],
    }


def decode_tiling(obj: Mapping) -> DiamondTiling:
    tiles = {tuple(sorted(e["pair"])): int(e["base"]) for e in obj["tiles"]}
    t = DiamondTiling.from_tiles(int(obj["n"]), tiles)
    validate_tiling(t)
    return t


def encode_pile(p: Pile, with_steps: bool = False) -> dict:
    out = {"start": encode_tiling(p.start), "flips": [list(tr) for tr in p.flips]}
    if with_steps:
        out["steps"] = [
            {"triple": list(s.triple), "direction": s.direction, "removed": s.removed, "added": s.added}
            for s in p.steps
        ]
    return out


def decode_pile(obj: Mapping) -> Pile:
    return pile_from_flips(decode_tiling(obj["start"]), [tuple(f) for f in obj["flips"]])


# -- complexes ------------------------------------------------------------------


def encode_complex(
    c: DirectedComplex,
    values: Optional[Mapping[int, Scalar]] = None,
    faces: Optional[Mapping[int, Scalar]] = None,
) -> dict:
    out = {
        "vertices": sorted(c.vertices),
        "labels": {str(v): c.labels[v] for v in sorted(c.labels)},
        "squares": [list(s) for s in c.squares],
        "cubes": [{"verts": list(q.verts), "top": q.top} for q in c.cubes],
        "interior": sorted(c.interior),
    }
    if values is not None:
        out["values"] = {str(v): encode_scalar(values[v]) for v in sorted(values)}
    if faces is not None:
        out["faces"] = {str(k): encode_scalar(faces[k]) for k in sorted(faces)}
    return out


def decode_complex(obj: Mapping, mode: Optional[str] = None):
    """``(complex, vertex values or None, square values or None)``.

    Square values are keyed by the square's position in ``squares``.
    """
    labels = {int(k): int(v) for k, v in obj.get("labels", {}).items()}
    c = complex_from_parts(
        [int(v) for v in obj["vertices"]],
        obj["squares"],
        [(q["verts"], q["top"]) for q in obj["cubes"]],
        obj.get("interior", []),
        labels,
    )
    values = faces = None
    if "values" in obj:
        values = _convert({int(k): decode_scalar(v) for k, v in obj["values"].items()}, mode)
    if "faces" in obj:
        faces = _convert({int(k): decode_scalar(v) for k, v in obj["faces"].items()}, mode)
        bad = [k for k in faces if not 0 <= k < len(c.squares)]
        if bad:
            raise ValueError(f"face value for unknown square {bad[0]}")
    return c, values, faces


# -- minors ---------------------------------------------------------------------


def encode_tuple(t: MinorTuple) -> dict:
    return {"n": t.n, "entries": {str(k): encode_scalar(t[k]) for k in range(1 << t.n)}}


def decode_tuple(obj: Mapping, mode: Optional[str] = None) -> MinorTuple:
    entries = {int(k): decode_scalar(v) for k, v in obj["entries"].items()}
    return MinorTuple(int(obj["n"]), _convert(entries, mode))


def encode_matrix(m: Sequence[Sequence[Scalar]]) -> dict:
    return {"matrix": [[encode_scalar(x) for x in row] for row in m]}


def decode_matrix(obj, mode: Optional[str] = None) -> List[List[Scalar]]:
    """A square matrix given as rows, bare or under a ``"matrix"`` key."""
    rows = obj["matrix"] if isinstance(obj, dict) else obj
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    out = [[decode_scalar(x) for x in r] for r in rows]
    if mode is not None:
        out = [[coerce(x, mode) for x in r] for r in out]
    return out


# -- grids of the general recurrence --------------------------------------------


def encode_grid(inst: Instance, fld: GridField) -> dict:
    pts = sorted(fld.vertices)
    lo = [min(p[i] for p in pts) for i in range(fld.d)]
    hi = [max(p[i] for p in pts) for i in range(fld.d)]
    return {
        "instance": inst.name,
        "params": [encode_scalar(x) for x in inst.params],
        "d": fld.d,
        "a": list(fld.a),
        "window": [lo, hi],
        "vertices": [{"p": list(p), "v": encode_scalar(fld.vertices[p])} for p in pts],
        "faces": [
            {"axis": i, "base": list(b), "v": encode_scalar(v)}
            for (i, b), v in sorted(fld.faces.items())
        ],
    }


def decode_grid(obj: Mapping, mode: Optional[str] = None) -> Tuple[Instance, GridField]:
    inst = make_instance(obj["instance"], [decode_scalar(x) for x in obj.get("params", [])])
    d = int(obj.get("d", inst.d))
    a = tuple(obj.get("a", inst.a))
    if d != inst.d or a != inst.a:
        raise ValueError(f"grid header d={d}, a={list(a)} does not match {inst.name}")
    verts = {_point(e["p"]): decode_scalar(e["v"]) for e in obj["vertices"]}
    faces = {(int(e["axis"]), _point(e["base"])): decode_scalar(e["v"]) for e in obj.get("faces", [])}
    for p in verts:
        if len(p) != d:
            raise ValueError(f"point {list(p)} has the wrong dimension")
    return inst, GridField(d, a, _convert(verts, mode), _convert(faces, mode))
