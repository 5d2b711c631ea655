"""Findings and reports shared by the checkers and the command line."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Optional

from .scalars import Scalar, approx_eq, encode_scalar, is_exact


@dataclass(frozen=True)
class Finding:
    kind: str
    location: Any
    lhs: Optional[Scalar] = None
    rhs: Optional[Scalar] = None

    @property
    def residual(self) -> Optional[Scalar]:
        if self.lhs is None or self.rhs is None:
            return None
        if is_exact(self.lhs) != is_exact(self.rhs):
            return float(self.lhs) - float(self.rhs)
        return self.lhs - self.rhs

    def to_json(self) -> dict:
        out = {"kind": self.kind, "location": _jsonable(self.location)}
        for name in ("lhs", "rhs", "residual"):
            value = getattr(self, name)
            if value is not None:
                out[name] = encode_scalar(value)
        return out


def _jsonable(loc):
    if isinstance(loc, (list, tuple)):
        return [_jsonable(x) for x in loc]
    if isinstance(loc, dict):
        return {str(k): _jsonable(v) for k, v in loc.items()}
    return loc


def _sort_key(f: Finding):
    return (f.kind, repr(_jsonable(f.location)))


@dataclass
class Report:
    findings: List[Finding] = field(default_factory=list)
    mode: str = "exact"
    timing: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "PASS" if not self.findings else "FAIL"

    @property
    def ok(self) -> bool:
        return not self.findings

    def __bool__(self):
        return self.ok

    def __len__(self):
        return len(self.findings)

    def kinds(self) -> set:
        return {f.kind for f in self.findings}

    def locations(self, kind: str | None = None) -> list:
        return [f.location for f in self.findings if kind is None or f.kind == kind]

    def add(self, kind, location, lhs=None, rhs=None):
        self.findings.append(Finding(kind, location, lhs, rhs))

    def compare(self, kind, location, lhs, rhs, ctx) -> bool:
        """Record a finding unless ``lhs`` and ``rhs`` agree."""
        if is_exact(lhs) != is_exact(rhs):
            lhs, rhs = float(lhs), float(rhs)
        if approx_eq(lhs, rhs, ctx):
            return True
        self.add(kind, location, lhs, rhs)
        return False

    def sorted(self) -> "Report":
        self.findings.sort(key=_sort_key)
        return self

    def to_json(self, with_timing: bool = False) -> dict:
        out = {
            "verdict": self.verdict,
            "mode": self.mode,
            "findings": [f.to_json() for f in self.findings],
        }
        if self.extra:
            out.update(_jsonable_extra(self.extra))
        if with_timing:
            out["timing"] = self.timing
        return out


def _jsonable_extra(extra: dict) -> dict:
    out = {}
    for k, v in extra.items():
        if isinstance(v, (int, float, str, bool)) or v is None:
            out[k] = v if not is_exact(v) or isinstance(v, (int, bool)) else encode_scalar(v)
        else:
            out[k] = _jsonable(v)
    return out
