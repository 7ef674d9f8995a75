"""JSON verification reports with exact rationals stored as "num/den" strings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .geometry import IncidenceStructure, PgParams, validate_partial_geometry
from .errors import GeometryError

SCHEMA_VERSION = 1


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _jsonable(obj):
    """Recursively turn Fractions into strings and tuples/sets into lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(v) for v in obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def describe_geometry(structure: IncidenceStructure, name: str = "") -> dict:
    """Name, counts and, when the axioms hold, the (s, t, alpha) parameters."""
    out = {
        "name": name,
        "points": structure.point_count,
        "lines": structure.line_count,
        "line_sizes": sorted(structure.line_sizes()),
        "replications": sorted(structure.replications()),
    }
    try:
        params: PgParams | None = validate_partial_geometry(structure)
    except GeometryError as exc:
        params = None
        out["partial_geometry"] = False
        out["reason"] = str(exc)
    if params is not None:
        out["partial_geometry"] = True
        out["s"], out["t"], out["alpha"] = params.as_tuple()
    return out


@dataclass
class VerificationReport:
    command: str
    geometry: dict = field(default_factory=dict)
    verdict: dict = field(default_factory=dict)
    witness: tuple[Fraction, ...] | None = None
    bounds: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    exit_code: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = None if self.witness is None else [rational_str(x) for x in self.witness]
        d["schema"] = SCHEMA_VERSION
        return _jsonable(d)

    def deterministic_dict(self) -> dict:
        """Everything except wall-clock timing."""
        d = self.to_dict()
        d.pop("timing")
        return d

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d.pop("schema", None)
        w = d.get("witness")
        d["witness"] = None if w is None else tuple(parse_rational(x) for x in w)
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def summary(self) -> str:
        lines = [f"[{self.command}] {self.geometry.get('name', '')}".rstrip()]
        g = self.geometry
        if g:
            desc = f"  {g.get('points')} points, {g.get('lines')} lines"
            if g.get("partial_geometry"):
                desc += f", pg(s,t,alpha) = ({g['s']},{g['t']},{g['alpha']})"
            lines.append(desc)
        for k, v in self.verdict.items():
            lines.append(f"  {k}: {v}")
        for b in self.bounds:
            thr = b.get("threshold", {})
            lines.append(f"  bound {b.get('name')} {b.get('inputs')}: {thr.get('decimal')}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
