"""Closed-form thresholds above which the MMS (or strict MMS) star property is guaranteed.

Every threshold has the shape ``rational + coefficient * sqrt(radicand)`` and is
carried exactly; comparisons with integers never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Literal

from .errors import BoundError


def _split_square(n: int) -> tuple[int, int]:
    """n = a^2 * b with b as small as trial division finds; returns (a, b)."""
    if n < 0:
        raise BoundError(f"negative radicand {n}")
    if n == 0:
        return 0, 1
    r = isqrt(n)
    if r * r == n:
        return r, 1
    a, b, d = 1, n, 2
    while d * d <= b and d < 10**4:
        while b % (d * d) == 0:
            b //= d * d
            a *= d
        d += 1
    return a, b


def _sign(u: Fraction, v: Fraction, radicand: int) -> int:
    """Exact sign of u + v * sqrt(radicand)."""
    su = (u > 0) - (u < 0)
    sv = (v > 0) - (v < 0) if radicand else 0
    if sv == 0 or su == sv:
        return su or sv
    if su == 0:
        return sv
    lhs, rhs = u * u, v * v * radicand
    if lhs == rhs:
        return 0
    return su if lhs > rhs else sv


@dataclass(frozen=True)
class Surd:
    """``rational + coefficient * sqrt(radicand)`` with a square-free-reduced radicand."""

    rational: Fraction
    coefficient: Fraction = Fraction(0)
    radicand: int = 0

    @classmethod
    def make(cls, rational, coefficient=0, radicand=0) -> "Surd":
        rational, coefficient = Fraction(rational), Fraction(coefficient)
        a, b = _split_square(radicand)
        coefficient *= a
        if b == 1 or coefficient == 0:
            return cls(rational + coefficient, Fraction(0), 0)
        return cls(rational, coefficient, b)

    @property
    def is_rational(self) -> bool:
        return self.coefficient == 0

    def compare(self, x) -> int:
        """Sign of self - x for a rational x."""
        return _sign(self.rational - Fraction(x), self.coefficient, self.radicand)

    def __add__(self, x) -> "Surd":
        if isinstance(x, Surd):
            if x.radicand and self.radicand and x.radicand != self.radicand:
                raise BoundError("cannot add surds with different radicands")
            r = self.radicand or x.radicand
            return Surd.make(self.rational + x.rational, self.coefficient + x.coefficient, r)
        return Surd.make(self.rational + Fraction(x), self.coefficient, self.radicand)

    def floor_scaled(self, scale: int) -> int:
        """floor(self * scale) for a positive integer scale."""
        q = self.rational * scale
        c = self.coefficient * scale
        den = q.denominator * c.denominator
        A = int(q * den)
        B = int(c * den)
        M = B * B * self.radicand
        if B >= 0:
            y = isqrt(M)
        else:
            y = -(isqrt(M - 1) + 1) if M else 0
        return (A + y) // den

    def decimal(self, digits: int = 6) -> str:
        """Correctly rounded (half up) decimal rendering."""
        scale = 10**digits
        n = (self.floor_scaled(2 * scale) + 1) // 2
        sign = "-" if n < 0 else ""
        whole, frac = divmod(abs(n), scale)
        return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"

    def __float__(self) -> float:
        return float(self.decimal(17))

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rational)
        return f"{self.rational} + {self.coefficient}*sqrt({self.radicand})"

    def as_dict(self) -> dict:
        return {
            "rational": str(self.rational),
            "coefficient": str(self.coefficient),
            "radicand": self.radicand,
            "decimal": self.decimal(),
        }


def half_sqrt_plus(radicand: int, affine) -> Surd:
    """(sqrt(radicand) + affine) / 2."""
    return Surd.make(Fraction(affine, 2), Fraction(1, 2), radicand)


@dataclass(frozen=True)
class BoundReport:
    """A threshold on ``variable``; the property is guaranteed once ``variable`` clears it."""

    name: str
    inputs: dict
    variable: str
    threshold: Surd
    radicand: int
    affine: Fraction
    strict: bool = False
    side_condition: int | None = None
    extra: dict = field(default_factory=dict)
    label: str = ""

    def guarantees(self, value: int) -> bool:
        c = self.threshold.compare(value)
        ok = c < 0 if self.strict else c <= 0
        if self.side_condition is not None:
            ok = ok and value > self.side_condition
        return ok

    def verdict(self, value: int) -> Literal["holds", "inconclusive"]:
        return "holds" if self.guarantees(value) else "inconclusive"

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "inputs": dict(self.inputs),
            "variable": self.variable,
            "threshold": self.threshold.as_dict(),
            "radicand": self.radicand,
            "affine": str(self.affine),
            "strict": self.strict,
        }
        if self.side_condition is not None:
            out["side_condition"] = self.side_condition
        if self.label:
            out["label"] = self.label
        for k, v in self.extra.items():
            out[k] = v.as_dict() if isinstance(v, Surd) else v
        return out


GQ_LABEL = "holds by the generalized quadrangle theorem"


def _need_alpha(alpha):
    if alpha == 1:
        raise BoundError(f"alpha = 1 is not covered by the formula; {GQ_LABEL}")
    if alpha < 2:
        raise BoundError(f"alpha must be >= 2, got {alpha}")


def pg_radicand(s: int, alpha: int) -> int:
    return (8 * alpha * alpha - 8 * alpha) * s + 20 * alpha * alpha - 36 * alpha + 9


def pg_affine(s: int, alpha: int) -> int:
    return (2 * alpha - 2) * s + 4 * alpha - 5


def bound_pg(s: int, alpha: int) -> BoundReport:
    """MMS star property holds for a (s, t, alpha) geometry when t >= threshold."""
    _need_alpha(alpha)
    R, a = pg_radicand(s, alpha), pg_affine(s, alpha)
    return BoundReport("pg", {"s": s, "alpha": alpha}, "t", half_sqrt_plus(R, a), R, Fraction(a))


def bound_pg_strict(s: int, alpha: int) -> BoundReport:
    """Strict MMS star property holds when t exceeds both the threshold and s*alpha + 3*alpha - 3."""
    _need_alpha(alpha)
    R = (8 * alpha * alpha - 8 * alpha) * s + 20 * alpha * alpha - 28 * alpha + 9
    a = pg_affine(s, alpha)
    return BoundReport(
        "pg-strict",
        {"s": s, "alpha": alpha},
        "t",
        half_sqrt_plus(R, a),
        R,
        Fraction(a),
        strict=True,
        side_condition=s * alpha + 3 * alpha - 3,
    )


def pg_verdict(s: int, t: int, alpha: int, strict: bool = False) -> str:
    """'holds' or 'inconclusive' for concrete parameters; alpha = 1 always holds for MMS."""
    if alpha == 1 and not strict:
        return "holds"
    rep = bound_pg_strict(s, alpha) if strict else bound_pg(s, alpha)
    return rep.verdict(t)


def bound_design(k: int) -> BoundReport:
    """Point-count threshold for 2-(v, k, 1) designs.

    ``threshold`` is the published closed form; ``extra['from_pg']`` is the
    value obtained by substituting s = k-1, alpha = k into the partial
    geometry bound, which is smaller and equally valid.
    """
    if k < 2:
        raise BoundError(f"block size must be >= 2, got {k}")
    R = 8 * k**3 + 4 * k * k - 28 * k + 9
    thr = Surd.make((k - 1) * (k * k + Fraction(9, 2)), Fraction(k - 1, 2), R)
    from_pg = Surd.make((k - 1) * (k * k - Fraction(1, 2)) + 1, Fraction(k - 1, 2), R)
    return BoundReport(
        "design",
        {"k": k},
        "v",
        thr,
        R,
        (k - 1) * (k * k + Fraction(9, 2)),
        strict=True,
        extra={"from_pg": from_pg},
    )


def bound_oa(m: int) -> BoundReport:
    """Orthogonal arrays OA(m, n) lacking the property have n <= threshold.

    ``guarantees(n)`` follows the ``n > threshold`` reading; ``extra['n_min']``
    records the ``t = n - 1 >= threshold`` reading, i.e. n >= threshold + 1.
    """
    if m < 3:
        raise BoundError(f"need m >= 3, got {m}")
    R = 8 * m**3 - 12 * m * m - 36 * m + 49
    a = 2 * m * m - 2 * m - 5
    thr = half_sqrt_plus(R, a)
    return BoundReport(
        "oa", {"m": m}, "n", thr, R, Fraction(a), strict=True, extra={"n_min": thr + 1}
    )


def threshold_asymptotic(s: int, alpha: int) -> BoundReport:
    """Explicit part s*alpha + sqrt(2 s alpha^2) of the asymptotic threshold."""
    if alpha == 0:
        raise BoundError("alpha = 0 geometries are trivial")
    if alpha < 0 or s < 0:
        raise BoundError("parameters must be nonnegative")
    R = 2 * s * alpha * alpha
    return BoundReport(
        "asymptotic",
        {"s": s, "alpha": alpha},
        "t",
        Surd.make(s * alpha, 1, R),
        R,
        Fraction(s * alpha),
        strict=True,
        label="informative: lower-order term unspecified",
    )
