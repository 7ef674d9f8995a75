"""Zero-sum point weightings, line-weight profiles and the counterexample schemes.

All arithmetic is exact (``fractions.Fraction``); a line counts as
nonnegative when its weight is >= 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .constructors.arrays import OrthogonalArray
from .errors import WeightingError
from .geometry import AnnotatedStructure, IncidenceStructure, PgParams


@dataclass(frozen=True)
class ZeroSumWeighting:
    weights: tuple[Fraction, ...]
    classes: tuple[str, ...] | None = None

    def __post_init__(self):
        if sum(self.weights, Fraction(0)) != 0:
            raise WeightingError(f"weights sum to {sum(self.weights)}, not 0")
        if self.classes is not None and len(self.classes) != len(self.weights):
            raise WeightingError("one class label per point required")

    @classmethod
    def of(cls, values: Iterable, classes: Sequence[str] | None = None) -> "ZeroSumWeighting":
        return cls(tuple(Fraction(v) for v in values), None if classes is None else tuple(classes))

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, p):
        return self.weights[p]

    def scaled(self, factor) -> "ZeroSumWeighting":
        factor = Fraction(factor)
        return ZeroSumWeighting(tuple(w * factor for w in self.weights), self.classes)

    def integral(self) -> "ZeroSumWeighting":
        """Positive rescaling with integer, coprime weights."""
        den = lcm(*(w.denominator for w in self.weights))
        ints = [int(w * den) for w in self.weights]
        g = 0
        for v in ints:
            g = gcd(g, v)
        g = g or 1
        return ZeroSumWeighting(tuple(Fraction(v // g) for v in ints), self.classes)

    def class_weights(self) -> dict[str, Fraction]:
        if self.classes is None:
            return {}
        return {c: w for c, w in zip(self.classes, self.weights)}


@dataclass(frozen=True)
class LineWeightProfile:
    line_weights: tuple[Fraction, ...]
    nonnegative: frozenset[int]

    @property
    def nonneg_count(self) -> int:
        return len(self.nonnegative)

    @property
    def max_weight(self) -> Fraction:
        return max(self.line_weights)

    def histogram(self) -> dict[Fraction, int]:
        return dict(sorted(Counter(self.line_weights).items(), reverse=True))


def evaluate(structure: IncidenceStructure, w: ZeroSumWeighting) -> LineWeightProfile:
    if len(w) != structure.point_count:
        raise WeightingError(
            f"weighting has {len(w)} entries for {structure.point_count} points"
        )
    lw = tuple(sum((w.weights[p] for p in ln), Fraction(0)) for ln in structure.lines)
    return LineWeightProfile(lw, frozenset(i for i, x in enumerate(lw) if x >= 0))


@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    first_violation: int | None
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]


def check_line_identity(
    structure: IncidenceStructure, params: PgParams, w: ZeroSumWeighting
) -> IdentityReport:
    """Check (t - alpha) wt(l) == sum of wt over the lines adjacent to l, for every l."""
    prof = evaluate(structure, w)
    lhs, rhs = [], []
    bad = None
    for i in range(structure.line_count):
        left = (params.t - params.alpha) * prof.line_weights[i]
        right = sum((prof.line_weights[j] for j in structure.adjacent_lines(i)), Fraction(0))
        lhs.append(left)
        rhs.append(right)
        if bad is None and left != right:
            bad = i
    return IdentityReport(bad is None, bad, tuple(lhs), tuple(rhs))


def _from_classes(n: int, groups: dict[str, tuple[Iterable[int], Fraction]], default=None):
    weights = [None] * n
    labels = [None] * n
    for label, (pts, value) in groups.items():
        for p in pts:
            if weights[p] is not None:
                raise WeightingError(f"point {p} assigned to two classes")
            weights[p] = Fraction(value)
            labels[p] = label
    if default is not None:
        label, value = default
        for p in range(n):
            if weights[p] is None:
                weights[p] = Fraction(value)
                labels[p] = label
    if any(x is None for x in weights):
        raise WeightingError("some points were not assigned a weight")
    return ZeroSumWeighting(tuple(weights), tuple(labels))


def _checked_points(structure, points, what="sub_points"):
    pts = frozenset(points)
    if any(not 0 <= p < structure.point_count for p in pts):
        raise WeightingError(f"{what} contains an out-of-range point")
    return pts


def wt_two_weight_embedding(structure: IncidenceStructure, sub_points: Iterable[int]) -> ZeroSumWeighting:
    """Weight n - |sub| on the sub-points and -|sub| everywhere else."""
    sub = _checked_points(structure, sub_points)
    n = structure.point_count
    if not sub or len(sub) == n:
        raise WeightingError("sub_points must be a nonempty proper subset")
    return _from_classes(n, {"sub": (sub, n - len(sub))}, default=("rest", -len(sub)))


def wt_three_weight_subdesign(
    structure: IncidenceStructure, sub_points: Iterable[int], special: int, k: int
) -> ZeroSumWeighting:
    """Special sub-point gets (v-w) - (w-1)(v-k)/(w-k), other sub-points (v-k)/(w-k), rest -1."""
    sub = _checked_points(structure, sub_points)
    v, w = structure.point_count, len(sub)
    if w <= k:
        raise WeightingError(f"need more sub-points ({w}) than the block size ({k})")
    if special not in sub:
        raise WeightingError("the special point must be a sub-point")
    x = Fraction(v - k, w - k)
    return _from_classes(
        v,
        {"special": ([special], (v - w) - (w - 1) * x), "sub": (sub - {special}, x)},
        default=("rest", -1),
    )


def wt_oa_punctured(
    A: OrthogonalArray, S: Iterable[int], deleted_points: Iterable[int]
) -> ZeroSumWeighting:
    """Three-class weighting on an OA(m, (m-1)^2) holding a punctured OA(m, m-1).

    ``S`` are column indices of the punctured copy, ``deleted_points`` the m
    points (row * n + symbol) of the missing column.
    """
    m, n = A.m, A.n
    if m < 3:
        raise WeightingError("need m >= 3")
    S = sorted(set(S))
    if len(S) != (m - 1) ** 2 - 1:
        raise WeightingError(f"|S| = {len(S)}, expected {(m - 1) ** 2 - 1}")
    delta = frozenset(deleted_points)
    if len(delta) != m:
        raise WeightingError(f"{len(delta)} deleted points, expected {m}")
    missing = [None] * m
    for p in delta:
        r, x = divmod(p, n)
        missing[r] = x
    if None in missing:
        raise WeightingError("deleted points must be one per row")
    if tuple(missing) in set(A.columns()):
        raise WeightingError("the deleted column occurs in the array")
    on_s = {p for c in S for p in A.column_points(c)}
    beta = on_s - delta
    gamma = set(range(m * n)) - on_s - delta
    sizes = (len(delta), len(beta), len(gamma))
    if sizes != (m, m * (m - 2), m * (m - 1) * (m - 2)):
        raise WeightingError(f"class sizes {sizes} do not match an OA(m, (m-1)^2)")
    return _from_classes(
        m * n,
        {
            "delta": (delta, 1),
            "beta": (beta, m * (m - 1) - Fraction(1, m - 2)),
            "gamma": (gamma, -m),
        },
    )


def wt_jt_design(
    structure: IncidenceStructure, S: Iterable[int], a: Iterable[int], q: int
) -> ZeroSumWeighting:
    """Weights q^2 on the deleted block, (q+1)(q^3-1) on the rest of S, -q^2(q+1) elsewhere."""
    S = frozenset(S)
    delta = _checked_points(structure, a, "deleted block")
    covered = {p for i in S for p in structure.lines[i]}
    beta = covered - delta
    gamma = set(range(structure.point_count)) - covered - delta
    sizes = (len(delta), len(beta), len(gamma))
    if sizes != (q + 1, q * q, q**3):
        raise WeightingError(f"class sizes {sizes}, expected {(q + 1, q * q, q ** 3)}")
    return _from_classes(
        structure.point_count,
        {
            "delta": (delta, q * q),
            "beta": (beta, (q + 1) * (q**3 - 1)),
            "gamma": (gamma, -q * q * (q + 1)),
        },
    )


def wt_block_complement(structure: IncidenceStructure, B: int) -> ZeroSumWeighting:
    """Weight k off the block B and -(v-k) on it."""
    block = frozenset(structure.lines[B])
    v, k = structure.point_count, len(block)
    return _from_classes(v, {"block": (block, -(v - k))}, default=("rest", k))


def wt_latin6_three_weight(
    A: OrthogonalArray, sub_columns: Iterable[int], beta: int
) -> ZeroSumWeighting:
    """7/4 on the OA(3,3) sub-points except ``beta``, -5 on ``beta``, -1 elsewhere."""
    if (A.m, A.n) != (3, 6):
        raise WeightingError("expected an OA(3,6)")
    cols = sorted(set(sub_columns))
    sub_pts = {p for c in cols for p in A.column_points(c)}
    per_row = [{p for p in sub_pts if p // A.n == r} for r in range(3)]
    if len(cols) != 9 or any(len(x) != 3 for x in per_row):
        raise WeightingError("sub_columns do not form an OA(3,3) subarray")
    pairs = {(A.column(c)[0], A.column(c)[1]) for c in cols}
    if len(pairs) != 9:
        raise WeightingError("sub_columns do not form an OA(3,3) subarray")
    if beta not in sub_pts:
        raise WeightingError("beta must be a point of the subarray")
    return _from_classes(
        18,
        {
            "delta": (sub_pts - {beta}, Fraction(7, 4)),
            "beta": ([beta], -5),
        },
        default=("gamma", -1),
    )


def wt_vls(geometry: AnnotatedStructure | None = None) -> ZeroSumWeighting:
    """66 on the 15 points of T, -15 on the other 66 points of the vLS geometry."""
    if geometry is None:
        from .constructors.sporadic import vls_geometry

        geometry = vls_geometry()
    structure = geometry.structure
    T = _checked_points(structure, geometry.sub_points, "T")
    if len(T) != 15 or structure.point_count != 81:
        raise WeightingError("expected the vLS geometry with its 15-point set T")
    return _from_classes(81, {"T": (T, 66)}, default=("rest", -15))
