"""Incidence structures, partial-geometry validation, stars and spreads.

Points and lines are dense 0-based indices.  Every structure is immutable
once built, so it can be shared freely between worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    AlphaNotConstant,
    DuplicateLine,
    DuplicatePoint,
    EmptyLine,
    GeometryError,
    IndexOutOfRange,
    InvalidParameters,
    NonRegularPoints,
    NonUniformLines,
    PairOnTwoLines,
    TrivialGeometry,
)


@dataclass(frozen=True)
class IncidenceStructure:
    point_count: int
    lines: tuple[tuple[int, ...], ...]
    point_to_lines: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _index: dict = field(repr=False, compare=False, hash=False)

    @property
    def line_count(self) -> int:
        return len(self.lines)

    def index_of_line(self, points: Iterable[int]) -> int:
        """Return the canonical index of the line with exactly these points."""
        key = tuple(sorted(points))
        try:
            return self._index[key]
        except KeyError:
            raise GeometryError(f"no line with points {key}") from None

    def has_line(self, points: Iterable[int]) -> bool:
        return tuple(sorted(points)) in self._index

    def line_sizes(self) -> set[int]:
        return {len(ln) for ln in self.lines}

    def replications(self) -> set[int]:
        return {len(ls) for ls in self.point_to_lines}

    def line_masks(self) -> list[int]:
        """Bitmask of points for every line."""
        return [sum(1 << p for p in ln) for ln in self.lines]

    def adjacent_lines(self, line: int) -> set[int]:
        """Lines sharing at least one point with ``line``, excluding itself."""
        out = set()
        for p in self.lines[line]:
            out.update(self.point_to_lines[p])
        out.discard(line)
        return out

    def restrict(self, points: Iterable[int]) -> "IncidenceStructure":
        """Substructure on ``points`` keeping only lines contained in it (relabelled)."""
        pts = sorted(set(points))
        relabel = {p: i for i, p in enumerate(pts)}
        keep = [ln for ln in self.lines if all(p in relabel for p in ln)]
        return build_incidence(len(pts), [[relabel[p] for p in ln] for ln in keep])


def build_incidence(point_count: int, lines: Iterable[Iterable[int]]) -> IncidenceStructure:
    if point_count < 1:
        raise GeometryError("point_count must be positive")
    canon = []
    for raw in lines:
        pts = list(raw)
        if not pts:
            raise EmptyLine("lines must be nonempty")
        for p in pts:
            if not 0 <= p < point_count:
                raise IndexOutOfRange(f"point {p} out of range for {point_count} points")
        srt = tuple(sorted(pts))
        if len(set(srt)) != len(srt):
            raise DuplicatePoint(f"line {srt} repeats a point")
        canon.append(srt)
    canon.sort()
    for a, b in zip(canon, canon[1:]):
        if a == b:
            raise DuplicateLine(f"line {a} occurs twice")
    inverse: list[list[int]] = [[] for _ in range(point_count)]
    for i, ln in enumerate(canon):
        for p in ln:
            inverse[p].append(i)
    return IncidenceStructure(
        point_count=point_count,
        lines=tuple(canon),
        point_to_lines=tuple(tuple(ls) for ls in inverse),
        _index={ln: i for i, ln in enumerate(canon)},
    )


@dataclass(frozen=True)
class PgParams:
    s: int
    t: int
    alpha: int

    def __post_init__(self):
        if self.s < 0 or self.t < 0:
            raise InvalidParameters("s and t must be nonnegative")
        if self.alpha < 1:
            raise TrivialGeometry("alpha must be positive")
        if self.alpha > min(self.s + 1, self.t + 1):
            raise InvalidParameters(f"alpha={self.alpha} exceeds min(s+1, t+1)")
        pc, lc = self._counts()
        if pc.denominator != 1 or lc.denominator != 1:
            raise InvalidParameters(f"{self} gives non-integral point/line counts")

    def _counts(self):
        base = Fraction(self.s * self.t + self.alpha, self.alpha)
        return base * (self.s + 1), base * (self.t + 1)

    @property
    def line_size(self) -> int:
        return self.s + 1

    @property
    def star_size(self) -> int:
        return self.t + 1

    @property
    def point_count(self) -> int:
        return pg_counts(self)[0]

    @property
    def line_count(self) -> int:
        return pg_counts(self)[1]

    @property
    def spread_size(self) -> int:
        return (self.s * self.t + self.alpha) // self.alpha

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.s, self.t, self.alpha)


def pg_counts(params: PgParams) -> tuple[int, int]:
    """Point and line counts (st+a)(s+1)/a and (st+a)(t+1)/a."""
    pc, lc = params._counts()
    if pc.denominator != 1 or lc.denominator != 1:
        raise InvalidParameters("non-integral counts")
    return int(pc), int(lc)


def alpha_from(point_count: int, s: int, t: int) -> Fraction:
    if point_count <= s + 1:
        raise InvalidParameters("point_count must exceed s+1")
    return Fraction(t * s * (s + 1), point_count - s - 1)


def common_line_neighbours(params: PgParams, adjacent: bool) -> int:
    """Number of lines meeting both of two distinct lines."""
    s, t, a = params.as_tuple()
    if adjacent:
        return s * (a - 1) + (t - 1)
    return (s + 1) * a


def validate_regular_uniform(structure: IncidenceStructure) -> tuple[int, int]:
    """Return (line size, replication) or raise if either is not constant."""
    sizes = structure.line_sizes()
    if len(sizes) != 1:
        raise NonUniformLines(f"line sizes {sorted(sizes)}")
    reps = structure.replications()
    if len(reps) != 1:
        raise NonRegularPoints(f"replication numbers {sorted(reps)}")
    return sizes.pop(), reps.pop()


def validate_partial_geometry(structure: IncidenceStructure) -> PgParams:
    """Check the four partial-geometry axioms and return (s, t, alpha).

    Alpha must be the same for every non-incident (point, line) pair; an
    alpha of zero is rejected as a trivial geometry.
    """
    k, r = validate_regular_uniform(structure)
    seen_pairs: dict[tuple[int, int], int] = {}
    for i, ln in enumerate(structure.lines):
        for pair in combinations(ln, 2):
            if pair in seen_pairs:
                raise PairOnTwoLines(
                    f"points {pair} lie on lines {seen_pairs[pair]} and {i}"
                )
            seen_pairs[pair] = i
    masks = structure.line_masks()
    alpha = None
    for p in range(structure.point_count):
        through = structure.point_to_lines[p]
        for j, ln_mask in enumerate(masks):
            if ln_mask >> p & 1:
                continue
            a = sum(1 for m in through if masks[m] & ln_mask)
            if alpha is None:
                alpha = a
            elif a != alpha:
                raise AlphaNotConstant(
                    f"point {p} / line {j} gives alpha={a}, expected {alpha}"
                )
    if alpha is None:
        raise TrivialGeometry("every point is on every line; alpha is undefined")
    if alpha == 0:
        raise TrivialGeometry("alpha = 0: lines are pairwise disjoint")
    params = PgParams(k - 1, r - 1, alpha)
    if pg_counts(params) != (structure.point_count, structure.line_count):
        raise InvalidParameters("counts disagree with parameters")
    return params


def is_partial_geometry(structure: IncidenceStructure) -> bool:
    try:
        validate_partial_geometry(structure)
    except GeometryError:
        return False
    return True


def star_of(structure: IncidenceStructure, p: int) -> frozenset[int]:
    if not 0 <= p < structure.point_count:
        raise IndexOutOfRange(f"point {p} out of range")
    return frozenset(structure.point_to_lines[p])


def is_star(structure: IncidenceStructure, lines: Iterable[int]) -> bool:
    """True if ``lines`` is exactly the star of some point."""
    ls = frozenset(lines)
    if not ls:
        return False
    common = None
    for i in ls:
        pts = set(structure.lines[i])
        common = pts if common is None else common & pts
    return any(ls == frozenset(structure.point_to_lines[p]) for p in (common or ()))


def line_graph_census(structure: IncidenceStructure) -> dict[tuple[bool, int], int]:
    """Histogram of (adjacent?, #common neighbours) over all unordered line pairs."""
    nbrs = [structure.adjacent_lines(i) for i in range(structure.line_count)]
    hist: dict[tuple[bool, int], int] = {}
    for i, j in combinations(range(structure.line_count), 2):
        key = (j in nbrs[i], len(nbrs[i] & nbrs[j]))
        hist[key] = hist.get(key, 0) + 1
    return hist


@dataclass(frozen=True)
class SpreadPartition:
    spreads: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.spreads)

    def check(self, structure: IncidenceStructure) -> bool:
        used: set[int] = set()
        for sp in self.spreads:
            covered = [p for i in sp for p in structure.lines[i]]
            if sorted(covered) != list(range(structure.point_count)):
                return False
            if used & sp:
                return False
            used |= sp
        return used == set(range(structure.line_count))


def _spreads_containing(structure, first_line, allowed):
    """Yield every spread (exact point cover) using ``first_line`` and lines in ``allowed``."""
    lines = structure.lines
    covered = [False] * structure.point_count
    for p in lines[first_line]:
        covered[p] = True
    chosen = [first_line]

    def rec(start):
        p = start
        while p < len(covered) and covered[p]:
            p += 1
        if p == len(covered):
            yield frozenset(chosen)
            return
        for i in structure.point_to_lines[p]:
            if i not in allowed:
                continue
            if any(covered[q] for q in lines[i]):
                continue
            for q in lines[i]:
                covered[q] = True
            chosen.append(i)
            yield from rec(p + 1)
            chosen.pop()
            for q in lines[i]:
                covered[q] = False

    yield from rec(0)


def iter_spreads(structure: IncidenceStructure):
    """Every spread of the structure, each exactly once."""
    allowed = set(range(structure.line_count))
    for first in structure.point_to_lines[0]:
        yield from _spreads_containing(structure, first, allowed)


def find_spread_partition(structure: IncidenceStructure) -> SpreadPartition | None:
    """Partition the lines into spreads, or return None if impossible.

    Exact-cover backtracking that branches on the first uncovered point;
    no randomisation, so the answer depends only on the canonical line order.
    """
    k, r = validate_regular_uniform(structure)
    if structure.point_count % k:
        return None
    unused = set(range(structure.line_count))
    found: list[frozenset[int]] = []

    def rec():
        if not unused:
            return True
        first = min(unused)
        for sp in _spreads_containing(structure, first, unused):
            unused.difference_update(sp)
            found.append(sp)
            if rec():
                return True
            found.pop()
            unused.update(sp)
        return False

    if rec():
        return SpreadPartition(tuple(found))
    return None


def point_cover_number(structure: IncidenceStructure, limit: int | None = None) -> int:
    """Smallest number of lines whose union is the whole point set."""
    masks = structure.line_masks()
    full = (1 << structure.point_count) - 1
    k = max(len(ln) for ln in structure.lines)
    best = [limit if limit is not None else structure.line_count]

    def rec(covered, used):
        if covered == full:
            best[0] = min(best[0], used)
            return
        missing = structure.point_count - bin(covered).count("1")
        if used + -(-missing // k) >= best[0]:
            return
        p = (~covered & (covered + 1)).bit_length() - 1
        for i in structure.point_to_lines[p]:
            rec(covered | masks[i], used + 1)

    rec(0, 0)
    return best[0]


def points_of_lines(structure: IncidenceStructure, lines: Iterable[int]) -> set[int]:
    out: set[int] = set()
    for i in lines:
        out.update(structure.lines[i])
    return out


def lines_within(structure: IncidenceStructure, points: Sequence[int] | set[int]) -> list[int]:
    pts = set(points)
    return [i for i, ln in enumerate(structure.lines) if pts.issuperset(ln)]


@dataclass(frozen=True)
class AnnotatedStructure:
    """An incidence structure with one marked substructure (points and/or lines)."""

    structure: IncidenceStructure
    name: str = ""
    sub_points: frozenset[int] = frozenset()
    sub_lines: frozenset[int] = frozenset()

    def __post_init__(self):
        n, b = self.structure.point_count, self.structure.line_count
        if any(not 0 <= p < n for p in self.sub_points):
            raise IndexOutOfRange("annotated point out of range")
        if any(not 0 <= i < b for i in self.sub_lines):
            raise IndexOutOfRange("annotated line out of range")
