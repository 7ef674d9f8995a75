"""Deciding the MMS and strict MMS star properties by exact LP search.

A candidate set Y of lines is *realisable* when some zero-sum weighting
gives every line outside Y weight <= -1 (strict negativity after scaling).
Realisability only gets easier as Y grows, and an infeasibility certificate
for Y (nonnegative multipliers on lines outside Y) rules out every Y' that
misses its support.  Both searches keep a cache of certificate supports and
only call the LP solver on candidates the cache cannot rule out.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Iterator, Literal, Sequence

from .errors import PgmmsError
from .fields import is_prime_power
from .geometry import (
    IncidenceStructure,
    is_star,
    point_cover_number,
    validate_regular_uniform,
)
from .lp import LinearSystem, lp_feasible
from .weightings import ZeroSumWeighting, evaluate


class VerificationError(PgmmsError):
    """An LP answer failed its independent re-check."""


@dataclass
class SearchStats:
    subsets_enumerated: int = 0
    subsets_pruned: int = 0
    symmetry_skipped: int = 0
    lp_calls: int = 0
    pivots: int = 0
    certificates_verified: int = 0
    witnesses_verified: int = 0
    levels: dict[int, int] = field(default_factory=dict)

    def merge_call(self, pivots, feasible):
        self.lp_calls += 1
        self.pivots += pivots
        if feasible:
            self.witnesses_verified += 1
        else:
            self.certificates_verified += 1

    def as_dict(self) -> dict:
        return {
            "subsets_enumerated": self.subsets_enumerated,
            "subsets_pruned": self.subsets_pruned,
            "symmetry_skipped": self.symmetry_skipped,
            "lp_calls": self.lp_calls,
            "pivots": self.pivots,
            "certificates_verified": self.certificates_verified,
            "witnesses_verified": self.witnesses_verified,
            "lp_calls_per_level": {str(k): v for k, v in sorted(self.levels.items())},
        }


def mms_system(structure: IncidenceStructure, free_lines: Iterable[int]) -> tuple[LinearSystem, list[int]]:
    """Zero-sum weighting with wt(l) <= -1 on every line not in ``free_lines``.

    Returns the system and the line index behind each inequality row.
    """
    free = set(free_lines)
    n = structure.point_count
    constrained = [i for i in range(structure.line_count) if i not in free]
    rows = []
    for i in constrained:
        row = [0] * n
        for p in structure.lines[i]:
            row[p] = 1
        rows.append(tuple(row))
    system = LinearSystem(
        n,
        eq_rows=((1,) * n,),
        eq_rhs=(0,),
        le_rows=tuple(rows),
        le_rhs=(-1,) * len(rows),
    )
    return system, constrained


def _solve(structure: IncidenceStructure, free_lines: tuple[int, ...]):
    """One verified LP call; returns (feasible, witness or support mask, pivots)."""
    system, constrained = mms_system(structure, free_lines)
    res = lp_feasible(system)
    if not res.verify(system):
        raise VerificationError(f"LP answer for free lines {free_lines} failed re-verification")
    if res.feasible:
        return True, res.witness, res.pivots
    mask = 0
    for row in res.certificate_support():
        mask |= 1 << constrained[row]
    return False, mask, res.pivots


_WORKER_STRUCTURE = None


def _worker_init(structure):
    global _WORKER_STRUCTURE
    _WORKER_STRUCTURE = structure


def _worker_solve(free_lines):
    return _solve(_WORKER_STRUCTURE, free_lines)


class _CertificateCache:
    """Supports of infeasibility certificates, most recently useful first."""

    def __init__(self):
        self.masks: list[int] = []

    def rules_out(self, mask: int) -> bool:
        for idx, cert in enumerate(self.masks):
            if not cert & mask:
                if idx > 8:
                    self.masks.insert(0, self.masks.pop(idx))
                return True
        return False

    def add(self, mask: int):
        self.masks.insert(0, mask)


def _mask(lines: Iterable[int]) -> int:
    m = 0
    for i in lines:
        m |= 1 << i
    return m


def _lex_smaller_image(subset: tuple[int, ...], automorphisms) -> bool:
    for g in automorphisms:
        if tuple(sorted(g[i] for i in subset)) < subset:
            return True
    return False


class _Solver:
    """Batch-synchronous LP dispatcher; results do not depend on the worker count."""

    def __init__(self, structure, jobs, batch_size, stats):
        self.structure = structure
        self.stats = stats
        self.batch_size = max(1, batch_size)
        self.pool = None
        if jobs and jobs > 1:
            self.pool = ProcessPoolExecutor(
                max_workers=jobs, initializer=_worker_init, initargs=(structure,)
            )

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def solve_batch(self, batch: list[tuple[int, ...]]):
        if not batch:
            return []
        if self.pool is None:
            out = [_solve(self.structure, s) for s in batch]
        else:
            out = list(self.pool.map(_worker_solve, batch))
        for feasible, _, pivots in out:
            self.stats.merge_call(pivots, feasible)
        return out

    def search(self, candidates: Iterator[tuple[int, ...]], cache: _CertificateCache, automorphisms=None):
        """Return (subset, witness) for the first realisable candidate, or None."""
        while True:
            chunk = list(islice(candidates, self.batch_size))
            if not chunk:
                return None
            todo = []
            for subset in chunk:
                self.stats.subsets_enumerated += 1
                if automorphisms and _lex_smaller_image(subset, automorphisms):
                    self.stats.symmetry_skipped += 1
                    continue
                if cache.rules_out(_mask(subset)):
                    self.stats.subsets_pruned += 1
                    continue
                todo.append(subset)
            results = self.solve_batch(todo)
            hit = None
            for subset, (feasible, payload, _) in zip(todo, results):
                if feasible:
                    if hit is None:
                        hit = (subset, payload)
                else:
                    cache.add(payload)
            if hit is not None:
                return hit


@dataclass(frozen=True)
class MmsVerdict:
    """Outcome of the minimum-nonnegative-lines search.

    ``min_nonneg`` is exact when ``exact`` is true; otherwise every k up to
    the cutoff was ruled out and ``min_nonneg`` is the lower bound cutoff+1.
    """

    min_nonneg: int
    exact: bool
    star_size: int
    has_mms_star: bool | None
    witness: ZeroSumWeighting | None
    nonnegative_lines: frozenset[int] | None
    cutoff: int
    stats: SearchStats
    witness_is_star: bool | None = None


def min_nonnegative_lines(
    structure: IncidenceStructure,
    cutoff: int | None = None,
    jobs: int = 1,
    batch_size: int = 8,
    automorphisms: Sequence[Sequence[int]] | None = None,
) -> MmsVerdict:
    """Least number of nonnegative lines over all zero-sum weightings.

    Tries k = 1, 2, ... up to ``cutoff`` (default: the star size); line
    subsets of each size are visited in lexicographic order and the first
    realisable one supplies the witness.  ``automorphisms`` (line
    permutations) enable optional symmetry skipping.
    """
    _, star = validate_regular_uniform(structure)
    if cutoff is None:
        cutoff = star
    stats = SearchStats()
    cache = _CertificateCache()
    solver = _Solver(structure, jobs, batch_size, stats)
    try:
        for k in range(1, cutoff + 1):
            before = stats.lp_calls
            hit = solver.search(combinations(range(structure.line_count), k), cache, automorphisms)
            stats.levels[k] = stats.lp_calls - before
            if hit is None:
                continue
            subset, witness = hit
            w = ZeroSumWeighting(tuple(witness)).integral()
            prof = evaluate(structure, w)
            if prof.nonneg_count != k or not prof.nonnegative <= set(subset):
                raise VerificationError(
                    f"witness has {prof.nonneg_count} nonnegative lines, expected {k}"
                )
            return MmsVerdict(
                min_nonneg=k,
                exact=True,
                star_size=star,
                has_mms_star=k >= star,
                witness=w,
                nonnegative_lines=prof.nonnegative,
                cutoff=cutoff,
                stats=stats,
                witness_is_star=is_star(structure, prof.nonnegative),
            )
    finally:
        solver.close()
    bound = cutoff + 1
    return MmsVerdict(
        min_nonneg=bound,
        exact=False,
        star_size=star,
        has_mms_star=True if bound >= star else None,
        witness=None,
        nonnegative_lines=None,
        cutoff=cutoff,
        stats=stats,
    )


def subset_realisable(structure: IncidenceStructure, free_lines: Iterable[int]):
    """Single verified LP: can every line outside ``free_lines`` be made negative?"""
    feasible, payload, _ = _solve(structure, tuple(sorted(free_lines)))
    return feasible, payload


def weighting_refutes_strict(structure: IncidenceStructure, w: ZeroSumWeighting) -> bool:
    """True iff every point lies on at least one strictly negative line."""
    prof = evaluate(structure, w)
    return all(
        any(prof.line_weights[i] < 0 for i in structure.point_to_lines[p])
        for p in range(structure.point_count)
    )


@dataclass(frozen=True)
class StrictVerdict:
    status: Literal["holds", "refuted", "unknown"]
    limit: int
    max_star_free: int | None
    witness: ZeroSumWeighting | None
    nonnegative_lines: frozenset[int] | None
    stats: SearchStats


def _cliques(structure, limit) -> list[tuple[int, ...]]:
    nbrs = [structure.adjacent_lines(i) for i in range(structure.line_count)]
    out = [()]

    def rec(clique, cand):
        for j in sorted(cand):
            new = clique + (j,)
            out.append(new)
            if len(new) < limit:
                rec(new, {c for c in cand if c > j and c in nbrs[j]})

    if limit > 0:
        rec((), set(range(structure.line_count)))
    return out


def strict_mms_decide(
    structure: IncidenceStructure,
    cover_size_limit: int,
    jobs: int = 1,
    batch_size: int = 8,
) -> StrictVerdict:
    """Search for a zero-sum weighting whose nonnegative lines contain no full star.

    Candidates are star-free line sets Y with |Y| <= ``cover_size_limit``;
    their complements are exactly the line sets covering every point.
    Pairwise-intersecting candidates are tried first, then the rest, each
    group largest first.  The verdict is ``holds`` only when the limit
    reaches the largest star-free set, so the search was exhaustive.
    """
    validate_regular_uniform(structure)
    limit = max(0, cover_size_limit)
    star_masks = [_mask(structure.point_to_lines[p]) for p in range(structure.point_count)]

    def star_free(subset):
        m = _mask(subset)
        return not any(sm & m == sm for sm in star_masks)

    stats = SearchStats()
    cache = _CertificateCache()
    cliques = [c for c in _cliques(structure, limit) if star_free(c)]
    cliques.sort(key=lambda c: (-len(c), c))
    clique_set = set(cliques)

    def others():
        for k in range(min(limit, structure.line_count), -1, -1):
            for subset in combinations(range(structure.line_count), k):
                if subset not in clique_set and star_free(subset):
                    yield subset

    solver = _Solver(structure, jobs, batch_size, stats)
    try:
        hit = solver.search(iter(cliques), cache)
        if hit is None:
            hit = solver.search(others(), cache)
    finally:
        solver.close()
    if hit is not None:
        w = ZeroSumWeighting(tuple(hit[1])).integral()
        if not weighting_refutes_strict(structure, w):
            raise VerificationError("strict refutation witness does not refute")
        return StrictVerdict("refuted", limit, None, w, evaluate(structure, w).nonnegative, stats)
    max_free = structure.line_count - point_cover_number(structure)
    status = "holds" if limit >= max_free else "unknown"
    return StrictVerdict(status, limit, max_free, None, None, stats)


@dataclass(frozen=True)
class ConditionReport:
    kind: str
    params: dict
    conditions: dict[str, bool]

    @property
    def applicable(self) -> bool:
        return all(self.conditions.values())


def check_construction_conditions(kind: str, **params) -> ConditionReport:
    """Evaluate the hypotheses of a named counterexample construction.

    kinds and parameters: ``two-weight``, ``two-weight-boundary``,
    ``three-weight`` (v, w, k); ``sts-embedding`` (v, w); ``oa-subarray``
    (m, n, n_sub); ``shifted-macneish`` (m); ``jt-design`` (q).
    """
    p = params
    if kind == "two-weight":
        v, w, k = p["v"], p["w"], p["k"]
        cond = {"v < k*w": v < k * w, "w^2 - w < k(v-1)": w * w - w < k * (v - 1)}
    elif kind == "two-weight-boundary":
        v, w, k = p["v"], p["w"], p["k"]
        cond = {"v < k*w": v < k * w, "w^2 - w <= k(v-1)": w * w - w <= k * (v - 1)}
    elif kind == "three-weight":
        v, w, k = p["v"], p["w"], p["k"]
        cond = {
            "w > k": w > k,
            "v < (k-1)(w-k) + k": v < (k - 1) * (w - k) + k,
            "v < (w-k)(w-1)/k + 1": Fraction(v) < Fraction((w - k) * (w - 1), k) + 1,
        }
    elif kind == "sts-embedding":
        v, w = p["v"], p["w"]
        cond = {
            "w = 1 or 3 (mod 6)": w % 6 in (1, 3),
            "v >= 2w + 1": v >= 2 * w + 1,
            "v = 1 or 3 (mod 6)": v % 6 in (1, 3),
        }
    elif kind == "oa-subarray":
        m, n, n_sub = p["m"], p["n"], p["n_sub"]
        cond = {"n < m*n'": n < m * n_sub, "n'^2 < n": n_sub * n_sub < n}
    elif kind == "shifted-macneish":
        m = p["m"]
        cond = {"m >= 3": m >= 3, "m-1 is a prime power": is_prime_power(m - 1)}
    elif kind == "jt-design":
        cond = {"q is a prime power": is_prime_power(p["q"])}
    else:
        raise ValueError(f"unknown construction {kind!r}")
    return ConditionReport(kind, dict(params), cond)


def elapsed(fn, *args, **kwargs):
    """Run ``fn`` and return (result, seconds)."""
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0
