"""Block designs: projective geometries, Steiner triple systems, the derived Witt design."""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Literal

from ..errors import ConstructionError
from ..fields import gf, is_prime_power
from ..geometry import AnnotatedStructure, IncidenceStructure, build_incidence


def _normalise(F, vec):
    for x in vec:
        if x:
            inv = F.inv(x)
            return tuple(F.mul(inv, y) for y in vec)
    raise ValueError("zero vector")


def projective_points(q: int, dim: int) -> list[tuple[int, ...]]:
    """Normalised representatives of the 1-spaces of GF(q)^dim."""
    F = gf(q)
    pts = set()
    for code in range(1, q**dim):
        vec = tuple((code // q**i) % q for i in range(dim))
        pts.add(_normalise(F, vec))
    return sorted(pts)


def projective_lines(q: int, points: list[tuple[int, ...]]) -> list[frozenset[int]]:
    """All 2-spaces, as sets of point indices."""
    F = gf(q)
    index = {p: i for i, p in enumerate(points)}
    lines = set()
    done = set()
    for a, b in combinations(range(len(points)), 2):
        if (a, b) in done:
            continue
        u, v = points[a], points[b]
        span = {a, b}
        for lam in range(1, q):
            w = tuple(F.add(x, F.mul(lam, y)) for x, y in zip(u, v))
            span.add(index[_normalise(F, w)])
        ln = frozenset(span)
        lines.add(ln)
        for pair in combinations(sorted(ln), 2):
            done.add(pair)
    return sorted(lines, key=sorted)


def projective_design(q: int, geometry: Literal["plane", "solid"] = "plane") -> AnnotatedStructure:
    """Points and lines of PG(2, q) or PG(3, q) as a 2-(v, q+1, 1) design.

    For the solid the annotation marks the plane x_3 = 0, an embedded
    2-(q^2+q+1, q+1, 1) subdesign.
    """
    if not is_prime_power(q):
        raise ConstructionError(f"{q} is not a prime power")
    if geometry not in ("plane", "solid"):
        raise ConstructionError(f"unknown geometry {geometry!r}")
    dim = 3 if geometry == "plane" else 4
    pts = projective_points(q, dim)
    lines = projective_lines(q, pts)
    structure = build_incidence(len(pts), [sorted(ln) for ln in lines])
    if geometry == "plane":
        return AnnotatedStructure(structure, name=f"PG(2,{q})")
    sub_pts = frozenset(i for i, p in enumerate(pts) if p[-1] == 0)
    sub_lines = frozenset(
        i for i, ln in enumerate(structure.lines) if sub_pts.issuperset(ln)
    )
    return AnnotatedStructure(structure, f"PG(3,{q})", sub_pts, sub_lines)


def fano_plane() -> IncidenceStructure:
    return build_incidence(
        7, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    )


def steiner_triple(v: int) -> IncidenceStructure:
    """STS(v) by the Bose (v = 3 mod 6) or Skolem (v = 1 mod 6) construction."""
    if v < 3 or v % 6 not in (1, 3) or v > 99:
        raise ConstructionError(f"no Steiner triple system construction for v={v}")
    if v % 6 == 3:
        return _bose(v)
    return _skolem(v)


def _bose(v):
    order = v // 3  # idempotent commutative quasigroup on Z_order, order odd
    half = (order + 1) // 2

    def op(x, y):
        return (x + y) * half % order

    def pt(x, i):
        return 3 * x + i

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(order)]
    for i in range(3):
        for x, y in combinations(range(order), 2):
            blocks.append([pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)])
    return build_incidence(v, blocks)


def _skolem(v):
    n = (v - 1) // 6
    order = 2 * n  # half-idempotent commutative quasigroup on Z_2n

    def op(x, y):
        s = (x + y) % order
        return s // 2 if s % 2 == 0 else (s - 1) // 2 + n

    inf = 3 * order

    def pt(x, i):
        return 3 * x + i

    blocks = [[pt(x, 0), pt(x, 1), pt(x, 2)] for x in range(n)]
    for x in range(n):
        for i in range(3):
            blocks.append([inf, pt(x + n, i), pt(x, (i + 1) % 3)])
    for i in range(3):
        for x, y in combinations(range(order), 2):
            blocks.append([pt(x, i), pt(y, i), pt(op(x, y), (i + 1) % 3)])
    return build_incidence(v, blocks)


def is_t_design(structure: IncidenceStructure, t: int, lam: int = 1) -> bool:
    """True if every t-subset of points lies in exactly ``lam`` blocks."""
    counts = Counter()
    for ln in structure.lines:
        counts.update(combinations(ln, t))
    n = structure.point_count
    total = 1
    for i in range(t):
        total = total * (n - i) // (i + 1)
    return len(counts) == total and set(counts.values()) == {lam}


def hyperovals_pg24() -> list[frozenset[int]]:
    """All 168 hyperovals (6-arcs) of PG(2, 4) as sets of point indices."""
    pts = projective_points(4, 3)
    lines = projective_lines(4, pts)
    on_line = {}
    for li, ln in enumerate(lines):
        for pair in combinations(sorted(ln), 2):
            on_line[pair] = li
    out = []

    def rec(chosen, start, used_lines):
        if len(chosen) == 6:
            out.append(frozenset(chosen))
            return
        for p in range(start, len(pts)):
            new = [on_line[(c, p)] for c in chosen]
            if any(li in used_lines for li in new):
                continue
            rec(chosen + [p], p + 1, used_lines | set(new))

    rec([], 0, frozenset())
    return out


def witt_derived_constructive() -> AnnotatedStructure:
    """3-(22,6,1) design: PG(2,4) plus a point at infinity.

    Blocks are the 21 extended lines and one class of 56 hyperovals, namely
    those meeting the lexicographically first hyperoval evenly.
    """
    pts = projective_points(4, 3)
    lines = projective_lines(4, pts)
    inf = len(pts)
    ovals = sorted(hyperovals_pg24(), key=sorted)
    h0 = ovals[0]
    cls = [h for h in ovals if len(h & h0) % 2 == 0]
    blocks = [sorted(ln) + [inf] for ln in lines] + [sorted(h) for h in cls]
    structure = build_incidence(inf + 1, blocks)
    if structure.line_count != 77 or not is_t_design(structure, 3):
        raise ConstructionError("hyperoval class does not give a 3-(22,6,1) design")
    b = 0
    return AnnotatedStructure(
        structure, "witt-derived 3-(22,6,1)", frozenset(structure.lines[b]), frozenset({b})
    )


def check_witt_derived(structure: IncidenceStructure) -> None:
    if structure.point_count != 22 or structure.line_count != 77:
        raise ConstructionError("expected 22 points and 77 blocks")
    if structure.line_sizes() != {6}:
        raise ConstructionError("blocks must have 6 points")
    if not is_t_design(structure, 3):
        raise ConstructionError("not a 3-design: some 3-subset is not in exactly one block")


def witt_derived_design(constructive: bool = False) -> AnnotatedStructure:
    """The 3-(22,6,1) design, from bundled data unless ``constructive``."""
    if constructive:
        return witt_derived_constructive()
    from ..io import load_bundled

    ann = load_bundled("witt22.blocks")
    check_witt_derived(ann.structure)
    return ann
