"""Regenerate the bundled data files in src/pgmms/data.

Deterministic: the Steiner triple systems come from a seeded hill climb
that keeps a fixed subsystem intact.  Run from the repository root:

    python3 scripts/generate_data.py
"""

from __future__ import annotations

import random
import sys
from itertools import combinations
from pathlib import Path

from pgmms.constructors import (
    LatinSquare,
    cyclic_latin_square,
    fano_plane,
    projective_design,
    steiner_triple,
    symmetric_group_square,
    witt_derived_constructive,
)
from pgmms.constructors.arrays import OrthogonalArray
from pgmms.geometry import AnnotatedStructure, build_incidence
from pgmms.io import format_incidence, format_latin, format_oa, load_bundled, write_text

DATA = Path(__file__).resolve().parent.parent / "src" / "pgmms" / "data"


def sts_with_subsystem(v: int, sub_blocks, seed: int) -> AnnotatedStructure:
    """Hill-climb a 2-(v,3,1) design containing ``sub_blocks`` on points 0..w-1."""
    rng = random.Random(seed)
    fixed = [tuple(sorted(b)) for b in sub_blocks]
    w = 1 + max(max(b) for b in fixed)
    pair_block: dict[frozenset, tuple] = {}
    blocks: set[tuple] = set()

    def add(b):
        blocks.add(b)
        for x, y in combinations(b, 2):
            pair_block[frozenset((x, y))] = b

    def remove(b):
        blocks.discard(b)
        for x, y in combinations(b, 2):
            del pair_block[frozenset((x, y))]

    for b in fixed:
        add(b)
    fixed_set = set(fixed)
    target = v * (v - 1) // 6
    steps = 0
    while len(blocks) < target:
        steps += 1
        if steps > 10**7:
            raise RuntimeError("hill climb did not converge")
        live = [x for x in range(v) if sum(frozenset((x, y)) in pair_block for y in range(v) if y != x) < v - 1]
        x = rng.choice(live)
        free = [y for y in range(v) if y != x and frozenset((x, y)) not in pair_block]
        y, z = rng.sample(free, 2)
        old = pair_block.get(frozenset((y, z)))
        if old is not None:
            if old in fixed_set:
                continue
            remove(old)
        add(tuple(sorted((x, y, z))))
    structure = build_incidence(v, sorted(blocks))
    sub_lines = frozenset(structure.index_of_line(b) for b in fixed)
    return AnnotatedStructure(structure, f"STS({v}) with STS({w})", frozenset(range(w)), sub_lines)


def switched_solid(q: int = 2) -> AnnotatedStructure:
    """PG(3,q) with one plane re-laid by a point transposition that moves one of its lines.

    The annotation is the moved line a (sub_points) and the other lines of
    a second plane through a (sub_lines); a is no longer a block.
    """
    ann = projective_design(q, "solid")
    s = ann.structure
    pi = ann.sub_points
    a = min(s.lines[i] for i in ann.sub_lines)
    off = sorted(set(range(s.point_count)) - pi)
    # second plane: span of a and the first point off pi
    r = off[0]
    pi2 = set(a) | {r}
    for p in a:
        for i in s.point_to_lines[p]:
            if r in s.lines[i]:
                pi2.update(s.lines[i])
    changed = True
    while changed:
        changed = False
        for x, y in combinations(sorted(pi2), 2):
            (i,) = set(s.point_to_lines[x]) & set(s.point_to_lines[y])
            if not pi2.issuperset(s.lines[i]):
                pi2.update(s.lines[i])
                changed = True
    assert len(pi2) == q * q + q + 1
    p = a[0]
    sigma = {p: r, r: p}
    new_lines = []
    for ln in s.lines:
        if pi2.issuperset(ln):
            new_lines.append(sorted(sigma.get(x, x) for x in ln))
        else:
            new_lines.append(list(ln))
    switched = build_incidence(s.point_count, new_lines)
    S = frozenset(
        switched.index_of_line(s.lines[i]) for i in ann.sub_lines if s.lines[i] != a
    )
    return AnnotatedStructure(switched, f"switched PG(3,{q})", frozenset(a), S)


OA34_DISPLAY = (
    "2011 2011 0233 0233",
    "0101 2323 0101 2323",
    "0110 2332 2332 0110",
)


def oa34_display() -> OrthogonalArray:
    rows = tuple(tuple(int(c) for c in "".join(r.split())) for r in OA34_DISPLAY)
    return OrthogonalArray(rows, 4)


SMALL_SQUARES = [
    ("order2", LatinSquare.from_rows([[0, 1], [1, 0]])),
    ("cyclic3", cyclic_latin_square(3)),
    ("cyclic4", cyclic_latin_square(4)),
    ("klein4", LatinSquare.from_rows([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])),
    ("cyclic5", cyclic_latin_square(5)),
    (
        "subsquare5",
        LatinSquare.from_rows(
            [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 3, 4, 0, 1], [3, 4, 1, 2, 0], [4, 2, 0, 1, 3]]
        ),
    ),
]

ORDER6_SQUARES = [
    ("cyclic6", cyclic_latin_square(6)),
    ("sym3", symmetric_group_square()),
]


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    files = {
        "witt22.blocks": format_incidence(witt_derived_constructive()),
        "sts19_fano.blocks": format_incidence(sts_with_subsystem(19, fano_plane().lines, seed=19)),
        "sts25_sts9.blocks": format_incidence(sts_with_subsystem(25, steiner_triple(9).lines, seed=25)),
        "jt2.blocks": format_incidence(switched_solid(2)),
        "oa34_counter.oa": format_oa(oa34_display()),
        "latin_small.lat": format_latin(SMALL_SQUARES),
        "latin6.lat": format_latin(ORDER6_SQUARES),
    }
    for name, text in files.items():
        write_text(DATA / name, text)
        load_bundled(name)
        print(f"wrote {name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
