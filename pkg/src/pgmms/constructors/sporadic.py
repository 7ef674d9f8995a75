"""The generalized quadrangle W(2) and the van Lint-Schrijver geometry."""

from __future__ import annotations

from itertools import combinations, product

from ..geometry import AnnotatedStructure, IncidenceStructure, build_incidence


def gq_doily() -> IncidenceStructure:
    """GQ(2,2): 2-subsets of a 6-set as points, perfect matchings as lines."""
    pairs = list(combinations(range(6), 2))
    index = {p: i for i, p in enumerate(pairs)}
    lines = []
    for a, b in pairs:
        if a != 0:
            continue
        rest = [x for x in range(6) if x not in (a, b)]
        c = rest[0]
        for d in rest[1:]:
            e, f = [x for x in rest if x not in (c, d)]
            lines.append([index[(a, b)], index[(c, d)], index[(e, f)]])
    return build_incidence(len(pairs), lines)


def _canon(vec):
    # coset representative of vec + <(1,...,1)> in Z_3^6 with first coordinate 0
    a = vec[0]
    return tuple((x - a) % 3 for x in vec)


def vls_geometry() -> AnnotatedStructure:
    """The (5,5,2) partial geometry on cosets of the all-ones subgroup of Z_3^6.

    Points have coordinate sum 0, lines sum 1; the line b+G carries the six
    points b - e_i + G.  The annotation marks the six lines through the
    coset x0 = (1,1,0,0,0,0)+G (sub_lines) and the 15 points they share
    pairwise (sub_points).
    """
    reps = sorted({_canon(v) for v in product(range(3), repeat=6)})
    pts = [v for v in reps if sum(v) % 3 == 0]
    lns = [v for v in reps if sum(v) % 3 == 1]
    pindex = {v: i for i, v in enumerate(pts)}

    def minus_e(vec, i):
        w = list(vec)
        w[i] = (w[i] - 1) % 3
        return _canon(w)

    lines = [[pindex[minus_e(b, i)] for i in range(6)] for b in lns]
    structure = build_incidence(len(pts), lines)

    x0 = (1, 1, 0, 0, 0, 0)
    s_lines = [minus_e(x0, i) for i in range(6)]
    s_idx = frozenset(structure.index_of_line(pindex[minus_e(b, i)] for i in range(6)) for b in s_lines)
    t_pts = frozenset(
        pindex[minus_e(minus_e(x0, i), j)] for i, j in combinations(range(6), 2)
    )
    return AnnotatedStructure(structure, "vLS(5,5,2)", t_pts, s_idx)
