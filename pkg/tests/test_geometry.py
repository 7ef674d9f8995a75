from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pgmms.constructors import (
    cyclic_latin_square,
    fano_plane,
    gq_doily,
    latin_to_oa,
    oa_to_incidence,
    shifted_macneish,
    steiner_triple,
    vls_geometry,
    witt_derived_design,
)
from pgmms.errors import (
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
from pgmms.fields import GF, gf, is_prime_power, prime_power
from pgmms.geometry import (
    PgParams,
    SpreadPartition,
    alpha_from,
    build_incidence,
    common_line_neighbours,
    find_spread_partition,
    is_partial_geometry,
    is_star,
    iter_spreads,
    line_graph_census,
    pg_counts,
    point_cover_number,
    star_of,
    validate_partial_geometry,
    validate_regular_uniform,
)


def oa34():
    return oa_to_incidence(shifted_macneish(3).array)


GEOMETRIES = {
    "fano": (fano_plane, (2, 2, 3)),
    "doily": (gq_doily, (2, 2, 1)),
    "oa34": (oa34, (2, 3, 2)),
    "sts9": (lambda: steiner_triple(9), (2, 3, 3)),
    "vls": (lambda: vls_geometry().structure, (5, 5, 2)),
}


class TestFields:
    def test_prime_power_detection(self):
        assert prime_power(8) == (2, 3)
        assert prime_power(9) == (3, 2)
        assert prime_power(6) is None
        assert not is_prime_power(1)
        assert [q for q in range(2, 20) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19]

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
    def test_field_axioms(self, q):
        F = gf(q)
        for a in range(q):
            assert F.add(a, 0) == a and F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in range(q):
                assert F.sub(F.add(a, b), b) == a
                for c in range(q):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))

    def test_gf4_is_not_mod4(self):
        F = gf(4)
        assert F.mul(2, 2) != 0

    def test_rejects_non_prime_power(self):
        with pytest.raises(ValueError):
            GF(6)


class TestIncidence:
    def test_fano_valid(self):
        s = fano_plane()
        assert s.point_count == 7 and s.line_count == 7

    def test_duplicate_line(self):
        with pytest.raises(DuplicateLine):
            build_incidence(3, [[0, 1], [1, 0]])

    def test_other_build_errors(self):
        with pytest.raises(IndexOutOfRange):
            build_incidence(3, [[0, 3]])
        with pytest.raises(DuplicatePoint):
            build_incidence(3, [[0, 0]])
        with pytest.raises(EmptyLine):
            build_incidence(3, [[]])

    def test_canonical_order_and_index(self):
        s = build_incidence(4, [[3, 2], [1, 0]])
        assert s.lines == ((0, 1), (2, 3))
        assert s.index_of_line([3, 2]) == 1
        assert s.has_line([1, 0]) and not s.has_line([0, 2])
        with pytest.raises(GeometryError):
            s.index_of_line([0, 3])

    def test_oa34_display_columns(self):
        display = ["2011201102330233", "0101232301012323", "0110233223320110"]
        cols = [[r * 4 + int(display[r][c]) for r in range(3)] for c in range(16)]
        s = build_incidence(12, cols)
        assert validate_partial_geometry(s).as_tuple() == (2, 3, 2)

    def test_restrict(self):
        ann = vls_geometry()
        sub = ann.structure.restrict(range(10))
        assert sub.point_count == 10


class TestValidation:
    @pytest.mark.parametrize("name", list(GEOMETRIES))
    def test_parameters(self, name):
        build, expected = GEOMETRIES[name]
        s = build()
        p = validate_partial_geometry(s)
        assert p.as_tuple() == expected
        assert pg_counts(p) == (s.point_count, s.line_count)
        assert alpha_from(s.point_count, p.s, p.t) == p.alpha
        for q in range(s.point_count):
            assert len(star_of(s, q)) == p.star_size

    def test_witt_is_not_a_partial_geometry(self):
        s = witt_derived_design().structure
        with pytest.raises(PairOnTwoLines):
            validate_partial_geometry(s)
        assert validate_regular_uniform(s) == (6, 21)
        pair_count = sum(1 for ln in s.lines if {0, 1} <= set(ln))
        assert pair_count == 5

    def test_uniformity_errors(self):
        with pytest.raises(NonUniformLines):
            validate_regular_uniform(build_incidence(3, [[0, 1], [0, 1, 2]]))
        with pytest.raises(NonRegularPoints):
            validate_regular_uniform(build_incidence(4, [[0, 1], [0, 2], [0, 3]]))

    def test_alpha_zero_is_trivial(self):
        with pytest.raises(TrivialGeometry):
            validate_partial_geometry(build_incidence(4, [[0, 1], [2, 3]]))

    def test_alpha_not_constant(self):
        # two disjoint triangles' edges plus a perfect matching: uniform and regular
        lines = [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5], [0, 3], [1, 4], [2, 5]]
        with pytest.raises(AlphaNotConstant):
            validate_partial_geometry(build_incidence(6, lines))
        assert not is_partial_geometry(build_incidence(6, lines))

    def test_pgparams_checks(self):
        with pytest.raises(TrivialGeometry):
            PgParams(2, 2, 0)
        with pytest.raises(InvalidParameters):
            PgParams(2, 2, 4)
        with pytest.raises(InvalidParameters):
            PgParams(4, 4, 3)  # (st+a)(s+1)/a = 95/3

    def test_counts_examples(self):
        assert pg_counts(PgParams(5, 5, 2)) == (81, 81)
        assert pg_counts(PgParams(2, 2, 3)) == (7, 7)
        assert pg_counts(PgParams(2, 2, 1)) == (15, 15)

    def test_alpha_from_examples(self):
        assert alpha_from(81, 5, 5) == 2
        assert alpha_from(10, 2, 0) == 0
        assert alpha_from(12, 2, 3) == 2

    def test_common_neighbour_examples(self):
        p = PgParams(2, 3, 2)
        assert common_line_neighbours(p, adjacent=False) == 6
        assert common_line_neighbours(p, adjacent=True) == 4

    @pytest.mark.parametrize("name", list(GEOMETRIES))
    def test_line_graph_census(self, name):
        build, _ = GEOMETRIES[name]
        s = build()
        p = validate_partial_geometry(s)
        for (adjacent, common), _count in line_graph_census(s).items():
            assert common == common_line_neighbours(p, adjacent)


@st.composite
def pg_params(draw):
    s = draw(st.integers(1, 12))
    t = draw(st.integers(1, 12))
    a = draw(st.integers(1, min(s, t) + 1))
    return s, t, a


@given(pg_params())
@settings(max_examples=200)
def test_counts_alpha_roundtrip(params):
    s, t, a = params
    try:
        p = PgParams(s, t, a)
    except InvalidParameters:
        assume(False)
    n, b = pg_counts(p)
    assert alpha_from(n, s, t) == Fraction(a)
    # double counting of flags
    assert n * (t + 1) == b * (s + 1)


class TestStarsAndSpreads:
    def test_is_star(self):
        s = fano_plane()
        assert is_star(s, star_of(s, 0))
        assert not is_star(s, [0, 1])
        assert not is_star(s, [])

    def test_vls_stars(self):
        s = vls_geometry().structure
        assert {len(star_of(s, p)) for p in range(81)} == {6}

    def test_oa_star(self):
        sm = shifted_macneish(3)
        A = sm.array
        s = oa_to_incidence(A)
        point = A.point(0, 2)
        star = star_of(s, point)
        cols = [c for c in range(16) if A.rows[0][c] == 2]
        assert star == {s.index_of_line(A.column_points(c)) for c in cols}

    def test_cyclic3_resolvable(self):
        s = oa_to_incidence(latin_to_oa(cyclic_latin_square(3)))
        part = find_spread_partition(s)
        assert part is not None and part.check(s)
        assert len(part) == 3

    def test_fano_has_no_spread(self):
        s = fano_plane()
        assert find_spread_partition(s) is None
        assert list(iter_spreads(s)) == []

    def test_z4_not_resolvable(self):
        s = oa_to_incidence(latin_to_oa(cyclic_latin_square(4)))
        assert find_spread_partition(s) is None

    def test_sts9_parallel_classes(self):
        s = steiner_triple(9)
        part = find_spread_partition(s)
        assert part is not None and len(part) == 4 and part.check(s)

    def test_spread_partition_check_rejects_bad(self):
        s = steiner_triple(9)
        assert not SpreadPartition(((0, 1, 2),)).check(s)

    def test_point_cover_number(self):
        assert point_cover_number(fano_plane()) == 3
        assert point_cover_number(steiner_triple(9)) == 3
        assert point_cover_number(gq_doily()) == 5


def test_doily_has_no_triangles():
    s = gq_doily()
    collinear = set()
    for ln in s.lines:
        collinear.update(combinations(ln, 2))
    for a, b, c in combinations(range(15), 3):
        if {(a, b), (a, c), (b, c)} <= collinear:
            assert any({a, b, c} <= set(ln) for ln in s.lines)
