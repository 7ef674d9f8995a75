import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgmms.bounds import (
    GQ_LABEL,
    Surd,
    bound_design,
    bound_oa,
    bound_pg,
    bound_pg_strict,
    pg_verdict,
    threshold_asymptotic,
)
from pgmms.errors import BoundError


def approx(surd):
    return float(surd.rational) + float(surd.coefficient) * math.sqrt(surd.radicand)


class TestSurd:
    def test_perfect_square_collapses(self):
        s = Surd.make(1, 2, 9)
        assert s.is_rational and s.compare(7) == 0

    def test_square_factor_extracted(self):
        s = Surd.make(0, 1, 12)
        assert (s.coefficient, s.radicand) == (2, 3)

    def test_decimal_rounding(self):
        assert Surd.make(0, 1, 2).decimal() == "1.414214"
        assert Surd.make(Fraction(1, 8)).decimal(2) == "0.13"
        assert Surd.make(7).decimal() == "7.000000"
        assert Surd.make(0, -1, 2).decimal(3) == "-1.414"

    def test_add(self):
        s = Surd.make(Fraction(1, 2), Fraction(1, 2), 5) + 1
        assert s.rational == Fraction(3, 2)

    @given(
        st.fractions(min_value=-50, max_value=50, max_denominator=12),
        st.fractions(min_value=-5, max_value=5, max_denominator=6),
        st.integers(0, 500),
        st.integers(-200, 200),
    )
    @settings(max_examples=400)
    def test_compare_matches_floats(self, a, b, r, x):
        s = Surd.make(a, b, r)
        f = approx(s)
        if abs(f - x) > 1e-9:
            assert s.compare(x) == (1 if f > x else -1)

    @given(st.integers(0, 40), st.integers(1, 4))
    def test_exact_ties(self, n, c):
        # (c*n) - c*sqrt(n^2) = 0 exactly
        assert Surd.make(c * n, -c, n * n).compare(0) == 0


class TestPgBounds:
    def test_oa_values(self):
        assert bound_oa(3).threshold.compare(7) == 0
        assert bound_oa(4).threshold.compare(17) == 0

    @pytest.mark.parametrize("m", range(3, 13))
    def test_oa_is_pg_specialisation(self, m):
        assert bound_pg(m - 1, m - 1).threshold == bound_oa(m).threshold

    def test_strict_examples(self):
        mathon = bound_pg_strict(8, 2)
        assert mathon.threshold.decimal() == "15.844289"
        assert mathon.verdict(20) == "holds"
        haemers = bound_pg_strict(4, 2)
        assert haemers.threshold.decimal() == "10.424429"
        assert haemers.verdict(17) == "holds"
        vls = bound_pg_strict(5, 2)
        assert vls.threshold.decimal() == "11.815073"
        assert vls.side_condition == 13
        assert vls.verdict(5) == "inconclusive"

    def test_alpha_one_is_gq(self):
        with pytest.raises(BoundError, match=GQ_LABEL):
            bound_pg(2, 1)
        assert pg_verdict(2, 2, 1) == "holds"

    def test_alpha_zero_rejected(self):
        with pytest.raises(BoundError):
            bound_pg(2, 0)

    @given(st.integers(1, 40), st.integers(2, 10))
    def test_threshold_matches_float_formula(self, s, a):
        rep = bound_pg(s, a)
        R = (8 * a * a - 8 * a) * s + 20 * a * a - 36 * a + 9
        want = (math.sqrt(R) + (2 * a - 2) * s + 4 * a - 5) / 2
        assert approx(rep.threshold) == pytest.approx(want, rel=1e-12)

    def test_non_strict_boundary(self):
        rep = bound_oa(3)
        assert not rep.guarantees(7) and rep.guarantees(8)
        # pg form: t >= threshold suffices
        assert bound_pg(2, 2).guarantees(7)


class TestDesignBound:
    def test_k3(self):
        rep = bound_design(3)
        assert rep.threshold == Surd.make(27, 1, 177)
        assert rep.threshold.decimal() == "40.304135"
        assert rep.verdict(19) == "inconclusive"
        assert rep.verdict(41) == "holds"

    @pytest.mark.parametrize("k", range(2, 10))
    def test_published_form_is_looser(self, k):
        rep = bound_design(k)
        assert rep.threshold.compare(0) > 0
        diff = rep.threshold.rational - rep.extra["from_pg"].rational
        assert diff == 5 * (k - 1) - 1 > 0

    def test_small_k_rejected(self):
        with pytest.raises(BoundError):
            bound_design(1)


def test_asymptotic_threshold():
    assert threshold_asymptotic(2, 2).threshold.compare(8) == 0
    assert threshold_asymptotic(8, 2).threshold.compare(24) == 0
    with pytest.raises(BoundError):
        threshold_asymptotic(3, 0)


def test_bounds_agree_with_computed_minima():
    # (s, t, alpha, computed min_nonneg, star size) from the independent oracle
    cases = [
        (2, 2, 1, 3, 3),  # doily
        (2, 3, 3, 4, 4),  # STS(9)
        (2, 3, 2, 3, 4),  # OA(3,4) display
        (2, 2, 2, 3, 3),  # cyclic order 3
        (2, 3, 2, 3, 4),  # cyclic order 4
        (2, 4, 2, 5, 5),  # cyclic order 5
        (2, 4, 2, 4, 5),  # order 5 with a subsquare
    ]
    for s, t, a, got, star in cases:
        if pg_verdict(s, t, a) == "holds":
            assert got >= star
