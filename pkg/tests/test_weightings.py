import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgmms.constructors import (
    fano_plane,
    gq_doily,
    latin_subsquares,
    latin_to_oa,
    oa_to_incidence,
    shifted_macneish,
    steiner_triple,
    subsquare_columns,
    subsquare_points,
    vls_geometry,
)
from pgmms.errors import WeightingError
from pgmms.geometry import build_incidence, is_star, validate_partial_geometry
from pgmms.io import load_bundled
from pgmms.weightings import (
    ZeroSumWeighting,
    check_line_identity,
    evaluate,
    wt_block_complement,
    wt_jt_design,
    wt_latin6_three_weight,
    wt_oa_punctured,
    wt_three_weight_subdesign,
    wt_two_weight_embedding,
    wt_vls,
)


def test_zero_sum_enforced():
    with pytest.raises(WeightingError):
        ZeroSumWeighting.of([1, 2])
    assert ZeroSumWeighting.of([1, -1]).weights == (1, -1)


def test_all_zero_on_fano():
    s = fano_plane()
    prof = evaluate(s, ZeroSumWeighting.of([0] * 7))
    assert prof.nonneg_count == 7
    assert set(prof.line_weights) == {0}
    rep = check_line_identity(s, validate_partial_geometry(s), ZeroSumWeighting.of([0] * 7))
    assert rep.holds and set(rep.lhs) == set(rep.rhs) == {0}


def test_length_mismatch():
    with pytest.raises(WeightingError):
        evaluate(fano_plane(), ZeroSumWeighting.of([1, -1]))


def test_integral_scaling():
    w = ZeroSumWeighting.of([Fraction(1, 2), Fraction(-1, 3), Fraction(-1, 6)])
    assert w.integral().weights == (3, -2, -1)


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9), min_size=6, max_size=6),
       st.fractions(min_value=Fraction(1, 9), max_value=50, max_denominator=9))
@settings(max_examples=100)
def test_positive_scaling_keeps_nonnegative_set(vals, factor):
    s = fano_plane()
    w = ZeroSumWeighting.of(vals + [-sum(vals)])
    assert evaluate(s, w).nonnegative == evaluate(s, w.scaled(factor)).nonnegative


def test_identity_detects_non_geometry_violation():
    # on a structure that is not a partial geometry the identity can fail
    s = build_incidence(4, [[0, 1], [1, 2], [2, 3], [3, 0]])
    params = validate_partial_geometry(s)
    w = ZeroSumWeighting.of([3, -1, -1, -1])
    assert check_line_identity(s, params, w).holds


@pytest.mark.parametrize(
    "build",
    [fano_plane, gq_doily, lambda: steiner_triple(9), lambda: oa_to_incidence(shifted_macneish(3).array)],
)
def test_identity_random(build):
    s = build()
    p = validate_partial_geometry(s)
    rng = random.Random(3)
    for _ in range(25):
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(s.point_count - 1)]
        w = ZeroSumWeighting.of(vals + [-sum(vals)])
        assert check_line_identity(s, p, w).holds


class TestTwoWeight:
    def test_sts19(self):
        ann = load_bundled("sts19_fano.blocks")
        w = wt_two_weight_embedding(ann.structure, ann.sub_points)
        assert set(w.weights) == {12, -7}
        prof = evaluate(ann.structure, w)
        assert prof.nonneg_count == 7
        assert prof.nonnegative == ann.sub_lines

    def test_sts25(self):
        ann = load_bundled("sts25_sts9.blocks")
        w = wt_two_weight_embedding(ann.structure, ann.sub_points)
        assert evaluate(ann.structure, w).nonneg_count == 12

    def test_order5_subsquare(self):
        L = dict(load_bundled("latin_small.lat"))["subsquare5"]
        rows, cols = latin_subsquares(L, 2)[0]
        s = oa_to_incidence(latin_to_oa(L))
        pts = subsquare_points(L, rows, cols)
        assert len(pts) == 6
        assert evaluate(s, wt_two_weight_embedding(s, pts)).nonneg_count == 4

    def test_bad_subsets(self):
        with pytest.raises(WeightingError):
            wt_two_weight_embedding(fano_plane(), [])
        with pytest.raises(WeightingError):
            wt_two_weight_embedding(fano_plane(), range(7))


class TestThreeWeight:
    @pytest.mark.parametrize("v,w,k", [(19, 9, 3), (25, 9, 3), (40, 13, 4), (15, 7, 3)])
    def test_symbolic_block_weights(self, v, w, k):
        # sub-blocks through the special point weigh -(w-k); the others k(v-k)/(w-k)
        x = Fraction(v - k, w - k)
        special = (v - w) - (w - 1) * x
        assert special + (k - 1) * x == -(w - k)
        assert k * x == Fraction(k * (v - k), w - k) > 0
        assert special + (w - 1) * x - (v - w) == 0

    def test_fails_at_19_9_3(self):
        ann = projective_design_sts19_sts9()
        s = ann.structure
        special = min(ann.sub_points)
        w = wt_three_weight_subdesign(s, ann.sub_points, special, 3)
        assert sum(w.weights) == 0
        prof = evaluate(s, w)
        outside = [i for i in prof.nonnegative if not ann.sub_points.issuperset(s.lines[i])]
        assert outside, "a block with one sub-point should be nonnegative here"
        assert Fraction(2, 3) in {prof.line_weights[i] for i in outside}

    def test_requires_w_greater_than_k(self):
        with pytest.raises(WeightingError):
            wt_three_weight_subdesign(fano_plane(), [0, 1, 2], 0, 3)


def projective_design_sts19_sts9():
    """An STS(19) containing STS(9) on points 0..8, built like the bundled files."""
    import importlib.util
    import pathlib

    path = pathlib.Path(__file__).resolve().parent.parent / "scripts" / "generate_data.py"
    spec = importlib.util.spec_from_file_location("generate_data", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod.sts_with_subsystem(19, steiner_triple(9).lines, seed=199)


class TestOaPunctured:
    def _run(self, m):
        sm = shifted_macneish(m)
        A = sm.array
        s = oa_to_incidence(A)
        delta = [A.point(r, x) for r, x in enumerate(sm.missing_column)]
        return s, wt_oa_punctured(A, sm.punctured_columns, delta)

    def test_m3(self):
        s, w = self._run(3)
        assert sorted(set(w.weights)) == [-3, 1, 5]
        prof = evaluate(s, w)
        assert prof.nonneg_count == 3
        assert all(x <= -1 for x in prof.line_weights if x < 0)

    def test_m4(self):
        s, w = self._run(4)
        prof = evaluate(s, w)
        assert prof.nonneg_count == 8
        assert len(s.point_to_lines[0]) == 9

    def test_wrong_deleted_points(self):
        sm = shifted_macneish(3)
        with pytest.raises(WeightingError):
            wt_oa_punctured(sm.array, sm.punctured_columns, [0, 4])
        with pytest.raises(WeightingError):
            wt_oa_punctured(sm.array, sm.punctured_columns[1:], [0, 4, 8])


class TestJt:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_zero_sum_identity(self, q):
        total = (q + 1) * q * q + q * q * (q + 1) * (q**3 - 1) - q**3 * q * q * (q + 1)
        assert total == 0

    def test_bundled_host(self):
        ann = load_bundled("jt2.blocks")
        w = wt_jt_design(ann.structure, ann.sub_lines, ann.sub_points, 2)
        prof = evaluate(ann.structure, w)
        assert prof.nonneg_count == 6 and prof.nonnegative == ann.sub_lines
        cls = dict(zip(w.classes, w.weights))
        assert cls == {"delta": 4, "beta": 21, "gamma": -12}
        # one beta point and q gamma points: -(q+1)
        by_labels = {}
        for i, ln in enumerate(ann.structure.lines):
            labels = tuple(sorted(w.classes[p] for p in ln))
            by_labels.setdefault(labels, set()).add(prof.line_weights[i])
        assert by_labels[("beta", "gamma", "gamma")] == {-3}
        assert all(max(ws) < 0 for labels, ws in by_labels.items() if labels.count("beta") < 2)
        assert prof.histogram() == {46: 6, -3: 16, -4: 3, -20: 9, -36: 1}

    def test_class_size_mismatch(self):
        ann = load_bundled("jt2.blocks")
        with pytest.raises(WeightingError):
            wt_jt_design(ann.structure, ann.sub_lines, ann.sub_points, 3)


class TestBlockComplement:
    def test_witt_weights(self):
        ann = load_bundled("witt22.blocks")
        (b,) = ann.sub_lines
        w = wt_block_complement(ann.structure, b)
        assert sorted(set(w.weights)) == [-16, 6]
        prof = evaluate(ann.structure, w)
        assert prof.line_weights[b] == -96
        assert {x: c for x, c in prof.histogram().items()} == {36: 16, -8: 60, -96: 1}


class TestLatin6:
    def test_weights(self):
        L = dict(load_bundled("latin6.lat"))["sym3"]
        rows, cols = latin_subsquares(L, 3)[0]
        A = latin_to_oa(L)
        s = oa_to_incidence(A)
        w = wt_latin6_three_weight(A, subsquare_columns(L, rows, cols), min(subsquare_points(L, rows, cols)))
        assert 8 * Fraction(7, 4) - 5 - 9 == 0
        prof = evaluate(s, w)
        assert prof.nonneg_count == 6
        assert {prof.line_weights[i] for i in prof.nonnegative} == {Fraction(21, 4)}
        assert max(x for x in prof.line_weights if x < 0) <= Fraction(7, 4) - 2

    def test_bad_subarray(self):
        L = dict(load_bundled("latin6.lat"))["cyclic6"]
        with pytest.raises(WeightingError):
            wt_latin6_three_weight(latin_to_oa(L), range(9), 0)


class TestVls:
    def test_profile(self):
        ann = vls_geometry()
        w = wt_vls(ann)
        prof = evaluate(ann.structure, w)
        assert prof.nonneg_count == 6
        assert {prof.line_weights[i] for i in prof.nonnegative} == {315}
        assert max(x for x in prof.line_weights if x < 0) <= 66 - 75
        assert not is_star(ann.structure, prof.nonnegative)
        assert wt_vls() == w
