import random
from itertools import permutations

import pytest

from pgmms.constructors import (
    cyclic_latin_square,
    fano_plane,
    gq_doily,
    latin_to_oa,
    oa_to_incidence,
    shifted_macneish,
    steiner_triple,
    vls_geometry,
)
from pgmms.geometry import find_spread_partition
from pgmms.verifier import (
    check_construction_conditions,
    min_nonnegative_lines,
    mms_system,
    strict_mms_decide,
    subset_realisable,
    weighting_refutes_strict,
)
from pgmms.weightings import evaluate, wt_vls


def oa34():
    return oa_to_incidence(shifted_macneish(3).array)


def line_automorphisms(structure, point_maps):
    """Line permutations induced by the point maps that preserve the line set."""
    out = []
    for pm in point_maps:
        image = []
        for ln in structure.lines:
            mapped = sorted(pm[p] for p in ln)
            if not structure.has_line(mapped):
                break
            image.append(structure.index_of_line(mapped))
        else:
            out.append(tuple(image))
    return out


class TestMinNonneg:
    def test_doily(self):
        v = min_nonnegative_lines(gq_doily())
        assert (v.min_nonneg, v.exact, v.star_size, v.has_mms_star) == (3, True, 3, True)
        assert v.witness_is_star

    def test_oa34_has_non_star_witness(self):
        v = min_nonnegative_lines(oa34())
        assert v.min_nonneg == 3 and v.star_size == 4 and v.has_mms_star is False

    def test_witness_reevaluates(self):
        s = steiner_triple(9)
        v = min_nonnegative_lines(s)
        prof = evaluate(s, v.witness)
        assert sum(v.witness.weights) == 0
        assert prof.nonnegative == v.nonnegative_lines
        assert prof.nonneg_count == v.min_nonneg

    def test_cutoff_gives_lower_bound(self):
        v = min_nonnegative_lines(gq_doily(), cutoff=2)
        assert not v.exact and v.min_nonneg == 3 and v.has_mms_star is True
        assert v.witness is None
        w = min_nonnegative_lines(oa34(), cutoff=2)
        assert not w.exact and w.has_mms_star is None

    def test_stats_accounting(self):
        v = min_nonnegative_lines(gq_doily())
        st = v.stats
        assert st.lp_calls == sum(st.levels.values())
        assert st.certificates_verified + st.witnesses_verified == st.lp_calls
        assert st.subsets_enumerated == st.lp_calls + st.subsets_pruned + st.symmetry_skipped

    @pytest.mark.parametrize("build", [gq_doily, oa34, lambda: steiner_triple(9)])
    def test_jobs_do_not_change_result(self, build):
        s = build()
        a = min_nonnegative_lines(s, jobs=1)
        b = min_nonnegative_lines(s, jobs=2)
        assert a.min_nonneg == b.min_nonneg
        assert a.witness == b.witness
        assert a.stats.as_dict() == b.stats.as_dict()

    def test_batch_size_keeps_witness(self):
        s = oa34()
        a = min_nonnegative_lines(s, batch_size=1)
        b = min_nonnegative_lines(s, batch_size=32)
        assert a.nonnegative_lines == b.nonnegative_lines

    def test_spread_partition_forces_star_bound(self):
        for s in (steiner_triple(9), oa_to_incidence(latin_to_oa(cyclic_latin_square(3)))):
            assert find_spread_partition(s) is not None
            v = min_nonnegative_lines(s)
            assert v.min_nonneg >= v.star_size

    def test_symmetry_skipping(self):
        s = fano_plane()
        autos = line_automorphisms(s, permutations(range(7)))
        assert len(autos) == 168
        plain = min_nonnegative_lines(s)
        sym = min_nonnegative_lines(s, automorphisms=autos)
        assert sym.min_nonneg == plain.min_nonneg
        assert sym.stats.symmetry_skipped > 0
        assert sym.stats.lp_calls < plain.stats.lp_calls
        # the identity alone skips nothing
        ident = min_nonnegative_lines(s, automorphisms=[tuple(range(s.line_count))])
        assert ident.stats.symmetry_skipped == 0
        assert ident.min_nonneg == plain.min_nonneg


def test_monotone_in_free_lines():
    s = oa34()
    rng = random.Random(7)
    for _ in range(40):
        small = set(rng.sample(range(16), rng.randint(0, 5)))
        big = small | set(rng.sample(range(16), rng.randint(1, 4)))
        if subset_realisable(s, small)[0]:
            assert subset_realisable(s, big)[0]


def test_mms_system_shape():
    s = gq_doily()
    system, constrained = mms_system(s, [0, 1])
    assert constrained == list(range(2, 15))
    assert system.n_vars == 15 and len(system.le_rows) == 13 and len(system.eq_rows) == 1


class TestStrict:
    def test_fano_exhaustive(self):
        s = fano_plane()
        v = strict_mms_decide(s, 7)
        assert v.status == "refuted"
        assert weighting_refutes_strict(s, v.witness)

    def test_vls_refuted(self):
        s = vls_geometry().structure
        v = strict_mms_decide(s, 6)
        assert v.status == "refuted"
        assert weighting_refutes_strict(s, v.witness)
        assert weighting_refutes_strict(s, wt_vls())

    def test_limit_zero_is_unknown(self):
        v = strict_mms_decide(gq_doily(), 0)
        assert v.status == "unknown" and v.max_star_free == 10

    def test_all_zero_does_not_refute(self):
        from pgmms.weightings import ZeroSumWeighting

        assert not weighting_refutes_strict(fano_plane(), ZeroSumWeighting.of([0] * 7))


class TestConditions:
    def test_design_theorems(self):
        assert check_construction_conditions("two-weight", v=19, w=7, k=3).applicable
        assert check_construction_conditions("two-weight-boundary", v=25, w=9, k=3).applicable
        assert not check_construction_conditions("two-weight", v=25, w=9, k=3).applicable
        assert not check_construction_conditions("three-weight", v=19, w=9, k=3).applicable

    def test_three_weight_fails_both_inequalities_at_19_9_3(self):
        r = check_construction_conditions("three-weight", v=19, w=9, k=3)
        assert r.conditions == {
            "w > k": True,
            "v < (k-1)(w-k) + k": False,
            "v < (w-k)(w-1)/k + 1": False,
        }

    def test_sts_existence(self):
        assert check_construction_conditions("sts-embedding", v=19, w=9).applicable
        assert not check_construction_conditions("sts-embedding", v=17, w=7).applicable

    def test_oa_lemmas(self):
        assert check_construction_conditions("oa-subarray", m=3, n=5, n_sub=2).applicable
        assert not check_construction_conditions("oa-subarray", m=3, n=4, n_sub=2).applicable
        assert check_construction_conditions("shifted-macneish", m=4).applicable
        assert not check_construction_conditions("shifted-macneish", m=7).applicable
        assert check_construction_conditions("jt-design", q=9).applicable
        assert not check_construction_conditions("jt-design", q=10).applicable

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            check_construction_conditions("nonsense")
