# ============================================================================
# SOURCEFILE: test_assess.py
# RELPATH: tpb_bench/tests/unit/test_assess.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Unit tests for dominance, archive, hypervolume, indicator and ECDF
# ============================================================================

import pytest
import sys
import os

import numpy as np
from scipy.stats import qmc

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../src')))

from core.assess import (
    N_TARGETS,
    Archive,
    archive_insert,
    build_trace,
    dominates,
    ecdf,
    first_hits,
    hypervolume_2d,
    indicator_value,
    nondominated_filter,
    runtime_to_target,
    targets,
)
from core.exceptions import AssessError, DimensionError
from core.models import IndicatorTrace, ReferenceData

pytestmark = [pytest.mark.unit, pytest.mark.assess]


@pytest.fixture
def unit_refdata():
    """Reference data already normalized: ideal (0, 0), nadir (1, 1)."""
    front = np.array([[0.0, 1.0], [0.25, 0.5], [0.5, 0.25], [1.0, 0.0]])
    return ReferenceData(front=front, ref_hv=hypervolume_2d(front, (1.0, 1.0)),
                         z_ideal=np.zeros(2), z_nadir=np.ones(2))


class TestDominance:

    def test_dominates(self):
        assert dominates([1.0, 1.0], [2.0, 1.0])
        assert not dominates([1.0, 1.0], [1.0, 1.0])
        assert not dominates([1.0, 3.0], [2.0, 1.0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            dominates([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_strict_partial_order(self, rng):
        # small integer grid so that ties and chains are common
        points = rng.integers(0, 3, size=(600, 3, 2)).astype(float)
        for a, b, c in points:
            assert not dominates(a, a)
            assert not (dominates(a, b) and dominates(b, a))
            if dominates(a, b) and dominates(b, c):
                assert dominates(a, c)

    def test_filter_two_objectives(self):
        points = [[3.0, 1.0], [1.0, 3.0], [2.0, 2.0], [2.5, 2.5], [1.0, 3.0]]
        kept = nondominated_filter(points)
        np.testing.assert_array_equal(np.vstack(kept), [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]])

    def test_filter_three_objectives(self):
        points = [[1.0, 2.0, 3.0], [2.0, 3.0, 4.0], [3.0, 1.0, 2.0]]
        kept = nondominated_filter(points)
        assert len(kept) == 2

    def test_filter_empty(self):
        assert nondominated_filter([]) == []


class TestArchive:

    def test_mutually_nondominated(self, rng):
        archive = Archive()
        for f in rng.uniform(size=(200, 2)):
            archive.insert(np.zeros(1), f)
        F = archive.objectives()
        for i in range(len(F)):
            for j in range(len(F)):
                assert not dominates(F[i], F[j])

    def test_insert_results(self):
        archive = Archive()
        assert archive.insert([0.0], [2.0, 2.0])
        assert not archive.insert([1.0], [3.0, 3.0])
        assert not archive.insert([1.0], [2.0, 2.0])
        assert archive.insert([2.0], [1.0, 1.0])
        assert len(archive) == 1
        np.testing.assert_array_equal(archive.decisions(), [[2.0]])

    def test_order_independent(self, rng):
        F = rng.uniform(size=(50, 2))
        a, b = Archive(), Archive()
        for f in F:
            archive_insert(a, np.zeros(1), f)
        for f in F[::-1]:
            archive_insert(b, np.zeros(1), f)
        key = lambda M: sorted(map(tuple, M))
        assert key(a.objectives()) == key(b.objectives())

    def test_empty(self):
        assert Archive().objectives().size == 0


class TestHypervolume:

    def test_single_point(self):
        assert hypervolume_2d([[0.5, 0.5]], (1.0, 1.0)) == pytest.approx(0.25)

    def test_staircase(self):
        points = [[0.0, 0.5], [0.5, 0.0]]
        assert hypervolume_2d(points, (1.0, 1.0)) == pytest.approx(0.75)

    def test_dominated_points_ignored(self):
        base = hypervolume_2d([[0.2, 0.2]], (1.0, 1.0))
        assert hypervolume_2d([[0.2, 0.2], [0.5, 0.5]], (1.0, 1.0)) == pytest.approx(base)

    def test_points_outside_reference_ignored(self):
        assert hypervolume_2d([[1.0, 0.0], [1.5, 0.5]], (1.0, 1.0)) == 0.0
        assert hypervolume_2d([], (1.0, 1.0)) == 0.0

    def test_requires_two_objectives(self):
        with pytest.raises(AssessError):
            hypervolume_2d([[0.1, 0.1, 0.1]], (1.0, 1.0))

    @pytest.mark.parametrize("points,expected", [
        ([[0.25, 0.25]], 0.5625),
        ([[0.2, 0.8], [0.8, 0.2]], 0.28),
    ])
    def test_hand_cases(self, points, expected):
        assert hypervolume_2d(points, (1.0, 1.0)) == pytest.approx(expected)

    def test_matches_sampled_area(self, rng):
        points = rng.uniform(size=(50, 2))
        sampler = qmc.Sobol(d=2, scramble=True, seed=np.random.default_rng(11))
        samples = sampler.random_base2(m=16)
        dominated = np.zeros(len(samples), dtype=bool)
        for p in points:
            dominated |= np.all(samples >= p, axis=1)
        assert hypervolume_2d(points, (1.0, 1.0)) == pytest.approx(dominated.mean(), abs=3e-3)

    def test_monotone_and_permutation_invariant(self, rng):
        points = rng.uniform(size=(20, 2))
        full = hypervolume_2d(points, (1.0, 1.0))
        assert hypervolume_2d(points[:-1], (1.0, 1.0)) <= full + 1e-15
        assert hypervolume_2d(points[::-1], (1.0, 1.0)) == pytest.approx(full)

    @pytest.mark.slow
    def test_matches_large_sampled_area_on_random_sets(self, rng):
        # 2^23 scrambled Sobol points per set, in eight independent blocks
        for _ in range(20):
            points = rng.uniform(size=(int(rng.integers(1, 51)), 2))
            front = np.array(sorted(map(tuple, nondominated_filter(points))))
            covered = 0
            for block in range(8):
                sampler = qmc.Sobol(d=2, scramble=True, seed=np.random.default_rng(block))
                samples = sampler.random_base2(m=20)
                # front x ascending, y descending: nearest front point to the left bounds y
                left = np.searchsorted(front[:, 0], samples[:, 0], side="right") - 1
                has_left = left >= 0
                covered += int(np.sum(samples[has_left, 1] >= front[left[has_left], 1]))
            estimate = covered / (8 * 2 ** 20)
            assert hypervolume_2d(points, (1.0, 1.0)) == pytest.approx(estimate, abs=3e-3)


class TestStreamingArchive:

    @pytest.mark.slow
    def test_stream_equals_batch_filter(self, rng):
        key = lambda rows: sorted(map(tuple, rows))
        for _ in range(100):
            F = rng.uniform(size=(int(rng.integers(1, 501)), 2))
            archive = Archive()
            for f in F:
                archive_insert(archive, np.zeros(1), f)
            assert key(archive.objectives()) == key(nondominated_filter(F))

    def test_stream_with_duplicates_and_ties(self, rng):
        F = rng.integers(0, 5, size=(300, 2)).astype(float)
        archive = Archive()
        for f in F:
            archive_insert(archive, np.zeros(1), f)
        key = lambda rows: sorted(set(map(tuple, rows)))
        assert key(archive.objectives()) == key(nondominated_filter(F))


class TestIndicator:

    def test_empty_archive_is_infinite(self, unit_refdata):
        assert indicator_value(Archive(), unit_refdata) == float("inf")

    def test_regret_inside_box(self, unit_refdata):
        value = indicator_value(np.array([[0.5, 0.5]]), unit_refdata)
        assert value == pytest.approx(unit_refdata.ref_hv - 0.25)

    def test_reference_front_scores_zero(self, unit_refdata):
        assert indicator_value(unit_refdata.front, unit_refdata) == pytest.approx(0.0, abs=1e-12)

    def test_distance_outside_box(self, unit_refdata):
        value = indicator_value(np.array([[1.0, 3.0]]), unit_refdata)
        assert value == pytest.approx(unit_refdata.ref_hv + 2.0)

    def test_distance_ignores_coordinates_below_ideal(self, unit_refdata):
        value = indicator_value(np.array([[-0.5, 1.5]]), unit_refdata)
        assert value == pytest.approx(unit_refdata.ref_hv + 0.5)

    def test_outside_is_worse_than_inside(self, unit_refdata):
        inside = indicator_value(np.array([[0.99, 0.99]]), unit_refdata)
        outside = indicator_value(np.array([[1.0, 1.0]]), unit_refdata)
        assert inside < outside

    def test_archive_argument(self, unit_refdata):
        archive = Archive()
        archive.insert([0.0], [0.5, 0.5])
        assert indicator_value(archive, unit_refdata) == pytest.approx(unit_refdata.ref_hv - 0.25)


class TestTraceAndEcdf:

    def test_targets(self):
        values = targets(0.5)
        assert len(values) == N_TARGETS == 31
        assert values[0] == pytest.approx(0.5e-4)
        assert values[-1] == pytest.approx(0.5)
        assert np.all(np.diff(values) > 0)

    def test_trace_non_increasing(self, unit_refdata, rng):
        F = rng.uniform(0.0, 1.5, size=(40, 2))
        trace = build_trace(F, unit_refdata)
        assert len(trace.series) == 40
        assert [idx for idx, _ in trace.series] == list(range(1, 41))
        values = [v for _, v in trace.series]
        assert all(b <= a for a, b in zip(values, values[1:]))
        assert trace.final_value == values[-1]

    def test_trace_hits(self, unit_refdata):
        F = [[2.0, 2.0], [0.5, 0.5], [0.25, 0.5], [0.0, 1.0]]
        trace = build_trace(F, unit_refdata)
        top = runtime_to_target(trace, trace.targets[-1])
        assert top == 2
        assert all(h is None or h >= top for h in trace.hits)

    def test_first_hits(self):
        series = [(1, 5.0), (2, 3.0), (3, 1.0)]
        assert first_hits(series, np.array([0.5, 1.0, 4.0, 10.0])) == [None, 3, 2, 1]

    def test_empty_trace_final_value(self):
        assert IndicatorTrace(series=[], targets=np.ones(1), hits=[None]).final_value == float("inf")

    def test_ecdf_fractions(self):
        t1 = IndicatorTrace(series=[], targets=np.array([0.1, 1.0]), hits=[None, 2])
        t2 = IndicatorTrace(series=[], targets=np.array([0.2, 2.0]), hits=[3, 1])
        curve = ecdf([t1, t2], [1, 2, 3, 4])
        assert curve == [(1, 0.25), (2, 0.5), (3, 0.75), (4, 0.75)]

    def test_ecdf_hand_count_on_full_target_sets(self):
        # ten hardest targets missed, the rest hit after five evaluations
        t1 = IndicatorTrace(series=[], targets=targets(0.5), hits=[None] * 10 + [5] * 21)
        # only the easiest target, hit at once
        t2 = IndicatorTrace(series=[], targets=targets(0.7), hits=[None] * 30 + [1])
        curve = ecdf([t1, t2], [1, 4, 5, 100])
        assert curve == [(1, 1 / 62), (4, 1 / 62), (5, 22 / 62), (100, 22 / 62)]

    def test_ecdf_non_decreasing(self, unit_refdata, rng):
        traces = [build_trace(rng.uniform(0.0, 1.2, size=(30, 2)), unit_refdata) for _ in range(4)]
        fractions = [frac for _, frac in ecdf(traces, range(1, 31))]
        assert all(0.0 <= f <= 1.0 for f in fractions)
        assert all(b >= a for a, b in zip(fractions, fractions[1:]))

    def test_ecdf_errors(self):
        with pytest.raises(AssessError):
            ecdf([], [1])
        t1 = IndicatorTrace(series=[], targets=np.ones(2), hits=[1, 1])
        t2 = IndicatorTrace(series=[], targets=np.ones(3), hits=[1, 1, 1])
        with pytest.raises(AssessError):
            ecdf([t1, t2], [1])
