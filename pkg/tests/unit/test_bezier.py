# ============================================================================
# SOURCEFILE: test_bezier.py
# RELPATH: tpb_bench/tests/unit/test_bezier.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Unit tests for Bezier simplex evaluation, fitting and grids
# ============================================================================

"""
Unit tests for the Bezier simplex module.

Covers multi-index enumeration, the Bernstein design matrix, evaluation,
OLS fitting (regular and rank-deficient) and the parameter grids used by
the second phase.
"""

import pytest
from math import comb
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../src')))

from core.bezier import (
    bernstein_basis,
    center_out_order,
    enumerate_multi_indices,
    evaluate,
    evaluate_many,
    fit_ols,
    lattice_points,
    multinomial_coefficient,
    ols_loss,
    simplex_grid,
)
from core.exceptions import DimensionError, PreconditionError
from core.models import BezierSimplexModel

pytestmark = [pytest.mark.unit, pytest.mark.bezier]


def _random_model(rng, M=2, D=2, N=3):
    indices = tuple(enumerate_multi_indices(M, D))
    return BezierSimplexModel(M=M, D=D, N=N, indices=indices,
                              control_points=rng.normal(size=(len(indices), N)))


class TestMultiIndices:
    """Tests for multinomial coefficients and N_D^M enumeration."""

    def test_multinomial_coefficient_values(self):
        assert multinomial_coefficient(2, (1, 1)) == 2
        assert multinomial_coefficient(2, (2, 0)) == 1
        assert multinomial_coefficient(3, (1, 1, 1)) == 6
        assert multinomial_coefficient(4, (2, 1, 1)) == 12

    def test_multinomial_rejects_wrong_sum(self):
        with pytest.raises(PreconditionError):
            multinomial_coefficient(3, (1, 1))

    def test_multinomial_rejects_negative_entry(self):
        with pytest.raises(PreconditionError):
            multinomial_coefficient(1, (2, -1))

    def test_enumeration_is_lexicographic(self):
        assert enumerate_multi_indices(2, 2) == [(0, 2), (1, 1), (2, 0)]
        indices = enumerate_multi_indices(3, 2)
        assert indices == sorted(indices)

    @pytest.mark.parametrize("M,D", [(2, 1), (2, 3), (3, 2), (3, 4), (4, 3)])
    def test_enumeration_size(self, M, D):
        indices = enumerate_multi_indices(M, D)
        assert len(indices) == comb(D + M - 1, M - 1)
        assert len(set(indices)) == len(indices)
        assert all(sum(d) == D and min(d) >= 0 for d in indices)

    def test_enumeration_rejects_bad_sizes(self):
        with pytest.raises(PreconditionError):
            enumerate_multi_indices(0, 2)


class TestBernsteinBasis:
    """Tests for the design matrix."""

    def test_partition_of_unity(self, rng):
        params = rng.dirichlet(np.ones(3), size=20)
        B = bernstein_basis(params, 3)
        assert B.shape == (20, comb(5, 2))
        np.testing.assert_allclose(B.sum(axis=1), 1.0, atol=1e-12)

    def test_vertex_selects_single_term(self):
        B = bernstein_basis(np.array([[1.0, 0.0]]), 2)
        # columns follow (0,2), (1,1), (2,0)
        np.testing.assert_allclose(B[0], [0.0, 0.0, 1.0])

    def test_midpoint_values(self):
        B = bernstein_basis(np.array([[0.5, 0.5]]), 2)
        np.testing.assert_allclose(B[0], [0.25, 0.5, 0.25])

    @pytest.mark.parametrize("M", [2, 3])
    @pytest.mark.parametrize("D", [1, 2, 3])
    def test_partition_of_unity_on_many_params(self, rng, M, D):
        params = rng.dirichlet(np.ones(M), size=1000)
        B = bernstein_basis(params, D)
        assert np.all(B >= 0.0)
        np.testing.assert_allclose(B.sum(axis=1), 1.0, rtol=0.0, atol=1e-12)


class TestEvaluate:
    """Tests for evaluate and evaluate_many."""

    def test_vertices_hit_corner_control_points(self, rng):
        model = _random_model(rng, M=3, D=2, N=4)
        for m in range(3):
            t = np.eye(3)[m]
            corner = tuple(2 if i == m else 0 for i in range(3))
            np.testing.assert_allclose(evaluate(model, t), model.control_point(corner), atol=1e-12)

    def test_evaluate_many_matches_loop(self, rng):
        model = _random_model(rng, M=2, D=3, N=5)
        params = [np.array([a, 1.0 - a]) for a in np.linspace(0.0, 1.0, 7)]
        batch = evaluate_many(model, params)
        assert batch.shape == (7, 5)
        for row, t in zip(batch, params):
            np.testing.assert_allclose(row, evaluate(model, t), atol=1e-12)

    def test_evaluate_many_empty(self, rng):
        model = _random_model(rng, N=4)
        assert evaluate_many(model, []).shape == (0, 4)

    def test_wrong_parameter_length(self, rng):
        model = _random_model(rng, M=2)
        with pytest.raises(DimensionError):
            evaluate(model, [0.2, 0.3, 0.5])

    def test_parameter_off_simplex(self, rng):
        model = _random_model(rng, M=2)
        with pytest.raises(PreconditionError):
            evaluate(model, [0.7, 0.7])
        with pytest.raises(PreconditionError):
            evaluate(model, [1.5, -0.5])

    def test_points_inside_control_point_hull(self, rng):
        model = _random_model(rng, M=3, D=3, N=4)
        points = evaluate_many(model, rng.dirichlet(np.ones(3), size=200))
        lower = model.control_points.min(axis=0)
        upper = model.control_points.max(axis=0)
        assert np.all(points >= lower - 1e-12)
        assert np.all(points <= upper + 1e-12)


class TestFitOls:
    """Tests for least-squares fitting of control points."""

    def test_three_samples_interpolated_by_quadratic(self):
        samples = [
            (np.array([1.0, 0.0]), np.array([0.0, 0.0])),
            (np.array([0.5, 0.5]), np.array([1.0, 2.0])),
            (np.array([0.0, 1.0]), np.array([3.0, -1.0])),
        ]
        model = fit_ols(samples, M=2, D=2, N=2)
        assert not model.degenerate
        for t, x in samples:
            np.testing.assert_allclose(evaluate(model, t), x, atol=1e-10)
        assert ols_loss(model, samples) < 1e-18

    def test_recovers_generating_model(self, rng):
        truth = _random_model(rng, M=3, D=2, N=3)
        params = [t for t in rng.dirichlet(np.ones(3), size=30)]
        samples = [(t, evaluate(truth, t)) for t in params]
        model = fit_ols(samples, M=3, D=2, N=3)
        np.testing.assert_allclose(model.control_points, truth.control_points, atol=1e-8)
        assert model.metadata["rank"] == 6

    @pytest.mark.parametrize("N", [2, 10])
    def test_recovers_quadratic_curve_from_three_samples(self, rng, N):
        truth = BezierSimplexModel(M=2, D=2, N=N, indices=tuple(enumerate_multi_indices(2, 2)),
                                   control_points=rng.uniform(-5.0, 5.0, size=(3, N)))
        params = [np.array([1.0, 0.0]), np.array([0.5, 0.5]), np.array([0.0, 1.0])]
        model = fit_ols([(t, evaluate(truth, t)) for t in params], M=2, D=2, N=N)
        np.testing.assert_allclose(model.control_points, truth.control_points, rtol=0.0, atol=1e-8)

    def test_solution_minimizes_loss(self, rng):
        truth = _random_model(rng, M=2, D=2, N=3)
        samples = [(t, evaluate(truth, t) + rng.normal(scale=0.1, size=3))
                   for t in rng.dirichlet(np.ones(2), size=25)]
        model = fit_ols(samples, M=2, D=2, N=3)
        best = ols_loss(model, samples)
        for _ in range(50):
            delta = rng.choice([-1e-3, 1e-3], size=model.control_points.shape)
            perturbed = BezierSimplexModel(M=2, D=2, N=3, indices=model.indices,
                                           control_points=model.control_points + delta)
            assert ols_loss(perturbed, samples) >= best

    def test_collinear_samples_stay_on_line(self):
        a = np.array([1.0, -1.0, 2.0])
        b = np.array([-2.0, 3.0, 0.0])
        samples = [(np.array([1.0 - s, s]), a + s * (b - a)) for s in (0.0, 0.5, 1.0)]
        model = fit_ols(samples, M=2, D=2, N=3)
        for s in np.linspace(0.0, 1.0, 11):
            np.testing.assert_allclose(evaluate(model, [1.0 - s, s]), a + s * (b - a), atol=1e-8)

    def test_rank_deficient_fit_flagged(self):
        samples = [
            (np.array([1.0, 0.0]), np.array([0.0, 0.0])),
            (np.array([0.0, 1.0]), np.array([1.0, 1.0])),
        ]
        model = fit_ols(samples, M=2, D=2, N=2)
        assert model.degenerate
        assert model.metadata["rank"] == 2
        assert np.all(np.isfinite(model.control_points))

    def test_empty_samples_rejected(self):
        with pytest.raises(PreconditionError):
            fit_ols([], M=2, D=2, N=2)

    def test_sample_dimension_checked(self):
        samples = [(np.array([1.0, 0.0]), np.array([0.0, 0.0, 1.0]))]
        with pytest.raises(DimensionError):
            fit_ols(samples, M=2, D=1, N=2)


class TestGrids:
    """Tests for simplex grids and center-out ordering."""

    def test_two_objective_grid_values(self):
        grid = simplex_grid(2, 4)
        np.testing.assert_allclose([t[0] for t in grid], [0.2, 0.4, 0.6, 0.8])
        for t in grid:
            assert t.sum() == pytest.approx(1.0)

    def test_grid_without_dropping_extremes(self):
        grid = simplex_grid(2, 4, drop_extremes=False)
        assert len(grid) == 6
        np.testing.assert_allclose(grid[0], [0.0, 1.0])
        np.testing.assert_allclose(grid[-1], [1.0, 0.0])

    @pytest.mark.parametrize("count", [1, 2, 5, 17])
    def test_two_objective_grid_size(self, count):
        grid = simplex_grid(2, count)
        assert len(grid) == count
        assert all(0.0 < t[0] < 1.0 for t in grid)

    @pytest.mark.parametrize("count", [1, 3, 4, 10])
    def test_three_objective_grid_is_interior(self, count):
        grid = simplex_grid(3, count)
        assert len(grid) == count
        for t in grid:
            assert t.sum() == pytest.approx(1.0)
            assert t.max() < 1.0

    def test_zero_count(self):
        assert simplex_grid(2, 0) == []

    def test_negative_count_rejected(self):
        with pytest.raises(PreconditionError):
            simplex_grid(2, -1)

    def test_center_out_order(self):
        grid = simplex_grid(2, 4)
        assert center_out_order(grid) == [1, 2, 0, 3]

    def test_center_out_order_empty(self):
        assert center_out_order([]) == []

    def test_lattice_points(self):
        points = lattice_points(3, 2)
        assert len(points) == 6
        assert all(p.sum() == pytest.approx(1.0) for p in points)
