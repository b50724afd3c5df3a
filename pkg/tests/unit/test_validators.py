# ============================================================================
# SOURCEFILE: test_validators.py
# RELPATH: tpb_bench/tests/unit/test_validators.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Unit tests for simplex, dimension and box checks
# ============================================================================

import pytest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../src')))

from core.validators import (
    SimplexValidator,
    as_vector,
    check_dimension,
    clip_to_bounds,
    validate_bounds,
    validate_simplex_point,
)
from core.exceptions import DimensionError, PreconditionError

pytestmark = pytest.mark.unit


class TestVectors:

    def test_as_vector(self):
        np.testing.assert_array_equal(as_vector([1, 2]), [1.0, 2.0])

    def test_as_vector_rejects_matrix(self):
        with pytest.raises(PreconditionError):
            as_vector([[1.0, 2.0]])

    def test_as_vector_rejects_nan(self):
        with pytest.raises(PreconditionError):
            as_vector([1.0, float("nan")])

    def test_check_dimension(self):
        check_dimension("op", np.zeros(3), 3)
        with pytest.raises(DimensionError):
            check_dimension("op", np.zeros(3), 2)


class TestSimplexValidator:

    def test_valid_points(self):
        validator = SimplexValidator()
        assert validator.is_valid([1.0, 0.0])
        assert validator.is_valid([0.2, 0.3, 0.5], M=3)
        assert validator.is_valid([0.1] * 10)

    @pytest.mark.parametrize("point", [[0.6, 0.6], [1.2, -0.2], [0.0, 0.0]])
    def test_invalid_points(self, point):
        assert not SimplexValidator().is_valid(point)
        with pytest.raises(PreconditionError):
            validate_simplex_point(point)

    def test_wrong_dimension(self):
        with pytest.raises(DimensionError):
            validate_simplex_point([0.5, 0.5], M=3)

    def test_tolerance(self):
        assert SimplexValidator(tol=1e-6).is_valid([0.5, 0.5 + 1e-8])
        assert not SimplexValidator().is_valid([0.5, 0.5 + 1e-8])


class TestBounds:

    def test_validate_bounds(self):
        lb, ub = validate_bounds([-1.0, 0.0], [1.0, 2.0])
        np.testing.assert_array_equal(ub - lb, [2.0, 2.0])

    def test_empty_interval_rejected(self):
        with pytest.raises(PreconditionError):
            validate_bounds([0.0], [0.0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            validate_bounds([0.0, 0.0], [1.0])

    def test_clip_to_bounds(self):
        x, moved = clip_to_bounds(np.array([-7.0, 3.0]), np.full(2, -5.0), np.full(2, 5.0))
        np.testing.assert_array_equal(x, [-5.0, 3.0])
        assert moved
