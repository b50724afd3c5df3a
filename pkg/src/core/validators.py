# ============================================================================
# SOURCEFILE: validators.py
# RELPATH: tpb_bench/src/core/validators.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Simplex, dimension and box-bound checks shared by all modules
# ============================================================================

"""
Validators Module.

Provides the numeric safety checks used across the package: vector
dimensions, points on the standard simplex, and box constraints (validation
and clipping).
"""

from typing import Optional, Sequence, Tuple
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import DimensionError, PreconditionError

logger = logging.getLogger(__name__)

SIMPLEX_TOL = 1e-12


def as_vector(values: Sequence[float], operation: str = "as_vector") -> np.ndarray:
    """Convert ``values`` to a 1-D float array, rejecting non-finite entries."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise PreconditionError(operation, f"expected a 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError(operation, "vector contains non-finite values")
    return arr


def check_dimension(operation: str, vector: np.ndarray, expected: int) -> None:
    """Raise DimensionError unless ``len(vector) == expected``."""
    if len(vector) != expected:
        raise DimensionError(operation, expected, len(vector))


class SimplexValidator:
    """
    Validates points of the standard (M-1)-simplex.

    Used for Bezier simplex parameters and weight vectors, which share the
    same domain: non-negative M-vectors summing to one.
    """

    def __init__(self, tol: float = SIMPLEX_TOL):
        self.tol = tol

    def validate(self, point: Sequence[float], M: Optional[int] = None,
                 operation: str = "simplex") -> np.ndarray:
        """
        Validate a simplex point.

        Args:
            point: Candidate point
            M: Expected dimension (skipped when None)
            operation: Operation name used in error messages

        Returns:
            The point as a float array

        Raises:
            DimensionError: If the length differs from M
            PreconditionError: If an entry is negative or the sum is not 1
        """
        t = as_vector(point, operation)
        if M is not None:
            check_dimension(operation, t, M)
        if np.any(t < 0.0):
            raise PreconditionError(operation, f"negative simplex coordinate in {t.tolist()}")
        total = float(np.sum(t))
        if abs(total - 1.0) > self.tol:
            raise PreconditionError(operation, f"coordinates sum to {total!r}, expected 1")
        return t

    def is_valid(self, point: Sequence[float], M: Optional[int] = None) -> bool:
        try:
            self.validate(point, M)
            return True
        except (PreconditionError, DimensionError):
            return False


def validate_bounds(lower: Sequence[float], upper: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Validate a box ``[lower, upper]``.

    Raises:
        DimensionError: If the bound vectors differ in length
        PreconditionError: If some ``lower_n >= upper_n``
    """
    lb = as_vector(lower, "bounds")
    ub = as_vector(upper, "bounds")
    check_dimension("bounds", ub, len(lb))
    if np.any(lb >= ub):
        raise PreconditionError("bounds", "every lower bound must be strictly below its upper bound")
    return lb, ub


def validate_simplex_point(point: Sequence[float], M: Optional[int] = None,
                           operation: str = "simplex") -> np.ndarray:
    """Convenience wrapper around SimplexValidator."""
    return SimplexValidator().validate(point, M, operation)


def clip_to_bounds(x: Sequence[float], lower: np.ndarray, upper: np.ndarray) -> Tuple[np.ndarray, bool]:
    """Clip ``x`` into ``[lower, upper]``; second item reports whether it moved."""
    arr = np.asarray(x, dtype=float)
    clipped = np.clip(arr, lower, upper)
    return clipped, bool(np.any(clipped != arr))
