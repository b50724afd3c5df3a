# ============================================================================
# SOURCEFILE: scalarize.py
# RELPATH: tpb_bench/src/core/scalarize.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Weight sets, weighted-sum scalarization and normalization
# ============================================================================

"""
Scalarization module.

Builds uniformly spaced weight sets on the simplex, normalizes objective
vectors with approximated ideal/nadir points and collapses them with the
weighted sum. ``scalarize`` accepts any callable with the signature of
``weighted_sum`` so other scalarizing functions can be plugged in.
"""

from math import comb
from typing import Callable, List
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.bezier import enumerate_multi_indices
from core.exceptions import DimensionError, EmptyLedgerError, WeightSetError
from core.models import EvaluationLedger, RefPoints

logger = logging.getLogger(__name__)

DENOMINATOR_GUARD = 1e-12

Scalarizer = Callable[[np.ndarray, np.ndarray], float]


def weight_set(K: int, M: int) -> List[np.ndarray]:
    """
    K uniformly spaced weight vectors on the (M-1)-simplex, all M extremes included.

    Weights are lattice points ``d / n`` listed in descending lexicographic
    order, so ``e_1`` comes first and ``e_M`` last; for M=2 the first
    coordinate decreases from 1 to 0.

    For M > 2, K must equal a simplex-lattice size ``binom(n+M-1, M-1)`` or
    ``M + 1`` (extremes plus the centroid).

    Raises:
        WeightSetError: If K < M, M < 2, or K is not constructible for M > 2
    """
    if M < 2:
        raise WeightSetError(K, M, "need at least two objectives")
    if K < M:
        raise WeightSetError(K, M, "K must be >= M to include every extreme weight")

    if M == 2:
        n = K - 1
        return [np.array([n - i, i], dtype=float) / n for i in range(K)]

    if K == M + 1:
        extremes = [np.eye(M)[m] for m in range(M)]
        centroid = np.full(M, 1.0 / M)
        weights = extremes + [centroid]
        return sorted(weights, key=lambda w: tuple(w), reverse=True)

    n = 1
    while comb(n + M - 1, M - 1) < K:
        n += 1
    if comb(n + M - 1, M - 1) != K:
        raise WeightSetError(K, M, "for M > 2, K must be a simplex-lattice size or M + 1")
    indices = sorted(enumerate_multi_indices(M, n), reverse=True)
    return [np.array(d, dtype=float) / n for d in indices]


def is_extreme(w: np.ndarray) -> bool:
    """True for the unit vectors ``e_m``."""
    return bool(np.max(w) == 1.0)


def weighted_sum(w: np.ndarray, f: np.ndarray) -> float:
    """
    ``sum_m w_m f_m``.

    Raises:
        DimensionError: If ``len(w) != len(f)``
    """
    w = np.asarray(w, dtype=float)
    f = np.asarray(f, dtype=float)
    if w.shape != f.shape:
        raise DimensionError("weighted_sum", len(w), len(f))
    return float(np.dot(w, f))


def normalize(f: np.ndarray, ref: RefPoints) -> np.ndarray:
    """
    ``(f - z_ideal) / (z_nadir - z_ideal)`` component-wise.

    Denominators below 1e-12 are replaced by 1. Accepts a single vector or a
    (n, M) array of vectors.
    """
    f = np.asarray(f, dtype=float)
    if f.shape[-1] != ref.M:
        raise DimensionError("normalize", ref.M, f.shape[-1])
    span = ref.z_nadir - ref.z_ideal
    span = np.where(span < DENOMINATOR_GUARD, 1.0, span)
    return (f - ref.z_ideal) / span


def update_ref_points(ledger: EvaluationLedger) -> RefPoints:
    """
    Ideal/nadir estimate from the ledger: component-wise min and max.

    Raises:
        EmptyLedgerError: If the ledger holds no evaluation
    """
    if len(ledger) == 0:
        raise EmptyLedgerError("update_ref_points")
    return ref_points_from(ledger.objectives())


def ref_points_from(F: np.ndarray) -> RefPoints:
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if F.size == 0:
        raise EmptyLedgerError("ref_points_from")
    ideal = F.min(axis=0)
    nadir = F.max(axis=0)
    if np.any(nadir - ideal < DENOMINATOR_GUARD):
        logger.debug("Degenerate objective range; normalization guard active")
    return RefPoints(ideal, nadir)


def scalarize(w: np.ndarray, f: np.ndarray, ref: RefPoints,
              scalarizer: Scalarizer = weighted_sum) -> float:
    """Normalize ``f`` with ``ref`` and apply ``scalarizer`` with weight ``w``."""
    return scalarizer(w, normalize(f, ref))


def scalarize_all(w: np.ndarray, F: np.ndarray, ref: RefPoints,
                  scalarizer: Scalarizer = weighted_sum) -> np.ndarray:
    """Scalarized value of every row of ``F``."""
    normalized = normalize(np.atleast_2d(F), ref)
    if scalarizer is weighted_sum:
        return normalized @ np.asarray(w, dtype=float)
    return np.array([scalarizer(w, row) for row in normalized])


def best_index(w: np.ndarray, F: np.ndarray, ref: RefPoints,
               scalarizer: Scalarizer = weighted_sum) -> int:
    """Row of ``F`` minimizing the normalized scalarization (first on ties)."""
    return int(np.argmin(scalarize_all(w, F, ref, scalarizer)))
