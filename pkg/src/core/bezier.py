# ============================================================================
# SOURCEFILE: bezier.py
# RELPATH: tpb_bench/src/core/bezier.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Bezier simplex evaluation, OLS fitting and simplex grids
# ============================================================================

"""
Bezier simplex module.

A Bezier simplex of degree D maps the standard (M-1)-simplex into R^N:

    b(t) = sum_{d in N_D^M} binom(D, d) * t^d * p_d

where ``N_D^M`` is the set of non-negative integer M-vectors summing to D,
``binom(D, d)`` the multinomial coefficient and ``p_d`` the control points.
Multi-indices are always enumerated in ascending lexicographic order; the
rows of every design matrix and the control-point array follow that order.
"""

from functools import lru_cache
from math import comb, factorial
from typing import List, Sequence, Tuple
import logging
import sys
import os

import numpy as np
from scipy import linalg

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import PreconditionError
from core.models import BezierSimplexModel, MultiIndex
from core.validators import as_vector, check_dimension, validate_simplex_point

logger = logging.getLogger(__name__)


def multinomial_coefficient(D: int, d: Sequence[int]) -> int:
    """
    Return ``D! / (d_1! ... d_M!)`` using exact integer arithmetic.

    Raises:
        PreconditionError: If an entry is negative or ``sum(d) != D``
    """
    d = tuple(int(v) for v in d)
    if any(v < 0 for v in d):
        raise PreconditionError("multinomial_coefficient", f"negative entry in {d}")
    if sum(d) != D:
        raise PreconditionError("multinomial_coefficient", f"sum{d} = {sum(d)} != D = {D}")
    result = factorial(D)
    for v in d:
        result //= factorial(v)
    return result


@lru_cache(maxsize=None)
def _multi_indices(M: int, D: int) -> Tuple[MultiIndex, ...]:
    if M == 1:
        return ((D,),)
    out = []
    for first in range(D + 1):
        for rest in _multi_indices(M - 1, D - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_multi_indices(M: int, D: int) -> List[MultiIndex]:
    """
    All multi-indices of N_D^M in ascending lexicographic order.

    The result has ``binom(D+M-1, M-1)`` elements.
    """
    if M < 1 or D < 0:
        raise PreconditionError("enumerate_multi_indices", f"need M >= 1 and D >= 0, got M={M}, D={D}")
    return list(_multi_indices(int(M), int(D)))


def bernstein_basis(params: np.ndarray, D: int) -> np.ndarray:
    """
    Design matrix of multinomial Bernstein terms.

    Args:
        params: (K, M) array of simplex parameters
        D: Degree

    Returns:
        (K, L) array whose column j is ``binom(D, d_j) * t^{d_j}``
    """
    params = np.atleast_2d(np.asarray(params, dtype=float))
    M = params.shape[1]
    indices = np.array(enumerate_multi_indices(M, D), dtype=float)
    coeffs = np.array([multinomial_coefficient(D, d) for d in enumerate_multi_indices(M, D)], dtype=float)
    # numpy defines 0.0 ** 0 == 1.0, the Bernstein convention at the vertices
    powers = np.prod(params[:, None, :] ** indices[None, :, :], axis=2)
    return powers * coeffs


def evaluate(model: BezierSimplexModel, t: Sequence[float]) -> np.ndarray:
    """
    Evaluate ``b(t)``.

    Raises:
        DimensionError: If ``len(t) != model.M``
        PreconditionError: If t is not on the simplex
    """
    t = validate_simplex_point(t, model.M, "evaluate")
    return bernstein_basis(t[None, :], model.D)[0] @ model.control_points


def evaluate_many(model: BezierSimplexModel, params: Sequence[Sequence[float]]) -> np.ndarray:
    """Evaluate ``b`` at each row of ``params``; returns a (K, N) array."""
    rows = [validate_simplex_point(t, model.M, "evaluate_many") for t in params]
    if not rows:
        return np.empty((0, model.N))
    return bernstein_basis(np.vstack(rows), model.D) @ model.control_points


def fit_ols(samples: Sequence[Tuple[Sequence[float], Sequence[float]]],
            M: int, D: int, N: int) -> BezierSimplexModel:
    """
    Fit control points minimizing ``sum_k ||x_k - b(t_k)||^2``.

    The loss is linear least squares in the control points, solved for all N
    coordinates at once with an SVD-based solver. When the design matrix is
    rank deficient the minimum-norm solution is returned and the model
    metadata carries ``degenerate=True``; the fit never raises for that.

    Args:
        samples: (parameter, decision vector) pairs
        M: Simplex dimension of the parameters
        D: Degree of the model
        N: Length of the decision vectors

    Returns:
        Fitted BezierSimplexModel
    """
    if not samples:
        raise PreconditionError("fit_ols", "at least one sample is required")
    params = np.vstack([validate_simplex_point(t, M, "fit_ols") for t, _ in samples])
    targets = []
    for _, x in samples:
        x = as_vector(x, "fit_ols")
        check_dimension("fit_ols", x, N)
        targets.append(x)
    X = np.vstack(targets)

    B = bernstein_basis(params, D)
    n_points = B.shape[1]
    solution, _, rank, _ = linalg.lstsq(B, X, lapack_driver="gelsd")
    degenerate = int(rank) < n_points
    if degenerate:
        logger.warning(
            "Rank-deficient Bezier fit (rank %d < %d control points); using minimum-norm solution",
            rank, n_points,
        )
    residual = float(np.sum((B @ solution - X) ** 2))
    return BezierSimplexModel(
        M=M, D=D, N=N,
        indices=tuple(enumerate_multi_indices(M, D)),
        control_points=solution,
        metadata={"degenerate": degenerate, "rank": int(rank), "residual": residual, "n_samples": len(samples)},
    )


def ols_loss(model: BezierSimplexModel, samples: Sequence[Tuple[Sequence[float], Sequence[float]]]) -> float:
    params = np.vstack([np.asarray(t, dtype=float) for t, _ in samples])
    X = np.vstack([np.asarray(x, dtype=float) for _, x in samples])
    return float(np.sum((bernstein_basis(params, model.D) @ model.control_points - X) ** 2))


def lattice_points(M: int, n: int) -> List[np.ndarray]:
    """Simplex-lattice design ``{d / n : d in N_n^M}`` in multi-index order."""
    return [np.array(d, dtype=float) / n for d in enumerate_multi_indices(M, n)]


def _is_vertex(d: MultiIndex, n: int) -> bool:
    return max(d) == n


def simplex_grid(M: int, count: int, drop_extremes: bool = True) -> List[np.ndarray]:
    """
    Equally spaced parameters on the (M-1)-simplex.

    For M=2, ``count + M`` equally spaced parameters are generated and the M
    vertices removed when ``drop_extremes`` is set, leaving exactly ``count``
    parameters ordered by increasing first coordinate. Without
    ``drop_extremes`` the full grid (vertices included) is returned.

    For M>2 the simplex-lattice design with the smallest resolution holding
    enough points is used; with ``drop_extremes`` the ``count`` interior
    lattice points nearest the centroid are kept, in lattice order.
    """
    if count < 0:
        raise PreconditionError("simplex_grid", f"count must be >= 0, got {count}")
    if M < 2:
        raise PreconditionError("simplex_grid", f"need M >= 2, got {M}")
    if count == 0:
        return []

    if M == 2:
        n = count + 1
    else:
        needed = count + M
        n = 1
        while comb(n + M - 1, M - 1) < needed:
            n += 1

    grid = []
    for d in enumerate_multi_indices(M, n):
        if drop_extremes and _is_vertex(d, n):
            continue
        grid.append(np.array(d, dtype=float) / n)

    if M > 2 and drop_extremes and len(grid) > count:
        keep = sorted(center_out_order(grid)[:count])
        grid = [grid[i] for i in keep]
    return grid


def center_out_order(params: Sequence[np.ndarray]) -> List[int]:
    """Indices of ``params`` sorted by distance to the simplex centroid (stable)."""
    if not params:
        return []
    M = len(params[0])
    centroid = np.full(M, 1.0 / M)
    distances = [round(float(np.linalg.norm(np.asarray(t) - centroid)), 12) for t in params]
    return sorted(range(len(params)), key=lambda i: distances[i])
