# ============================================================================
# SOURCEFILE: trust_region.py
# RELPATH: tpb_bench/src/core/optimizers/trust_region.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Model-based trust-region optimizer with a diagonal quadratic model
# ============================================================================

"""
Trust-region optimizer (default optimizer kind ``trust_region``).

The model is ``m(s) = f_k + g.s + 0.5 * sum_i h_i s_i^2`` built from a
2N+1 stencil around the current iterate: two extra points per coordinate
give g_i and h_i exactly for a separable quadratic. After each trial point
the model is corrected by the smallest change (in the Euclidean norm of
(g, h)) that interpolates the new value. The stencil is only rebuilt when
the model turns non-finite or the radius has shrunk a decade below the
stencil's step.

The trust region is the infinity-norm ball of radius ``delta`` intersected
with the box, so the subproblem splits into N one-dimensional problems.
"""

from typing import Optional, Tuple
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from core.exceptions import OptimizerPreconditionError
from core.models import ScalarProblem
from core.optimizers.base import BudgetedObjective, OptimizerBase

logger = logging.getLogger(__name__)

ACCEPT_RATIO = 0.1
EXPAND_RATIO = 0.7
EXPAND_FACTOR = 2.0
SHRINK_FACTOR = 0.5
GEOMETRY_RATIO = 0.1
PREDICTION_TOL = 1e-12
DEFAULT_RHO_END = 1e-8


def default_rho_begin(problem: ScalarProblem) -> float:
    """0.1 times the narrowest box width."""
    return 0.1 * float(np.min(problem.upper - problem.lower))


class TrustRegionOptimizer(OptimizerBase):
    """
    Box-constrained trust-region method on a diagonal quadratic model.

    Attributes:
        rho_begin: Initial radius (None: 0.1 x narrowest box width)
        rho_end: Final radius; the run stops once the radius drops below it
        max_resets: Stencil resets tolerated after a non-finite model
    """

    def __init__(self, rho_begin: Optional[float] = None,
                 rho_end: float = DEFAULT_RHO_END, max_resets: int = 3):
        self.rho_begin = rho_begin
        self.rho_end = rho_end
        self.max_resets = max_resets

    @property
    def optimizer_name(self) -> str:
        return "trust_region"

    def _radii(self, problem: ScalarProblem) -> Tuple[float, float]:
        rho_begin = default_rho_begin(problem) if self.rho_begin is None else float(self.rho_begin)
        return rho_begin, float(self.rho_end)

    def _validate(self, problem: ScalarProblem) -> None:
        rho_begin, rho_end = self._radii(problem)
        if not 0.0 < rho_end < rho_begin:
            raise OptimizerPreconditionError(
                self.optimizer_name,
                f"need 0 < rho_end < rho_begin, got rho_begin={rho_begin}, rho_end={rho_end}",
            )

    # ------------------------------------------------------------------
    # Model construction
    # ------------------------------------------------------------------

    @staticmethod
    def _offsets(x: float, step: float, lb: float, ub: float) -> Tuple[float, float]:
        # central stencil when both sides fit, one-sided near a bound
        if x + step <= ub and x - step >= lb:
            return step, -step
        if x + step > ub:
            return -step, -2.0 * step
        return step, 2.0 * step

    def _stencil(self, fun: BudgetedObjective, xk: np.ndarray, fk: float, step: float,
                 lb: np.ndarray, ub: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n = len(xk)
        step = min(step, float(np.min(ub - lb)) / 3.0)
        g = np.empty(n)
        h = np.empty(n)
        for i in range(n):
            o1, o2 = self._offsets(xk[i], step, lb[i], ub[i])
            p1 = xk.copy()
            p2 = xk.copy()
            p1[i] += o1
            p2[i] += o2
            s1 = p1[i] - xk[i]
            s2 = p2[i] - xk[i]
            y1 = fun(p1) - fk
            y2 = fun(p2) - fk
            denom = s1 * s2 * (s2 - s1)
            if denom == 0.0 or not (np.isfinite(y1) and np.isfinite(y2)):
                # collapsed stencil
                g[i] = np.nan
                h[i] = np.nan
                continue
            g[i] = (y1 * s2 * s2 - y2 * s1 * s1) / denom
            h[i] = 2.0 * (y2 * s1 - y1 * s2) / denom
        return g, h

    @staticmethod
    def _least_change_update(g: np.ndarray, h: np.ndarray, fk: float,
                             s: np.ndarray, f_trial: float) -> Tuple[np.ndarray, np.ndarray]:
        phi = np.concatenate([s, 0.5 * s * s])
        denom = float(phi @ phi)
        if denom == 0.0:
            return g, h
        residual = f_trial - (fk + float(g @ s) + 0.5 * float(h @ (s * s)))
        theta = np.concatenate([g, h]) + residual * phi / denom
        n = len(g)
        return theta[:n], theta[n:]

    # ------------------------------------------------------------------
    # Subproblem
    # ------------------------------------------------------------------

    @staticmethod
    def _solve_subproblem(g: np.ndarray, h: np.ndarray, xk: np.ndarray, delta: float,
                          lb: np.ndarray, ub: np.ndarray) -> np.ndarray:
        lo = np.maximum(lb - xk, -delta)
        hi = np.minimum(ub - xk, delta)
        safe_h = np.where(h > 0.0, h, 1.0)
        newton = np.where(h > 0.0, np.clip(-g / safe_h, lo, hi), 0.0)
        # zero first so ties keep the coordinate fixed
        candidates = np.vstack([np.zeros_like(xk), newton, lo, hi])
        values = g * candidates + 0.5 * h * candidates ** 2
        choice = np.argmin(values, axis=0)
        return candidates[choice, np.arange(len(xk))]

    # ------------------------------------------------------------------
    # Main loop
    # ------------------------------------------------------------------

    def _run(self, fun: BudgetedObjective, x0: np.ndarray,
             problem: ScalarProblem) -> Tuple[bool, str]:
        lb, ub = problem.lower, problem.upper
        rho_begin, rho_end = self._radii(problem)
        max_delta = float(np.max(ub - lb))

        delta = rho_begin
        xk = x0.copy()
        fk = fun.trace.records[-1][1]
        g, h = self._stencil(fun, xk, fk, delta, lb, ub)
        model_step = delta
        resets = 0

        while True:
            if not (np.all(np.isfinite(g)) and np.all(np.isfinite(h)) and np.isfinite(fk)):
                resets += 1
                if resets > self.max_resets:
                    return True, "model degenerate after repeated stencil resets"
                delta = rho_begin / 10.0
                xk = fun.trace.best_x.copy()
                fk = fun.trace.best_value
                logger.debug("Stencil reset %d around best point (radius %.3g)", resets, delta)
                g, h = self._stencil(fun, xk, fk, delta, lb, ub)
                model_step = delta
                continue

            if delta < rho_end:
                return True, "trust region radius below rho_end"

            if delta < GEOMETRY_RATIO * model_step:
                # stencil points lie far outside the region the model now serves
                logger.debug("Rebuilding stencil at radius %.3g (previous step %.3g)", delta, model_step)
                g, h = self._stencil(fun, xk, fk, delta, lb, ub)
                model_step = delta
                continue

            s = self._solve_subproblem(g, h, xk, delta, lb, ub)
            predicted = -(float(g @ s) + 0.5 * float(h @ (s * s)))
            if predicted <= PREDICTION_TOL * max(1.0, abs(fk)):
                delta *= SHRINK_FACTOR
                continue

            x_trial = np.clip(xk + s, lb, ub)
            s = x_trial - xk
            f_trial = fun(x_trial)
            if np.isfinite(f_trial):
                ratio = (fk - f_trial) / predicted
                g, h = self._least_change_update(g, h, fk, s, f_trial)
            else:
                ratio = -np.inf

            if ratio > ACCEPT_RATIO:
                xk, fk = x_trial, f_trial
                g = g + h * s
                if ratio > EXPAND_RATIO:
                    delta = min(EXPAND_FACTOR * delta, max_delta)
            else:
                delta *= SHRINK_FACTOR
