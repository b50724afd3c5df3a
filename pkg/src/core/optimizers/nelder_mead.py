# ============================================================================
# SOURCEFILE: nelder_mead.py
# RELPATH: tpb_bench/src/core/optimizers/nelder_mead.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Bounded Nelder-Mead simplex method
# ============================================================================

"""
Nelder-Mead simplex method with box clipping.

Coefficients: reflection 1, expansion 2, contraction 0.5, shrink 0.5.
Candidates leaving the box are clipped. The run stops when both the
function-value spread and the simplex diameter fall below their tolerances.
"""

from typing import Optional, Tuple
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from core.models import ScalarProblem
from core.optimizers.base import BudgetedObjective, OptimizerBase

logger = logging.getLogger(__name__)

REFLECTION = 1.0
EXPANSION = 2.0
CONTRACTION = 0.5
SHRINK = 0.5


class NelderMeadOptimizer(OptimizerBase):
    """
    Attributes:
        initial_step: Edge length of the starting simplex per coordinate
            (None: 0.1 x box width)
        xatol: Simplex diameter tolerance (infinity norm)
        fatol: Function-value spread tolerance
    """

    def __init__(self, initial_step: Optional[float] = None,
                 xatol: float = 1e-10, fatol: float = 1e-12):
        self.initial_step = initial_step
        self.xatol = xatol
        self.fatol = fatol

    @property
    def optimizer_name(self) -> str:
        return "nelder_mead"

    def _initial_simplex(self, x0: np.ndarray, lb: np.ndarray, ub: np.ndarray) -> np.ndarray:
        widths = ub - lb
        steps = 0.1 * widths if self.initial_step is None else np.full(len(x0), float(self.initial_step))
        vertices = [x0]
        for i in range(len(x0)):
            v = x0.copy()
            v[i] = x0[i] + steps[i] if x0[i] + steps[i] <= ub[i] else x0[i] - steps[i]
            vertices.append(v)
        return np.vstack(vertices)

    def _run(self, fun: BudgetedObjective, x0: np.ndarray,
             problem: ScalarProblem) -> Tuple[bool, str]:
        lb, ub = problem.lower, problem.upper

        def clip(x: np.ndarray) -> np.ndarray:
            return np.clip(x, lb, ub)

        simplex = self._initial_simplex(x0, lb, ub)
        values = np.empty(len(simplex))
        values[0] = fun.trace.records[-1][1]
        for i in range(1, len(simplex)):
            values[i] = fun(simplex[i])
        values = np.where(np.isfinite(values), values, np.inf)

        while True:
            order = np.argsort(values, kind="stable")
            simplex = simplex[order]
            values = values[order]

            spread = float(np.max(np.abs(values - values[0]))) if np.isfinite(values[-1]) else np.inf
            diameter = float(np.max(np.abs(simplex[1:] - simplex[0])))
            if spread <= self.fatol and diameter <= self.xatol:
                return True, "simplex converged"

            centroid = simplex[:-1].mean(axis=0)
            worst = simplex[-1]
            direction = centroid - worst

            x_reflect = clip(centroid + REFLECTION * direction)
            f_reflect = self._value(fun(x_reflect))

            if f_reflect < values[0]:
                x_expand = clip(centroid + EXPANSION * direction)
                f_expand = self._value(fun(x_expand))
                if f_expand < f_reflect:
                    simplex[-1], values[-1] = x_expand, f_expand
                else:
                    simplex[-1], values[-1] = x_reflect, f_reflect
                continue

            if f_reflect < values[-2]:
                simplex[-1], values[-1] = x_reflect, f_reflect
                continue

            if f_reflect < values[-1]:
                x_contract = clip(centroid + CONTRACTION * direction)
                f_contract = self._value(fun(x_contract))
                accepted = f_contract <= f_reflect
            else:
                x_contract = clip(centroid - CONTRACTION * direction)
                f_contract = self._value(fun(x_contract))
                accepted = f_contract < values[-1]

            if accepted:
                simplex[-1], values[-1] = x_contract, f_contract
                continue

            best = simplex[0]
            for i in range(1, len(simplex)):
                simplex[i] = clip(best + SHRINK * (simplex[i] - best))
                values[i] = self._value(fun(simplex[i]))

    @staticmethod
    def _value(value: float) -> float:
        return value if np.isfinite(value) else np.inf
