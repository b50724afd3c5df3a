# ============================================================================
# SOURCEFILE: bobyqa.py
# RELPATH: tpb_bench/src/core/optimizers/bobyqa.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Adapter for the optional Py-BOBYQA package
# ============================================================================

"""
Py-BOBYQA adapter (optimizer kind ``bobyqa``).

Runs ``pybobyqa.solve`` with its default parameters apart from the box,
the evaluation cap and the radii. Only registered when the package imports.
"""

from typing import Optional, Tuple
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from core.exceptions import OptimizerUnavailableError
from core.models import ScalarProblem
from core.optimizers.base import BudgetedObjective, OptimizerBase
from core.optimizers.trust_region import DEFAULT_RHO_END, default_rho_begin

logger = logging.getLogger(__name__)

try:
    import pybobyqa
    IS_PYBOBYQA_INSTALLED = True
except ImportError:  # pragma: no cover - depends on the environment
    pybobyqa = None
    IS_PYBOBYQA_INSTALLED = False


class BobyqaOptimizer(OptimizerBase):

    def __init__(self, rho_begin: Optional[float] = None, rho_end: float = DEFAULT_RHO_END):
        self.rho_begin = rho_begin
        self.rho_end = rho_end

    @property
    def optimizer_name(self) -> str:
        return "bobyqa"

    def _validate(self, problem: ScalarProblem) -> None:
        if not IS_PYBOBYQA_INSTALLED:
            raise OptimizerUnavailableError(self.optimizer_name, "Py-BOBYQA")

    def _run(self, fun: BudgetedObjective, x0: np.ndarray,
             problem: ScalarProblem) -> Tuple[bool, str]:
        if fun.remaining <= 0:
            return False, "budget exhausted by the initial point"
        rho_begin = default_rho_begin(problem) if self.rho_begin is None else self.rho_begin
        # pybobyqa re-evaluates x0 and wants maxfun > npt; the wrapper still
        # enforces the real cap by raising BudgetExhaustedError
        npt = 2 * problem.dimension + 1
        result = pybobyqa.solve(
            fun, x0.copy(),
            bounds=(problem.lower, problem.upper),
            maxfun=max(fun.remaining, npt + 1),
            rhobeg=rho_begin,
            rhoend=self.rho_end,
            print_progress=False,
        )
        return result.flag == result.EXIT_SUCCESS, str(result.msg)
