# ============================================================================
# SOURCEFILE: base.py
# RELPATH: tpb_bench/src/core/optimizers/base.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Abstract optimizer interface and the evaluation budget wrapper
# ============================================================================

"""
Optimizer Base Interface for TPB Bench.

Every bounded derivative-free optimizer derives from ``OptimizerBase`` and
implements ``_run``. The base class owns the parts of the contract that must
not differ between optimizers:

1. x_init is clipped into the box (with a warning) and evaluated first
2. every objective call goes through ``BudgetedObjective``, which clips,
   counts, records and raises ``BudgetExhaustedError`` at the cap
3. budget exhaustion ends the run cleanly and the trace is returned
"""

from abc import ABC, abstractmethod
from typing import Tuple
import logging
import time
import sys
import os

import numpy as np

# Add parent directory to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from core.exceptions import BudgetExhaustedError
from core.models import EvaluationTrace, ScalarProblem
from core.validators import check_dimension, clip_to_bounds

logger = logging.getLogger(__name__)


class BudgetedObjective:
    """
    Callable wrapper enforcing ``problem.max_evals`` and recording every call.

    Points handed to the objective are always clipped into the box, so the
    recorded decision vectors satisfy the bounds whatever the optimizer asks.
    """

    def __init__(self, problem: ScalarProblem):
        self.problem = problem
        self.trace = EvaluationTrace()

    @property
    def remaining(self) -> int:
        return self.problem.max_evals - self.trace.n_evals

    def __call__(self, x: np.ndarray) -> float:
        if self.remaining <= 0:
            raise BudgetExhaustedError(self.problem.max_evals)
        point = np.clip(np.asarray(x, dtype=float), self.problem.lower, self.problem.upper)

        start = time.perf_counter()
        value = float(self.problem.objective(point.copy()))
        self.trace.objective_seconds += time.perf_counter() - start

        self.trace.records.append((point, value))
        comparable = value if np.isfinite(value) else np.inf
        if self.trace.best_x is None or comparable < self.trace.best_value:
            self.trace.best_x = point
            self.trace.best_value = comparable
        return value


class OptimizerBase(ABC):
    """
    Abstract base class for bounded single-objective optimizers.

    Concrete optimizers provide ``optimizer_name`` and ``_run``. ``_run``
    receives the budget wrapper and returns ``(terminated_early, message)``;
    it may simply let ``BudgetExhaustedError`` escape when the cap is hit.
    """

    @property
    @abstractmethod
    def optimizer_name(self) -> str:
        """Registry identifier, e.g. 'trust_region'."""
        pass

    @abstractmethod
    def _run(self, fun: BudgetedObjective, x0: np.ndarray,
             problem: ScalarProblem) -> Tuple[bool, str]:
        """
        Optimize ``fun`` starting from the already evaluated ``x0``.

        Returns:
            (terminated_early, message)
        """
        pass

    def _validate(self, problem: ScalarProblem) -> None:
        """Hook for parameter checks that must fail before any evaluation."""
        return None

    def minimize(self, problem: ScalarProblem, x_init: np.ndarray) -> EvaluationTrace:
        """
        Minimize ``problem.objective`` within the box starting at ``x_init``.

        Args:
            problem: Scalar problem with bounds and evaluation cap
            x_init: Starting point (clipped into the box if outside)

        Returns:
            EvaluationTrace with one record per objective call
        """
        self._validate(problem)
        x0 = np.asarray(x_init, dtype=float)
        check_dimension(self.optimizer_name, x0, problem.dimension)
        x0, moved = clip_to_bounds(x0, problem.lower, problem.upper)
        if moved:
            logger.warning("%s: x_init outside bounds, clipped to %s", self.optimizer_name, x0.tolist())

        fun = BudgetedObjective(problem)
        try:
            fun(x0)
            terminated_early, message = self._run(fun, x0, problem)
        except BudgetExhaustedError as exc:
            terminated_early, message = False, str(exc)

        trace = fun.trace
        trace.terminated_early = terminated_early
        trace.message = message
        logger.debug(
            "%s finished: %d evals, best %.6g (%s)",
            self.optimizer_name, trace.n_evals, trace.best_value, message,
        )
        return trace

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.optimizer_name}')"
