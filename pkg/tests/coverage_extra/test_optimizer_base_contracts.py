# ============================================================================
# SOURCEFILE: test_optimizer_base_contracts.py
# RELPATH: tpb_bench/tests/coverage_extra/test_optimizer_base_contracts.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Abstract method enforcement and shared minimize() behaviour
# ============================================================================

"""
Contract tests for OptimizerBase.

Coverage targets: abstract members, the ``_validate`` hook, budget
exhaustion escaping ``_run`` and the repr.
"""

import pytest
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../../src')))

from core.exceptions import OptimizerPreconditionError
from core.optimizers.base import OptimizerBase

pytestmark = [pytest.mark.unit, pytest.mark.dfo]


class GreedyCoordinate(OptimizerBase):
    """Steps along each axis until the budget runs out."""

    @property
    def optimizer_name(self) -> str:
        return "greedy"

    def _run(self, fun, x0, problem):
        x = x0.copy()
        while True:
            for n in range(problem.dimension):
                step = np.zeros_like(x)
                step[n] = 0.5
                fun(x - step)


class Picky(OptimizerBase):

    @property
    def optimizer_name(self) -> str:
        return "picky"

    def _validate(self, problem):
        if problem.max_evals < 10:
            raise OptimizerPreconditionError(self.optimizer_name, "needs at least 10 evaluations")

    def _run(self, fun, x0, problem):
        return True, "done"


class TestAbstractMethodEnforcement:

    def test_cannot_instantiate_base(self):
        with pytest.raises(TypeError) as exc_info:
            OptimizerBase()
        assert "abstract" in str(exc_info.value).lower()

    def test_abstract_members(self):
        assert OptimizerBase.optimizer_name.fget.__isabstractmethod__
        assert OptimizerBase._run.__isabstractmethod__

    def test_incomplete_subclass(self):
        class NameOnly(OptimizerBase):
            @property
            def optimizer_name(self) -> str:
                return "name_only"

        with pytest.raises(TypeError):
            NameOnly()


class TestMinimizeBehaviour:

    def test_exhaustion_inside_run_returns_trace(self, make_scalar_problem):
        problem = make_scalar_problem(lambda x: float(np.sum(x ** 2)), n=2, max_evals=7)
        trace = GreedyCoordinate().minimize(problem, np.array([1.0, 1.0]))
        assert trace.n_evals == 7
        assert not trace.terminated_early
        assert trace.message == "Evaluation budget of 7 exhausted"

    def test_validate_hook_runs_before_evaluation(self, make_scalar_problem):
        calls = []
        problem = make_scalar_problem(lambda x: calls.append(x) or 0.0, n=2, max_evals=5)
        with pytest.raises(OptimizerPreconditionError):
            Picky().minimize(problem, np.zeros(2))
        assert calls == []

    def test_run_result_copied_to_trace(self, make_scalar_problem):
        problem = make_scalar_problem(lambda x: 1.0, n=2, max_evals=20)
        trace = Picky().minimize(problem, np.zeros(2))
        assert trace.terminated_early
        assert trace.message == "done"
        assert trace.n_evals == 1

    def test_repr(self):
        assert repr(Picky()) == "Picky(name='picky')"
