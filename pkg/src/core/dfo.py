# ============================================================================
# SOURCEFILE: dfo.py
# RELPATH: tpb_bench/src/core/dfo.py
# ============================================================================

from typing import Dict, List, Optional, Type
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import OptimizerNotFoundError
from core.models import EvaluationTrace, ScalarProblem
from core.optimizers.base import OptimizerBase
from core.optimizers.nelder_mead import NelderMeadOptimizer
from core.optimizers.trust_region import DEFAULT_RHO_END, TrustRegionOptimizer

DEFAULT_OPTIMIZER = "trust_region"


class OptimizerRegistry:
    def __init__(self):
        self._optimizers: Dict[str, Type[OptimizerBase]] = {}
        self._register_builtin_optimizers()

    def _register_builtin_optimizers(self):
        self.register(TrustRegionOptimizer)
        self.register(NelderMeadOptimizer)
        try:
            from core.optimizers.bobyqa import BobyqaOptimizer, IS_PYBOBYQA_INSTALLED
            if IS_PYBOBYQA_INSTALLED:
                self.register(BobyqaOptimizer)
        except ImportError:
            pass

    def register(self, optimizer_class: Type[OptimizerBase]) -> None:
        if not issubclass(optimizer_class, OptimizerBase):
            raise TypeError(f"{optimizer_class.__name__} must be an OptimizerBase subclass")
        instance = optimizer_class()
        self._optimizers[instance.optimizer_name] = optimizer_class

    def get(self, optimizer_name: str, **options) -> OptimizerBase:
        if optimizer_name not in self._optimizers:
            raise OptimizerNotFoundError(optimizer_name, self.list_optimizers())
        return self._optimizers[optimizer_name](**options)

    def list_optimizers(self) -> List[str]:
        return sorted(self._optimizers.keys())

    def __contains__(self, optimizer_name: str) -> bool:
        return optimizer_name in self._optimizers


_default_registry = None

def get_default_registry() -> OptimizerRegistry:
    global _default_registry
    if _default_registry is None:
        _default_registry = OptimizerRegistry()
    return _default_registry

def optimize(problem: ScalarProblem, x_init: np.ndarray,
             kind: str = DEFAULT_OPTIMIZER, **options) -> EvaluationTrace:
    """Run the optimizer registered as ``kind`` on ``problem`` from ``x_init``."""
    return get_default_registry().get(kind, **options).minimize(problem, x_init)

def tr_quadratic_optimize(problem: ScalarProblem, x_init: np.ndarray,
                          rho_begin: Optional[float] = None,
                          rho_end: float = DEFAULT_RHO_END) -> EvaluationTrace:
    return TrustRegionOptimizer(rho_begin=rho_begin, rho_end=rho_end).minimize(problem, x_init)

def nelder_mead_optimize(problem: ScalarProblem, x_init: np.ndarray) -> EvaluationTrace:
    return NelderMeadOptimizer().minimize(problem, x_init)
