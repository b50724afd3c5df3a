# ============================================================================
# SOURCEFILE: models.py
# RELPATH: tpb_bench/src/core/models.py
# ============================================================================

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Dict, List, Optional, Tuple
import time

import numpy as np

from core.exceptions import DimensionError, LedgerFullError, PreconditionError, RunConfigError
from core.validators import validate_bounds

MultiIndex = Tuple[int, ...]
DecisionVector = np.ndarray
ObjectiveVector = np.ndarray
SimplexParam = np.ndarray
WeightVector = np.ndarray


def _frozen_array(values: Any, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-D array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BezierSimplexModel:
    """Bezier simplex of degree D mapping the (M-1)-simplex into R^N."""
    M: int
    D: int
    N: int
    indices: Tuple[MultiIndex, ...]
    control_points: np.ndarray
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.M < 1 or self.D < 0 or self.N < 1:
            raise PreconditionError("BezierSimplexModel", f"invalid sizes M={self.M}, D={self.D}, N={self.N}")
        expected = comb(self.D + self.M - 1, self.M - 1)
        indices = tuple(tuple(int(v) for v in d) for d in self.indices)
        if len(indices) != expected or len(set(indices)) != expected:
            raise PreconditionError(
                "BezierSimplexModel", f"need {expected} distinct multi-indices, got {len(indices)}"
            )
        for d in indices:
            if len(d) != self.M or sum(d) != self.D or min(d) < 0:
                raise PreconditionError("BezierSimplexModel", f"multi-index {d} not in N_D^M")
        points = _frozen_array(self.control_points, 2)
        if points.shape != (expected, self.N):
            raise PreconditionError(
                "BezierSimplexModel", f"control points must have shape {(expected, self.N)}, got {points.shape}"
            )
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "control_points", points)

    def control_point(self, d: MultiIndex) -> np.ndarray:
        return self.control_points[self.indices.index(tuple(d))]

    def as_dict(self) -> Dict[MultiIndex, np.ndarray]:
        return {d: self.control_points[i] for i, d in enumerate(self.indices)}

    @property
    def degenerate(self) -> bool:
        return bool(self.metadata.get("degenerate", False))


@dataclass(frozen=True, eq=False)
class RefPoints:
    """Approximated ideal and nadir points used for normalization."""
    z_ideal: np.ndarray
    z_nadir: np.ndarray

    def __post_init__(self) -> None:
        ideal = _frozen_array(self.z_ideal, 1)
        nadir = _frozen_array(self.z_nadir, 1)
        if ideal.shape != nadir.shape:
            raise DimensionError("RefPoints", len(ideal), len(nadir))
        if np.any(ideal > nadir):
            raise PreconditionError("RefPoints", "z_ideal must not exceed z_nadir")
        object.__setattr__(self, "z_ideal", ideal)
        object.__setattr__(self, "z_nadir", nadir)

    @property
    def M(self) -> int:
        return len(self.z_ideal)


@dataclass
class ScalarProblem:
    """Single-objective box-constrained problem with an evaluation cap."""
    objective: Callable[[np.ndarray], float]
    lower: np.ndarray
    upper: np.ndarray
    max_evals: int

    def __post_init__(self) -> None:
        self.lower, self.upper = validate_bounds(self.lower, self.upper)
        if int(self.max_evals) < 1:
            raise PreconditionError("ScalarProblem", f"max_evals must be >= 1, got {self.max_evals}")
        self.max_evals = int(self.max_evals)

    @property
    def dimension(self) -> int:
        return len(self.lower)


@dataclass
class EvaluationTrace:
    """Every objective call of one optimizer run, in order."""
    records: List[Tuple[np.ndarray, float]] = field(default_factory=list)
    best_x: Optional[np.ndarray] = None
    best_value: float = float("inf")
    terminated_early: bool = False
    message: str = ""
    objective_seconds: float = 0.0

    @property
    def n_evals(self) -> int:
        return len(self.records)

    def best_so_far(self) -> np.ndarray:
        values = np.array([v for _, v in self.records], dtype=float)
        return np.minimum.accumulate(values) if len(values) else values


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Bi-objective problem built from two shifted and rotated single-objective functions."""
    f1_kind: str
    f2_kind: str
    N: int
    seed: int
    shift1: np.ndarray
    shift2: np.ndarray
    rotation1: np.ndarray
    rotation2: np.ndarray
    lower_bound: float = -5.0
    upper_bound: float = 5.0

    def __post_init__(self) -> None:
        for name in ("shift1", "shift2"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name), 1))
        for name in ("rotation1", "rotation2"):
            object.__setattr__(self, name, _frozen_array(getattr(self, name), 2))
        for name in ("shift1", "shift2"):
            if len(getattr(self, name)) != self.N:
                raise DimensionError("ProblemInstance", self.N, len(getattr(self, name)))
        for name in ("rotation1", "rotation2"):
            if getattr(self, name).shape != (self.N, self.N):
                raise DimensionError("ProblemInstance", self.N, getattr(self, name).shape[0])

    @property
    def M(self) -> int:
        return 2

    @property
    def lower(self) -> np.ndarray:
        return np.full(self.N, self.lower_bound)

    @property
    def upper(self) -> np.ndarray:
        return np.full(self.N, self.upper_bound)

    @property
    def kinds(self) -> Tuple[str, str]:
        return (self.f1_kind, self.f2_kind)

    @property
    def key(self) -> str:
        return f"{self.f1_kind}-{self.f2_kind}_n{self.N}_i{self.seed}"


@dataclass(frozen=True, eq=False)
class ReferenceData:
    """Discretized Pareto front of a problem with its reference hypervolume."""
    front: np.ndarray
    ref_hv: float
    z_ideal: np.ndarray
    z_nadir: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "front", _frozen_array(self.front, 2))
        object.__setattr__(self, "z_ideal", _frozen_array(self.z_ideal, 1))
        object.__setattr__(self, "z_nadir", _frozen_array(self.z_nadir, 1))
        if not 0.0 < self.ref_hv <= 1.0 + 1e-12:
            raise PreconditionError("ReferenceData", f"ref_hv must lie in (0, 1], got {self.ref_hv}")

    @property
    def ref_points(self) -> RefPoints:
        return RefPoints(self.z_ideal, self.z_nadir)


@dataclass(frozen=True)
class TpbConfig:
    """Control parameters of one TPB run (defaults: K=M+1=3, D=2, r_1st=0.9)."""
    budget: int
    K: int = 3
    D: int = 2
    r_1st: float = 0.9
    optimizer_kind: str = "trust_region"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.K < 2:
            raise RunConfigError("K", self.K, "need at least two weight vectors")
        if self.D < 1:
            raise RunConfigError("D", self.D, "degree must be >= 1")
        if not 0.0 < self.r_1st < 1.0:
            raise RunConfigError("r_1st", self.r_1st, "must lie strictly between 0 and 1")
        if self.budget < self.K:
            raise RunConfigError("budget", self.budget, f"must be >= K={self.K}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "budget": self.budget,
            "K": self.K,
            "D": self.D,
            "r_1st": self.r_1st,
            "optimizer_kind": self.optimizer_kind,
            "seed": self.seed,
        }


@dataclass(frozen=True, eq=False)
class LedgerEntry:
    eval_index: int
    x: np.ndarray
    f: np.ndarray


class EvaluationLedger:
    """
    Append-only record of every f-call of a run.

    The ledger owns the hard budget: ``append`` raises LedgerFullError once
    ``capacity`` entries exist. It also accumulates the wall time spent inside
    the objective so framework overhead can be reported separately.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise RunConfigError("budget", capacity, "ledger capacity must be >= 1")
        self.capacity = int(capacity)
        self.entries: List[LedgerEntry] = []
        self.objective_seconds = 0.0

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def remaining(self) -> int:
        return self.capacity - len(self.entries)

    @property
    def is_full(self) -> bool:
        return self.remaining <= 0

    def append(self, x: np.ndarray, f: np.ndarray) -> LedgerEntry:
        if self.is_full:
            raise LedgerFullError(self.capacity)
        x_arr = _frozen_array(x, 1)
        f_arr = _frozen_array(f, 1)
        entry = LedgerEntry(len(self.entries) + 1, x_arr, f_arr)
        self.entries.append(entry)
        return entry

    def record(self, evaluate: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
        """Evaluate ``x`` (if capacity allows), append it and return f(x)."""
        if self.is_full:
            raise LedgerFullError(self.capacity)
        start = time.perf_counter()
        f = np.asarray(evaluate(x), dtype=float)
        self.objective_seconds += time.perf_counter() - start
        self.append(x, f)
        return f

    def decisions(self) -> np.ndarray:
        if not self.entries:
            return np.empty((0, 0))
        return np.vstack([e.x for e in self.entries])

    def objectives(self) -> np.ndarray:
        if not self.entries:
            return np.empty((0, 0))
        return np.vstack([e.f for e in self.entries])


@dataclass
class PhaseOneResult:
    b_star: List[np.ndarray]
    weights: List[np.ndarray]
    ref: RefPoints
    evals_used: int
    budget_opt: int
    truncated: bool = False


@dataclass
class PhaseTwoResult:
    """Interpolated solutions of the second phase plus the fitted model."""
    solutions: List[Tuple[np.ndarray, np.ndarray]]
    model: Optional[BezierSimplexModel]
    params: List[np.ndarray]
    clipped: int = 0

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self) -> int:
        return len(self.solutions)


@dataclass
class RunMetadata:
    algorithm: str
    config: Dict[str, Any]
    problem_key: str
    budget_opt: int = 0
    budget_1st: int = 0
    budget_2nd: int = 0
    b_star: List[List[float]] = field(default_factory=list)
    params_int: List[List[float]] = field(default_factory=list)
    model: Optional[BezierSimplexModel] = None
    phase_seconds: Dict[str, float] = field(default_factory=dict)
    degenerate_fit: bool = False
    clipped_points: int = 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "algorithm": self.algorithm,
            "config": dict(self.config),
            "problem_key": self.problem_key,
            "budget_opt": self.budget_opt,
            "budget_1st": self.budget_1st,
            "budget_2nd": self.budget_2nd,
            "b_star": self.b_star,
            "params_int": self.params_int,
            "phase_seconds": dict(self.phase_seconds),
            "degenerate_fit": self.degenerate_fit,
            "clipped_points": self.clipped_points,
        }


@dataclass
class IndicatorTrace:
    """Anytime indicator values of one run and the first-hit index per target."""
    series: List[Tuple[int, float]]
    targets: np.ndarray
    hits: List[Optional[int]]

    @property
    def final_value(self) -> float:
        return self.series[-1][1] if self.series else float("inf")
