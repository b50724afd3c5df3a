# ============================================================================
# SOURCEFILE: tpb.py
# RELPATH: tpb_bench/src/core/tpb.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Two-phase framework: scalarized optimization then Bezier interpolation
# ============================================================================

"""
TPB orchestrator.

First phase
    K weight vectors are processed with a per-run cap
    ``budget_opt = floor(budget * r_1st / K)``. The M pure objectives are
    optimized from the center of the box; every other weight is optimized on
    the normalized weighted sum, warm-started from the best ledger entry for
    that weight. Finally one solution per weight (B*) is picked from the
    ledger under the final ideal/nadir estimate.

Second phase
    A Bezier simplex is fitted to B* with the weights as parameters and the
    remaining ``budget_2nd = budget - budget_1st`` evaluations are spent on
    interpolated solutions at equally spaced interior parameters.

``run_tpb1`` stops after the first phase; ``run_tpb2`` replaces it with a
Latin hypercube sample of 11N - 1 points.
"""

from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple
import logging
import time
import sys
import os

import numpy as np
from scipy.stats import qmc

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.bezier import center_out_order, evaluate, fit_ols, simplex_grid
from core.dfo import get_default_registry
from core.exceptions import PreconditionError, RunConfigError
from core.models import (
    EvaluationLedger, PhaseOneResult, PhaseTwoResult, ProblemInstance,
    RunMetadata, ScalarProblem, TpbConfig,
)
from core.optimizers.base import OptimizerBase
from core.problems import evaluate_objectives
from core.scalarize import best_index, is_extreme, scalarize, update_ref_points, weight_set
from core.validators import clip_to_bounds

logger = logging.getLogger(__name__)

RunResult = Tuple[EvaluationLedger, RunMetadata]


def phase_budget(budget: int, r_1st: float, K: int) -> int:
    """
    Per-scalar-problem cap ``floor(budget * r_1st / K)``.

    ``r_1st`` is taken at its decimal value, so 40 * 0.9 / 3 gives exactly 12.

    Raises:
        RunConfigError: If budget < K, r_1st is outside (0, 1) or the cap is 0
    """
    if K < 1 or budget < K:
        raise RunConfigError("budget", budget, f"must be >= K={K}")
    if not 0.0 < r_1st < 1.0:
        raise RunConfigError("r_1st", r_1st, "must lie strictly between 0 and 1")
    value = (budget * Fraction(repr(float(r_1st)))) // K
    if value < 1:
        raise RunConfigError("budget", budget, f"budget_opt = floor({budget} * {r_1st} / {K}) = 0")
    return int(value)


def first_phase_ceiling(budget: int, r_1st: float, K: int) -> int:
    """Most evaluations the first phase may spend: ``K * budget_opt``."""
    return K * phase_budget(budget, r_1st, K)


def initial_sample_size(N: int) -> int:
    return 11 * N - 1


def _objectives_of(problem: ProblemInstance) -> Callable[[np.ndarray], np.ndarray]:
    return lambda x: evaluate_objectives(problem, x)


def first_phase(problem: ProblemInstance, cfg: TpbConfig, ledger: EvaluationLedger,
                optimizer: Optional[OptimizerBase] = None) -> PhaseOneResult:
    """
    Run the K scalarized optimizations and select B*.

    Every f-call goes through ``ledger``; each optimizer run is capped at
    ``min(budget_opt, ledger.remaining)``. Runs that cannot start because the
    ledger is full are skipped and the result is flagged ``truncated``.
    """
    if len(ledger) != 0:
        raise PreconditionError("first_phase", "ledger must be empty")
    M = problem.M
    budget_opt = phase_budget(cfg.budget, cfg.r_1st, cfg.K)
    weights = weight_set(cfg.K, M)
    optimizer = optimizer or get_default_registry().get(cfg.optimizer_kind)
    f = _objectives_of(problem)
    lower, upper = problem.lower, problem.upper
    truncated = False

    def run(objective: Callable[[np.ndarray], float], x_init: np.ndarray) -> None:
        nonlocal truncated
        cap = min(budget_opt, ledger.remaining)
        if cap < budget_opt:
            truncated = True
        if cap < 1:
            return
        trace = optimizer.minimize(ScalarProblem(objective, lower, upper, cap), x_init)
        logger.debug("Phase one run: %d evals, best %.6g", trace.n_evals, trace.best_value)

    x_center = (lower + upper) / 2.0
    for m in range(M):
        run(lambda x, m=m: float(ledger.record(f, x)[m]), x_center)

    for w in weights:
        if is_extreme(w):
            continue
        # reference points frozen for this weight's run
        ref = update_ref_points(ledger)
        x_warm = ledger.decisions()[best_index(w, ledger.objectives(), ref)]
        run(lambda x, w=w, ref=ref: scalarize(w, ledger.record(f, x), ref), x_warm)

    ref = update_ref_points(ledger)
    X, F = ledger.decisions(), ledger.objectives()
    b_star = [X[best_index(w, F, ref)].copy() for w in weights]
    if truncated:
        logger.warning("First phase truncated by the ledger capacity (%d)", ledger.capacity)
    logger.info("First phase used %d of at most %d evaluations",
                len(ledger), first_phase_ceiling(cfg.budget, cfg.r_1st, cfg.K))
    return PhaseOneResult(
        b_star=b_star, weights=weights, ref=ref,
        evals_used=len(ledger), budget_opt=budget_opt, truncated=truncated,
    )


def second_phase(p1: PhaseOneResult, cfg: TpbConfig, ledger: EvaluationLedger,
                 problem: ProblemInstance) -> PhaseTwoResult:
    """
    Fit a Bezier simplex to B* and evaluate interpolated solutions.

    Interior parameters are consumed from the simplex center outward until
    the ledger is full. Interpolated points outside the box are clipped.
    """
    M, N = problem.M, problem.N
    budget_2nd = ledger.remaining
    model = fit_ols(list(zip(p1.weights, p1.b_star)), M, cfg.D, N)
    params = simplex_grid(M, budget_2nd, drop_extremes=True)
    f = _objectives_of(problem)

    solutions = []
    clipped = 0
    for i in center_out_order(params):
        if ledger.is_full:
            break
        x, moved = clip_to_bounds(evaluate(model, params[i]), problem.lower, problem.upper)
        clipped += int(moved)
        solutions.append((x, ledger.record(f, x)))

    if clipped:
        logger.warning("%d interpolated solution(s) outside the box were clipped", clipped)
    return PhaseTwoResult(solutions=solutions, model=model, params=params, clipped=clipped)


class _PhaseClock:
    """Wall time of a phase minus the time spent inside the objective."""

    def __init__(self, ledger: EvaluationLedger):
        self.ledger = ledger
        self.seconds: Dict[str, float] = {}

    def measure(self, name: str, action: Callable[[], object]):
        start = time.perf_counter()
        inside = self.ledger.objective_seconds
        result = action()
        elapsed = time.perf_counter() - start
        self.seconds[name] = max(0.0, elapsed - (self.ledger.objective_seconds - inside))
        return result


def _metadata(algorithm: str, problem: ProblemInstance, cfg: TpbConfig, p1: PhaseOneResult,
              p2: Optional[PhaseTwoResult], clock: _PhaseClock) -> RunMetadata:
    return RunMetadata(
        algorithm=algorithm,
        config=cfg.as_dict(),
        problem_key=problem.key,
        budget_opt=p1.budget_opt,
        budget_1st=p1.evals_used,
        budget_2nd=(cfg.budget - p1.evals_used) if p2 is not None else 0,
        b_star=[b.tolist() for b in p1.b_star],
        params_int=[t.tolist() for t in p2.params] if p2 is not None else [],
        model=p2.model if p2 is not None else None,
        phase_seconds=dict(clock.seconds),
        degenerate_fit=bool(p2 is not None and p2.model is not None and p2.model.degenerate),
        clipped_points=p2.clipped if p2 is not None else 0,
    )


def run_tpb(problem: ProblemInstance, cfg: TpbConfig) -> RunResult:
    """Full two-phase run; the ledger never exceeds ``cfg.budget`` entries."""
    ledger = EvaluationLedger(cfg.budget)
    clock = _PhaseClock(ledger)
    p1 = clock.measure("first", lambda: first_phase(problem, cfg, ledger))
    p2 = clock.measure("second", lambda: second_phase(p1, cfg, ledger, problem))
    logger.info("tpb on %s: %d evals (%d + %d)", problem.key, len(ledger), p1.evals_used, len(p2))
    return ledger, _metadata("tpb", problem, cfg, p1, p2, clock)


def run_tpb1(problem: ProblemInstance, cfg: TpbConfig) -> RunResult:
    """First phase only; the remaining budget is left unspent."""
    ledger = EvaluationLedger(cfg.budget)
    clock = _PhaseClock(ledger)
    p1 = clock.measure("first", lambda: first_phase(problem, cfg, ledger))
    logger.info("tpb1 on %s: %d evals", problem.key, len(ledger))
    return ledger, _metadata("tpb1", problem, cfg, p1, None, clock)


def latin_hypercube_sample(problem: ProblemInstance, n: int, seed: int) -> np.ndarray:
    sampler = qmc.LatinHypercube(d=problem.N, seed=np.random.default_rng(seed))
    return qmc.scale(sampler.random(n), problem.lower, problem.upper)


def _initial_design_phase(problem: ProblemInstance, cfg: TpbConfig,
                          ledger: EvaluationLedger) -> PhaseOneResult:
    n_init = initial_sample_size(problem.N)
    f = _objectives_of(problem)
    for x in latin_hypercube_sample(problem, n_init, cfg.seed):
        ledger.record(f, x)
    weights = weight_set(cfg.K, problem.M)
    ref = update_ref_points(ledger)
    X, F = ledger.decisions(), ledger.objectives()
    b_star = [X[best_index(w, F, ref)].copy() for w in weights]
    return PhaseOneResult(b_star=b_star, weights=weights, ref=ref, evals_used=len(ledger), budget_opt=0)


def run_tpb2(problem: ProblemInstance, cfg: TpbConfig) -> RunResult:
    """
    Latin hypercube design of 11N - 1 points instead of the first phase.

    Raises:
        RunConfigError: If ``cfg.budget <= 11N - 1``
    """
    n_init = initial_sample_size(problem.N)
    if cfg.budget <= n_init:
        raise RunConfigError("budget", cfg.budget, f"tpb2 needs more than 11N - 1 = {n_init} evaluations")
    ledger = EvaluationLedger(cfg.budget)
    clock = _PhaseClock(ledger)
    p1 = clock.measure("first", lambda: _initial_design_phase(problem, cfg, ledger))
    p2 = clock.measure("second", lambda: second_phase(p1, cfg, ledger, problem))
    logger.info("tpb2 on %s: %d evals (%d + %d)", problem.key, len(ledger), p1.evals_used, len(p2))
    return ledger, _metadata("tpb2", problem, cfg, p1, p2, clock)


ALGORITHMS: Dict[str, Callable[[ProblemInstance, TpbConfig], RunResult]] = {
    "tpb": run_tpb,
    "tpb1": run_tpb1,
    "tpb2": run_tpb2,
}


def run_algorithm(name: str, problem: ProblemInstance, cfg: TpbConfig) -> RunResult:
    if name not in ALGORITHMS:
        raise RunConfigError("algorithm", name, f"expected one of {', '.join(ALGORITHMS)}")
    return ALGORITHMS[name](problem, cfg)
