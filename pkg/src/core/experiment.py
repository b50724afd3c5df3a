# ============================================================================
# SOURCEFILE: experiment.py
# RELPATH: tpb_bench/src/core/experiment.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Run-grid expansion and execution, resume, and report emission
# ============================================================================

"""
Experiment driver.

``run_experiment`` expands an ExperimentConfig into one RunTask per
(problem, dimension, instance, algorithm, budget factor, K, r1st, D, seed),
skips tasks whose ``meta.json`` already exists, executes the rest (in a
process pool when more than one worker is available) and writes the
summary and reports. ``emit_reports`` rebuilds every report from the run
metadata on disk, so re-emission is byte-identical.

Layout under ``out_dir``::

    config.json
    fronts/front_<instance key>_r<resolution>.txt
    runs/<run key>/{ledger.jsonl, trace.csv, model.txt, meta.json}
    reports/{summary.csv, final_indicator.csv, wall_time.csv,
             parameter_sweep.csv, ecdf_<group>.csv}
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
import hashlib
import json
import logging
import os
import sys
import time

import numpy as np
import pandas as pd

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.assess import build_trace, ecdf
from core.config import ExperimentConfig
from core.exceptions import AssessError
from core.logging import StructuredLogger, get_logger
from core.models import IndicatorTrace, TpbConfig
from core.problems import make_problem, modality_label, reference_front
from core.tpb import run_algorithm
from core.writer import OverwritePolicy, ResultWriter, atomic_write_text, format_ecdf

logger = logging.getLogger(__name__)

FRONTS_DIR = "fronts"
SUMMARY_COLUMNS = [
    "run_key", "algorithm", "problem", "modality", "N", "instance", "budget_factor",
    "budget", "K", "r1st", "D", "seed", "status", "evals", "final_indicator",
]
PAIR_INDEX = ["problem", "N", "instance", "seed", "budget_factor", "K", "r1st", "D"]


@dataclass(frozen=True)
class RunTask:
    """One cell of the experiment grid."""
    algorithm: str
    f1_kind: str
    f2_kind: str
    N: int
    instance: int
    budget_factor: int
    K: int
    r1st: float
    D: int
    seed: int
    optimizer: str = "trust_region"
    resolution: int = 200

    @property
    def budget(self) -> int:
        return self.budget_factor * self.N

    @property
    def problem(self) -> str:
        return f"{self.f1_kind}/{self.f2_kind}"

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def run_key(self) -> str:
        """Readable prefix plus a stable hash of the whole sub-config."""
        digest = hashlib.sha256(json.dumps(self.as_dict(), sort_keys=True).encode("utf-8")).hexdigest()
        return (f"{self.algorithm}_{self.f1_kind}-{self.f2_kind}_n{self.N}_i{self.instance}"
                f"_b{self.budget_factor}_s{self.seed}_{digest[:12]}")

    def tpb_config(self) -> TpbConfig:
        return TpbConfig(budget=self.budget, K=self.K, D=self.D, r_1st=self.r1st,
                         optimizer_kind=self.optimizer, seed=self.seed)


def expand_grid(cfg: ExperimentConfig) -> List[RunTask]:
    """Every grid cell, instances numbered from 1 and seeds from 0."""
    tasks = []
    for (f1, f2), N, instance, algorithm, factor, K, r1st, D, seed in product(
        cfg.problems, cfg.dims, range(1, cfg.instances + 1), cfg.algorithms,
        cfg.budget_factors, cfg.K_values, cfg.r1st_values, cfg.D_values, range(cfg.seeds),
    ):
        tasks.append(RunTask(
            algorithm=algorithm, f1_kind=f1, f2_kind=f2, N=N, instance=instance,
            budget_factor=factor, K=K, r1st=r1st, D=D, seed=seed,
            optimizer=cfg.optimizer, resolution=cfg.resolution,
        ))
    return tasks


def _summary_row(task: RunTask, run_key: str, status: str,
                 evals: int = 0, final_indicator: float = float("nan")) -> Dict[str, Any]:
    return {
        "run_key": run_key,
        "algorithm": task.algorithm,
        "problem": task.problem,
        "modality": modality_label(task.f1_kind, task.f2_kind),
        "N": task.N,
        "instance": task.instance,
        "budget_factor": task.budget_factor,
        "budget": task.budget,
        "K": task.K,
        "r1st": task.r1st,
        "D": task.D,
        "seed": task.seed,
        "status": status,
        "evals": evals,
        "final_indicator": final_indicator,
    }


def execute_task(task: RunTask, out_dir: str) -> Dict[str, Any]:
    """
    Run one grid cell and persist it. Returns the run's metadata dict.

    Module-level so it can be shipped to worker processes.
    """
    writer = ResultWriter(Path(out_dir), OverwritePolicy.SKIP)
    run_key = task.run_key()
    problem = make_problem(task.f1_kind, task.f2_kind, task.N, task.instance)
    refdata = reference_front(problem, task.resolution, cache_dir=Path(out_dir) / FRONTS_DIR)

    start = time.perf_counter()
    ledger, metadata = run_algorithm(task.algorithm, problem, task.tpb_config())
    elapsed = time.perf_counter() - start
    trace = build_trace(ledger.objectives(), refdata)

    meta = {
        "run_key": run_key,
        "task": task.as_dict(),
        "summary": _summary_row(task, run_key, "ok", len(ledger), trace.final_value),
        "ref_hv": refdata.ref_hv,
        "hits": trace.hits,
        "targets": trace.targets.tolist(),
        "overhead_seconds": float(sum(metadata.phase_seconds.values())),
        "objective_seconds": ledger.objective_seconds,
        "elapsed_seconds": elapsed,
        "metadata": metadata.as_dict(),
    }
    writer.write_run(run_key, ledger, trace, meta, metadata.model)
    return meta


def _execute_safely(task: RunTask, out_dir: str) -> Tuple[RunTask, Optional[Dict[str, Any]], Optional[str], Optional[str]]:
    try:
        return task, execute_task(task, out_dir), None, None
    except Exception as exc:  # any failure marks the run failed; the grid goes on
        return task, None, str(exc), type(exc).__name__


def prepare_reference_fronts(tasks: List[RunTask], out_dir: Path) -> None:
    """Build every needed reference front once, before runs are dispatched."""
    seen = set()
    for task in tasks:
        key = (task.f1_kind, task.f2_kind, task.N, task.instance, task.resolution)
        if key in seen:
            continue
        seen.add(key)
        problem = make_problem(task.f1_kind, task.f2_kind, task.N, task.instance)
        reference_front(problem, task.resolution, cache_dir=out_dir / FRONTS_DIR)


def _resolve_workers(requested: int, n_tasks: int) -> int:
    workers = requested if requested > 0 else (os.cpu_count() or 1)
    return max(1, min(workers, n_tasks))


def _log_run_warnings(slog: StructuredLogger, run_key: str, metadata: Dict[str, Any]) -> None:
    if metadata.get("degenerate_fit"):
        slog.log_warning("Rank-deficient Bezier fit; minimum-norm control points used",
                         {"runKey": run_key, "D": metadata["config"]["D"], "K": metadata["config"]["K"]})
    if metadata.get("clipped_points"):
        slog.log_warning("Interpolated solutions clipped into the box",
                         {"runKey": run_key, "clippedPoints": metadata["clipped_points"]})


def run_experiment(cfg: ExperimentConfig, slog: Optional[StructuredLogger] = None) -> int:
    """
    Execute the grid of ``cfg`` and write summary and reports.

    Returns:
        0 when every run succeeded, 1 if any run failed
    """
    slog = slog or get_logger(cfg.log_dir)
    out_dir = Path(cfg.out_dir)
    writer = ResultWriter(out_dir, OverwritePolicy.SKIP)
    tasks = expand_grid(cfg)
    slog.log_experiment_start(len(tasks), str(out_dir), cfg.as_dict())
    atomic_write_text(out_dir / "config.json", json.dumps(cfg.as_dict(), indent=2, sort_keys=True) + "\n")

    pending = []
    for task in tasks:
        run_key = task.run_key()
        if writer.is_complete(run_key):
            slog.log_run_skipped(run_key)
        else:
            pending.append(task)
    logger.info("%d runs in grid, %d to execute", len(tasks), len(pending))

    failed: Dict[str, Dict[str, Any]] = {}
    if pending:
        prepare_reference_fronts(pending, out_dir)
        workers = _resolve_workers(cfg.workers, len(pending))
        if workers == 1:
            outcomes = [_execute_safely(task, str(out_dir)) for task in pending]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_execute_safely, task, str(out_dir)) for task in pending]
                outcomes = [future.result() for future in as_completed(futures)]

        for task, meta, error, error_type in outcomes:
            run_key = task.run_key()
            if meta is not None:
                summary = meta["summary"]
                slog.log_run_complete(run_key, task.algorithm, task.problem, summary["evals"],
                                      summary["final_indicator"], meta["overhead_seconds"])
                _log_run_warnings(slog, run_key, meta["metadata"])
                continue
            logger.error("Run %s failed: %s", run_key, error)
            slog.log_run_failed(run_key, error, error_type)
            failed[run_key] = _summary_row(task, run_key, "failed")
            writer.write_failure(run_key, {"task": task.as_dict(), "error": error, "error_type": error_type})

    rows = []
    for task in tasks:
        run_key = task.run_key()
        if run_key in failed:
            rows.append(failed[run_key])
        elif writer.is_complete(run_key):
            rows.append(writer.read_meta(run_key)["summary"])
    summary = pd.DataFrame(rows, columns=SUMMARY_COLUMNS).sort_values("run_key", kind="stable")
    path = writer.write_report("summary.csv", summary.to_csv(index=False))
    slog.log_report_written(str(path), len(summary))

    try:
        for report in emit_reports(out_dir):
            slog.log_report_written(str(report), 0)
    except AssessError as e:
        slog.log_error(str(e), type(e).__name__)
        return 1
    return 1 if failed else 0


# ============================================================================
# Reports
# ============================================================================

def _completed_frame(metas: List[Dict[str, Any]]) -> pd.DataFrame:
    rows = []
    for meta in metas:
        row = dict(meta["summary"])
        row["overhead_seconds"] = meta["overhead_seconds"]
        row["objective_seconds"] = meta["objective_seconds"]
        rows.append(row)
    return pd.DataFrame(rows).sort_values("run_key", kind="stable").reset_index(drop=True)


def _ecdf_group_name(algorithm: str, N: int, factor: int, K: int, r1st: float, D: int) -> str:
    return f"ecdf_{algorithm}_n{N}_b{factor}_K{K}_r{r1st:g}_D{D}.csv"


def emit_reports(out_dir: Path) -> List[Path]:
    """
    Rebuild all reports from the completed runs under ``out_dir``.

    Raises:
        AssessError: If no completed run exists
    """
    writer = ResultWriter(Path(out_dir))
    metas = writer.completed_metas()
    if not metas:
        raise AssessError(f"no completed runs under {out_dir}")
    frame = _completed_frame(metas)
    written = []

    groups: Dict[Tuple, List[IndicatorTrace]] = {}
    for meta in metas:
        task = meta["task"]
        key = (task["algorithm"], task["N"], task["budget_factor"], task["K"], task["r1st"], task["D"])
        trace = IndicatorTrace(series=[], targets=np.asarray(meta["targets"]), hits=meta["hits"])
        groups.setdefault(key, []).append(trace)
    for key in sorted(groups):
        algorithm, N, factor, K, r1st, D = key
        curve = ecdf(groups[key], list(range(1, factor * N + 1)))
        written.append(writer.write_report(_ecdf_group_name(*key), format_ecdf(curve, N)))

    wall = (frame.groupby(["algorithm", "N"], sort=True)
            .agg(runs=("run_key", "count"),
                 overhead_mean=("overhead_seconds", "mean"),
                 overhead_max=("overhead_seconds", "max"),
                 objective_mean=("objective_seconds", "mean"))
            .reset_index())
    written.append(writer.write_report("wall_time.csv", wall.to_csv(index=False)))

    paired = (frame.pivot_table(index=PAIR_INDEX, columns="algorithm",
                                values="final_indicator", aggfunc="first")
              .reset_index())
    paired.columns.name = None
    written.append(writer.write_report("final_indicator.csv", paired.to_csv(index=False)))

    sweep = (frame.groupby(["algorithm", "K", "r1st", "D", "N", "budget_factor"], sort=True)
             .agg(runs=("run_key", "count"), median_final_indicator=("final_indicator", "median"))
             .reset_index())
    written.append(writer.write_report("parameter_sweep.csv", sweep.to_csv(index=False)))

    logger.info("Wrote %d report files to %s", len(written), writer.reports_dir)
    return written
