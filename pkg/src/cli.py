# ============================================================================
# SOURCEFILE: cli.py
# RELPATH: tpb_bench/src/cli.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# ============================================================================

"""Command-Line Interface for TPB Bench."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from core.logging import configure_utf8_logging, new_session, set_verbosity
from core.config import parse_config
from core.experiment import emit_reports, run_experiment
from core.assess import build_trace
from core.problems import make_problem, reference_front
from core.tpb import ALGORITHMS, run_algorithm
from core.models import TpbConfig
from core.writer import OverwritePolicy, ResultWriter
from core.exceptions import (
    AssessError,
    ConfigError,
    RunConfigError,
    TpbError,
)

__version__ = "1.0.0"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

# flag name -> config key
GRID_FLAGS = {
    "problems": "problems",
    "dims": "dims",
    "budget_factors": "budget_factors",
    "algos": "algos",
    "K": "K",
    "D": "D",
    "r1st": "r1st",
    "instances": "instances",
    "seeds": "seeds",
    "workers": "workers",
    "out": "out",
    "optimizer": "optimizer",
    "resolution": "resolution",
    "log_dir": "log_dir",
}


def build_parser() -> argparse.ArgumentParser:
    """Build and return the argument parser."""
    parser = argparse.ArgumentParser(
        prog="tpb-bench",
        description="TPB Bench - two-phase multi-objective optimization benchmarks"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="count", default=0)

    subparsers = parser.add_subparsers(dest="command", required=True)

    # RUN
    parser_run = subparsers.add_parser("run", help="Execute an experiment grid and write reports")
    parser_run.add_argument("--config", type=Path, help="Flat key=value configuration file")
    parser_run.add_argument("--problems", help="Comma separated f1/f2 pairs")
    parser_run.add_argument("--dims", help="Comma separated dimensions")
    parser_run.add_argument("--budget-factors", dest="budget_factors", help="Budget = factor x N")
    parser_run.add_argument("--algos", help="Subset of tpb, tpb1, tpb2")
    parser_run.add_argument("--K", dest="K", help="Numbers of weight vectors")
    parser_run.add_argument("--D", dest="D", help="Bezier degrees")
    parser_run.add_argument("--r1st", help="First-phase budget ratios")
    parser_run.add_argument("--instances")
    parser_run.add_argument("--seeds")
    parser_run.add_argument("--workers")
    parser_run.add_argument("--out")
    parser_run.add_argument("--optimizer")
    parser_run.add_argument("--resolution")
    parser_run.add_argument("--log-dir", dest="log_dir")

    # REPORT
    parser_report = subparsers.add_parser("report", help="Rebuild reports from runs on disk")
    parser_report.add_argument("--out", type=Path, required=True)

    # SINGLE
    parser_single = subparsers.add_parser("single", help="One run; prints its metadata")
    parser_single.add_argument("--problem", default="sphere/sphere")
    parser_single.add_argument("--dim", type=int, default=2)
    parser_single.add_argument("--instance", type=int, default=1)
    parser_single.add_argument("--budget", type=int, help="Total f-calls (default 20 x dim)")
    parser_single.add_argument("--algo", choices=sorted(ALGORITHMS), default="tpb")
    parser_single.add_argument("--K", dest="K", type=int, default=3)
    parser_single.add_argument("--D", dest="D", type=int, default=2)
    parser_single.add_argument("--r1st", type=float, default=0.9)
    parser_single.add_argument("--seed", type=int, default=0)
    parser_single.add_argument("--optimizer", default="trust_region")
    parser_single.add_argument("--resolution", type=int, default=200)
    parser_single.add_argument("--out", type=Path, help="Also write ledger, trace, model and meta here")

    return parser


def main(argv: Optional[List[str]] = None):
    """Main CLI entry point."""
    configure_utf8_logging(force=True)

    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        set_verbosity(args.verbose, args.quiet)

        if args.command == "run":
            code = handle_run(args)
        elif args.command == "report":
            code = handle_report(args)
        elif args.command == "single":
            code = handle_single(args)
        else:
            print(f"Unknown command: {args.command}", file=sys.stderr)
            code = EXIT_FAILED

        sys.exit(code)

    except KeyboardInterrupt:
        print("\nOperation cancelled by user.", file=sys.stderr)
        sys.exit(130)

    except (ConfigError, RunConfigError) as e:
        print(f"CONFIG ERROR: {e}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)

    except TpbError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        sys.exit(EXIT_FAILED)


def _grid_overrides(args) -> Dict[str, str]:
    return {key: getattr(args, flag) for flag, key in GRID_FLAGS.items() if getattr(args, flag) is not None}


def handle_run(args) -> int:
    """Handler for run command."""
    cfg = parse_config(str(args.config) if args.config else None, _grid_overrides(args))
    slog = new_session(cfg.log_dir)

    print(f"Running grid into: {cfg.out_dir}")
    code = run_experiment(cfg, slog)
    summary = slog.export_session_summary()
    counts = summary["eventCounts"]
    print(f"\nExperiment complete:")
    print(f"  Completed: {counts.get('run_complete', 0)}")
    print(f"  Skipped: {counts.get('run_skipped', 0)}")
    print(f"  Failed: {counts.get('run_failed', 0)}")
    return code


def handle_report(args) -> int:
    """Handler for report command."""
    try:
        written = emit_reports(args.out)
    except AssessError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_FAILED
    for path in written:
        print(path)
    return EXIT_OK


def handle_single(args) -> int:
    """Handler for single command."""
    parts = [p.strip() for p in args.problem.split("/")]
    if len(parts) != 2:
        raise RunConfigError("problem", args.problem, "expected an f1/f2 pair")
    budget = args.budget if args.budget is not None else 20 * args.dim
    cfg = TpbConfig(budget=budget, K=args.K, D=args.D, r_1st=args.r1st,
                    optimizer_kind=args.optimizer, seed=args.seed)

    problem = make_problem(parts[0], parts[1], args.dim, args.instance)
    ledger, metadata = run_algorithm(args.algo, problem, cfg)
    refdata = reference_front(problem, args.resolution)
    trace = build_trace(ledger.objectives(), refdata)

    report = metadata.as_dict()
    report["evals"] = len(ledger)
    report["final_indicator"] = trace.final_value
    report["ref_hv"] = refdata.ref_hv
    print(json.dumps(report, indent=2))

    if args.out:
        writer = ResultWriter(args.out, OverwritePolicy.OVERWRITE)
        run_key = f"single_{args.algo}_{problem.key}_b{budget}_s{args.seed}"
        writer.write_run(run_key, ledger, trace, {"metadata": report}, metadata.model)
        logging.getLogger(__name__).info("Single run written to %s", writer.run_dir(run_key))
    return EXIT_OK


if __name__ == "__main__":
    main()
