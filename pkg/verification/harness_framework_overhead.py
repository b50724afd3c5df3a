# ============================================================================
# STANDALONE TEST HARNESS: framework overhead
# DESCRIPTION: Times tpb on the bi-sphere for growing N and splits wall time
#              into framework overhead (per phase) and objective time.
#              Prints a table; fails if a run exceeds its budget or the
#              overhead of the largest tpb run reaches one second.
# ============================================================================

import sys
import os
import time

import pandas as pd

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from core.models import TpbConfig
from core.problems import make_problem
from core.tpb import run_algorithm

DIMS = (2, 5, 10, 20)
BUDGET_FACTOR = 40
OVERHEAD_LIMIT_S = 1.0


def time_run(algorithm: str, N: int, instance: int = 1):
    problem = make_problem("sphere", "sphere", N, instance)
    budget = BUDGET_FACTOR * N
    start = time.perf_counter()
    ledger, metadata = run_algorithm(algorithm, problem, TpbConfig(budget=budget))
    wall = time.perf_counter() - start
    return {
        "algorithm": algorithm,
        "N": N,
        "budget": budget,
        "evals": len(ledger),
        "first_s": metadata.phase_seconds.get("first", 0.0),
        "second_s": metadata.phase_seconds.get("second", 0.0),
        "objective_s": ledger.objective_seconds,
        "wall_s": wall,
    }


def run_tests():
    print(f"Timing tpb / tpb1 on sphere/sphere, budget {BUDGET_FACTOR} x N...")
    rows = [time_run(algorithm, N) for N in DIMS for algorithm in ("tpb", "tpb1")]
    frame = pd.DataFrame(rows)
    print()
    print(frame.to_string(index=False, float_format=lambda v: f"{v:.4f}"))

    failures = 0
    over = frame[frame["evals"] > frame["budget"]]
    if not over.empty:
        print(f"\n  ✗ FAIL: {len(over)} run(s) exceeded the budget")
        failures += 1

    largest = frame[(frame["algorithm"] == "tpb") & (frame["N"] == max(DIMS))].iloc[0]
    overhead = largest["first_s"] + largest["second_s"]
    if overhead < OVERHEAD_LIMIT_S:
        print(f"\n  ✓ PASS: overhead at N={max(DIMS)} is {overhead:.3f}s (< {OVERHEAD_LIMIT_S}s)")
    else:
        print(f"\n  ✗ FAIL: overhead at N={max(DIMS)} is {overhead:.3f}s (limit {OVERHEAD_LIMIT_S}s)")
        failures += 1

    print("\nSUCCESS: framework overhead within limits." if failures == 0 else "\nFAILURE: see above.")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(run_tests())
