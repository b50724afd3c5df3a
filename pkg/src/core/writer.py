# ============================================================================
# SOURCEFILE: writer.py
# RELPATH: tpb_bench/src/core/writer.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION:
#   Result persistence: per-run ledgers (JSON lines), indicator traces and
#   ECDF curves (CSV), fitted models (text) and run metadata (JSON).
# ============================================================================

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import csv
import io
import json
import logging
import os
import sys

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import PreconditionError, ResultReadError, ResultWriteError
from core.models import BezierSimplexModel, EvaluationLedger, IndicatorTrace

logger = logging.getLogger(__name__)

LEDGER_FILE = "ledger.jsonl"
TRACE_FILE = "trace.csv"
MODEL_FILE = "model.txt"
META_FILE = "meta.json"

TRACE_HEADER = ("eval_index", "indicator_value")
ECDF_HEADER = ("evals_per_dim", "fraction")


class OverwritePolicy(Enum):
    SKIP = "skip"
    OVERWRITE = "overwrite"


def atomic_write_text(path: Path, text: str) -> Path:
    """
    Write ``text`` to a sibling temp file and move it over ``path``.

    Raises:
        ResultWriteError: On any filesystem failure
    """
    path = Path(path)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp.write_text(text, encoding="utf-8", newline="")
        os.replace(tmp, path)
    except OSError as e:
        try:
            tmp.unlink()
        except OSError:
            pass
        raise ResultWriteError(str(path), f"Filesystem write failed: {e}")
    return path


# ============================================================================
# Formats
# ============================================================================

def format_ledger(ledger: EvaluationLedger) -> str:
    """One JSON object per evaluation: eval_index, x, f."""
    lines = [
        json.dumps({"eval_index": e.eval_index, "x": e.x.tolist(), "f": e.f.tolist()})
        for e in ledger
    ]
    return "".join(line + "\n" for line in lines)


def read_ledger(path: Path) -> List[Tuple[int, np.ndarray, np.ndarray]]:
    """
    Parse a ledger file into (eval_index, x, f) tuples.

    Raises:
        ResultReadError: If the file is missing or a line is malformed
    """
    path = Path(path)
    rows = []
    try:
        with path.open("r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                record = json.loads(line)
                rows.append((int(record["eval_index"]),
                             np.asarray(record["x"], dtype=float),
                             np.asarray(record["f"], dtype=float)))
    except FileNotFoundError:
        raise ResultReadError(str(path), "File not found")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise ResultReadError(str(path), f"line {line_no}: {e}")
    return rows


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    out = csv.writer(buffer, lineterminator="\n")
    out.writerow(header)
    for row in rows:
        out.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def format_trace(trace: IndicatorTrace) -> str:
    return _csv_text(TRACE_HEADER, ((idx, float(value)) for idx, value in trace.series))


def read_trace(path: Path) -> List[Tuple[int, float]]:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            return [(int(r["eval_index"]), float(r["indicator_value"])) for r in csv.DictReader(f)]
    except FileNotFoundError:
        raise ResultReadError(str(path), "File not found")
    except (KeyError, TypeError, ValueError) as e:
        raise ResultReadError(str(path), f"malformed trace: {e}")


def format_ecdf(curve: Sequence[Tuple[int, float]], N: int) -> str:
    """ECDF rows with the evaluation count expressed per dimension."""
    return _csv_text(ECDF_HEADER, ((float(e) / N, float(frac)) for e, frac in curve))


def format_model(model: BezierSimplexModel) -> str:
    """
    Text form of a Bezier simplex::

        # bezier_simplex M=2 D=2 N=3
        0 2 : 1.0 2.0 3.0
        ...

    One line per control point, multi-index first, in the model's index order.
    """
    lines = [f"# bezier_simplex M={model.M} D={model.D} N={model.N}"]
    for d, point in zip(model.indices, model.control_points):
        lines.append(" ".join(str(v) for v in d) + " : " + " ".join(repr(float(v)) for v in point))
    return "\n".join(lines) + "\n"


def parse_model(text: str, source: str = "<string>") -> BezierSimplexModel:
    """
    Inverse of ``format_model``.

    Raises:
        ResultReadError: If the header or a control-point line is malformed
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    try:
        header = lines[0].lstrip("#").split()
        if header[0] != "bezier_simplex":
            raise ValueError("missing 'bezier_simplex' header")
        sizes = dict(item.split("=") for item in header[1:])
        indices, points = [], []
        for line in lines[1:]:
            left, right = line.split(":")
            indices.append(tuple(int(v) for v in left.split()))
            points.append([float(v) for v in right.split()])
        return BezierSimplexModel(
            M=int(sizes["M"]), D=int(sizes["D"]), N=int(sizes["N"]),
            indices=tuple(indices), control_points=np.array(points, dtype=float),
        )
    except (IndexError, KeyError, ValueError, PreconditionError) as e:
        raise ResultReadError(source, f"malformed model: {e}")


# ============================================================================
# Writer
# ============================================================================

class ResultWriter:
    """
    Writes the files of each run under ``<out_dir>/runs/<run_key>/``.

    ``meta.json`` is written last, so its presence marks a completed run.
    With ``OverwritePolicy.SKIP`` completed runs are left untouched.
    """

    def __init__(self, out_dir: Path, overwrite_policy: OverwritePolicy = OverwritePolicy.SKIP):
        self.out_dir = Path(out_dir)
        self.overwrite_policy = overwrite_policy

    @property
    def runs_dir(self) -> Path:
        return self.out_dir / "runs"

    @property
    def reports_dir(self) -> Path:
        return self.out_dir / "reports"

    def run_dir(self, run_key: str) -> Path:
        return self.runs_dir / run_key

    def is_complete(self, run_key: str) -> bool:
        return (self.run_dir(run_key) / META_FILE).exists()

    def read_meta(self, run_key: str) -> Dict[str, Any]:
        path = self.run_dir(run_key) / META_FILE
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ResultReadError(str(path), "File not found")
        except json.JSONDecodeError as e:
            raise ResultReadError(str(path), f"Invalid JSON: {e}")

    def completed_metas(self) -> List[Dict[str, Any]]:
        """Metadata of every completed run on disk, ordered by run key."""
        if not self.runs_dir.exists():
            return []
        return [self.read_meta(p.name) for p in sorted(self.runs_dir.iterdir())
                if (p / META_FILE).exists()]

    def write_run(self, run_key: str, ledger: EvaluationLedger, trace: IndicatorTrace,
                  meta: Dict[str, Any], model: Optional[BezierSimplexModel] = None) -> str:
        """
        Persist one run.

        Returns:
            "processed" or "skipped"
        """
        if self.is_complete(run_key) and self.overwrite_policy == OverwritePolicy.SKIP:
            return "skipped"
        run_dir = self.run_dir(run_key)
        self._write(run_dir / LEDGER_FILE, format_ledger(ledger))
        self._write(run_dir / TRACE_FILE, format_trace(trace))
        if model is not None:
            self._write(run_dir / MODEL_FILE, format_model(model))
        self._write(run_dir / META_FILE, json.dumps(meta, indent=2, sort_keys=True, default=_json_default) + "\n")
        return "processed"

    def write_failure(self, run_key: str, meta: Dict[str, Any]) -> Path:
        """Record a failed run next to the completed ones (not a completion marker)."""
        return self._write(self.run_dir(run_key) / "failed.json",
                           json.dumps(meta, indent=2, sort_keys=True, default=_json_default) + "\n")

    def write_report(self, name: str, text: str) -> Path:
        return self._write(self.reports_dir / name, text)

    def _write(self, path: Path, text: str) -> Path:
        atomic_write_text(path, text)
        return path


def _json_default(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
