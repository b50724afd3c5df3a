# ============================================================================
# SOURCEFILE: logging.py
# RELPATH: tpb_bench/src/core/logging.py
# ============================================================================

from __future__ import annotations

import io
import json
import uuid
import logging
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional
from enum import Enum
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def ensure_stream_utf8(stream: Optional[io.TextIOBase]) -> Optional[io.TextIOBase]:
    """
    Return ``stream`` writing UTF-8, reconfigured in place or wrapped.

    The stream is flushed once whatever path is taken; flush errors are ignored.
    """
    if stream is None:
        return None

    encoding = getattr(stream, "encoding", None)
    result: Optional[io.TextIOBase] = None
    if isinstance(encoding, str) and encoding.lower() == "utf-8":
        result = stream
    else:
        reconfigure = getattr(stream, "reconfigure", None)
        if callable(reconfigure):
            try:
                reconfigure(encoding="utf-8", errors="backslashreplace")
                result = stream
            except Exception:
                result = None
        if result is None:
            buffer = getattr(stream, "buffer", None)
            try:
                result = io.TextIOWrapper(buffer, encoding="utf-8", errors="backslashreplace") if buffer else stream
            except Exception:
                result = stream

    try:
        result.flush()
    except Exception:
        pass
    return result


def configure_utf8_logging(force: bool = False) -> None:
    """
    Switch stdout/stderr and the root handlers to UTF-8.

    With ``force`` a stderr handler using ``LOG_FORMAT`` is installed when
    the root logger has none. Safe to call repeatedly.
    """
    streams: Iterable[str] = ("stdout", "stderr")
    for name in streams:
        stream = getattr(sys, name, None)
        if stream is None:
            continue
        new_stream = ensure_stream_utf8(stream)
        if new_stream is not None and new_stream is not stream:
            setattr(sys, name, new_stream)

    root = logging.getLogger()
    if force and not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)

    for handler in root.handlers:
        stream = getattr(handler, "stream", None)
        if stream is None:
            continue
        new_stream = ensure_stream_utf8(stream)
        if new_stream is not None and new_stream is not stream:
            try:
                handler.setStream(new_stream)
            except Exception:
                handler.stream = new_stream


def set_verbosity(verbose: int = 0, quiet: int = 0) -> int:
    """
    Map ``-v`` / ``-q`` counts onto the root logger level.

    0 -> WARNING, -v -> INFO, -vv -> DEBUG, -q -> ERROR. Returns the level set.
    """
    score = verbose - quiet
    if score >= 2:
        level = logging.DEBUG
    elif score == 1:
        level = logging.INFO
    elif score == 0:
        level = logging.WARNING
    else:
        level = logging.ERROR
    logging.getLogger().setLevel(level)
    return level


class LogEvent(Enum):
    """Enumeration of loggable experiment events."""
    EXPERIMENT_START = "experiment_start"
    RUN_COMPLETE = "run_complete"
    RUN_SKIPPED = "run_skipped"
    RUN_FAILED = "run_failed"
    REPORT_WRITTEN = "report_written"
    WARNING = "warning"
    ERROR = "error"


class StructuredLogger:
    """
    JSON-lines logger for experiment sessions.

    Every event is buffered in memory and appended to
    ``tpb_session_<timestamp>_<id>.json``. The log directory falls back from
    ``log_dir`` to ./logs, then to a temp directory, then to memory only.
    """

    def __init__(self, log_dir: Optional[str] = "logs", session_id: Optional[str] = None):
        self.session_id = session_id or str(uuid.uuid4())
        self.start_time = datetime.now(timezone.utc)
        self.log_buffer: List[Dict] = []

        candidates = []
        if log_dir:
            candidates.append(Path(log_dir))
        try:
            candidates.append(Path.cwd() / "logs")
        except OSError:
            pass
        try:
            candidates.append(Path(tempfile.gettempdir()) / "tpb_bench_logs")
        except OSError:
            pass

        self.log_dir: Optional[Path] = None
        self.log_file: Optional[Path] = None
        for candidate in candidates:
            try:
                candidate.mkdir(parents=True, exist_ok=True)
                timestamp = self.start_time.strftime("%Y%m%d_%H%M%S")
                log_file = candidate / f"tpb_session_{timestamp}_{self.session_id[:8]}.json"
                log_file.touch(exist_ok=True)
                self.log_dir = candidate
                self.log_file = log_file
                break
            except OSError:
                continue

    def log_experiment_start(self, n_runs: int, out_dir: str, config: Dict[str, Any]) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.EXPERIMENT_START,
            {"runs": n_runs, "outDir": out_dir, "config": config},
        ))

    def log_run_complete(self, run_key: str, algorithm: str, problem: str,
                         evals: int, final_indicator: float, overhead_s: float) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.RUN_COMPLETE,
            {
                "runKey": run_key,
                "algorithm": algorithm,
                "problem": problem,
                "evals": evals,
                "finalIndicator": final_indicator,
                "overheadSeconds": overhead_s,
            },
        ))

    def log_run_skipped(self, run_key: str, reason: str = "completed on disk") -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.RUN_SKIPPED, {"runKey": run_key, "reason": reason},
        ))

    def log_run_failed(self, run_key: str, error_message: str, error_type: str) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.RUN_FAILED,
            {"runKey": run_key, "errorMessage": error_message or "", "errorType": error_type},
        ))

    def log_report_written(self, path: str, rows: int) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.REPORT_WRITTEN, {"path": path, "rows": rows},
        ))

    def log_warning(self, message: str, context: Optional[Dict] = None) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.WARNING, {"message": message, "context": context or {}},
        ))

    def log_error(self, message: str, error_type: str, context: Optional[Dict] = None) -> None:
        self._write_log_entry(self._create_log_entry(
            LogEvent.ERROR,
            {"errorMessage": message or "", "errorType": error_type, "context": context or {}},
        ))

    def _create_log_entry(self, event: LogEvent, details: Dict[str, Any]) -> Dict:
        return {
            "sessionId": self.session_id,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "event": event.value,
            "details": details,
        }

    def _write_log_entry(self, entry: Dict) -> None:
        self.log_buffer.append(entry)
        if self.log_file is None:
            return
        try:
            with open(self.log_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, ensure_ascii=False, default=str) + "\n")
        except OSError as e:
            logging.getLogger(__name__).warning("Failed to write log entry: %s", e)

    def get_session_logs(self) -> List[Dict]:
        return list(self.log_buffer)

    def export_session_summary(self) -> Dict:
        """Event counts and time span of the session."""
        summary = {
            "sessionId": self.session_id,
            "startTime": self.start_time.isoformat(),
            "endTime": datetime.now(timezone.utc).isoformat(),
            "totalEvents": len(self.log_buffer),
            "eventCounts": {},
        }
        for entry in self.log_buffer:
            event_type = entry["event"]
            summary["eventCounts"][event_type] = summary["eventCounts"].get(event_type, 0) + 1
        return summary


_global_logger: Optional[StructuredLogger] = None

def get_logger(log_dir: str = "logs") -> StructuredLogger:
    global _global_logger
    if _global_logger is None:
        _global_logger = StructuredLogger(log_dir)
    return _global_logger

def new_session(log_dir: str = "logs") -> StructuredLogger:
    global _global_logger
    _global_logger = StructuredLogger(log_dir)
    return _global_logger
