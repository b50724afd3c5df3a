# ============================================================================
# SOURCEFILE: assess.py
# RELPATH: tpb_bench/src/core/assess.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Dominance, nondominated archive, hypervolume indicator and ECDF
# ============================================================================

"""
Assessment module.

Provides Pareto dominance, the nondominated filter, an unbounded external
archive, the 2-D hypervolume, the anytime indicator used for benchmarking
and the target / ECDF bookkeeping built on top of it.

Indicator (smaller is better), after normalizing objectives with the
reference front's ideal and nadir points:

- some archive point strictly dominates (1, 1): ``ref_hv - HV(archive)``
- otherwise: ``ref_hv`` plus the distance from the archive to the region
  bounded by the nadir, ``{f <= (1, 1)}``
"""

from typing import Iterable, List, Optional, Sequence, Tuple
import logging
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.exceptions import AssessError, DimensionError
from core.models import IndicatorTrace, ReferenceData
from core.scalarize import normalize

logger = logging.getLogger(__name__)

N_TARGETS = 31
TARGET_DECADES = 4


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """
    True iff ``a`` Pareto-dominates ``b`` (minimization).

    Raises:
        DimensionError: If the vectors differ in length
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionError("dominates", len(a), len(b))
    return bool(np.all(a <= b) and np.any(a < b))


def _filter_2d(points: np.ndarray) -> np.ndarray:
    order = np.lexsort((points[:, 1], points[:, 0]))
    kept = []
    best_f2 = np.inf
    for i in order:
        if points[i, 1] < best_f2:
            kept.append(i)
            best_f2 = points[i, 1]
    return points[kept]


def _filter_pairwise(points: np.ndarray) -> np.ndarray:
    unique = np.unique(points, axis=0)
    keep = []
    for i, p in enumerate(unique):
        dominated = np.any(np.all(unique <= p, axis=1) & np.any(unique < p, axis=1))
        if not dominated:
            keep.append(i)
    return unique[keep]


def nondominated_filter(points: Iterable[Sequence[float]]) -> List[np.ndarray]:
    """
    Points not dominated by any other input point, duplicates collapsed.

    Bi-objective inputs use an O(n log n) sort-and-sweep and come back sorted
    by the first objective; other dimensions fall back to pairwise checks.
    """
    rows = [np.asarray(p, dtype=float) for p in points]
    if not rows:
        return []
    arr = np.vstack(rows)
    filtered = _filter_2d(arr) if arr.shape[1] == 2 else _filter_pairwise(arr)
    return [row.copy() for row in filtered]


class Archive:
    """
    Unbounded external archive of mutually nondominated (x, f) pairs.

    A point equal in objective space to an archived one is treated as
    dominated, so the final contents do not depend on insertion order.
    """

    def __init__(self):
        self._x: List[np.ndarray] = []
        self._f: List[np.ndarray] = []

    def __len__(self) -> int:
        return len(self._f)

    def __iter__(self):
        return iter(zip(self._x, self._f))

    def insert(self, x: Sequence[float], f: Sequence[float]) -> bool:
        """Insert ``(x, f)`` unless weakly dominated; returns True if inserted."""
        f = np.asarray(f, dtype=float)
        if self._f:
            F = np.vstack(self._f)
            if F.shape[1] != len(f):
                raise DimensionError("archive_insert", F.shape[1], len(f))
            if np.any(np.all(F <= f, axis=1)):
                return False
            survivors = ~(np.all(f <= F, axis=1) & np.any(f < F, axis=1))
            self._x = [v for v, keep in zip(self._x, survivors) if keep]
            self._f = [v for v, keep in zip(self._f, survivors) if keep]
        self._x.append(np.asarray(x, dtype=float).copy())
        self._f.append(f.copy())
        return True

    def objectives(self) -> np.ndarray:
        if not self._f:
            return np.empty((0, 0))
        return np.vstack(self._f)

    def decisions(self) -> np.ndarray:
        if not self._x:
            return np.empty((0, 0))
        return np.vstack(self._x)


def archive_insert(archive: Archive, x: Sequence[float], f: Sequence[float]) -> Archive:
    archive.insert(x, f)
    return archive


def hypervolume_2d(points: Iterable[Sequence[float]], ref: Sequence[float]) -> float:
    """
    Area dominated by ``points`` and bounded by ``ref`` (bi-objective).

    Only points strictly better than ``ref`` in both objectives contribute.
    """
    ref = np.asarray(ref, dtype=float)
    rows = [np.asarray(p, dtype=float) for p in points]
    if not rows:
        return 0.0
    arr = np.vstack(rows)
    if arr.shape[1] != 2 or len(ref) != 2:
        raise AssessError("hypervolume_2d requires bi-objective points and reference")
    inside = arr[np.all(arr < ref, axis=1)]
    if len(inside) == 0:
        return 0.0
    front = _filter_2d(inside)
    right = np.append(front[1:, 0], ref[0])
    return float(np.sum((right - front[:, 0]) * (ref[1] - front[:, 1])))


def _indicator_normalized(normalized: np.ndarray, ref_hv: float) -> float:
    if len(normalized) == 0:
        return float("inf")
    inside = np.all(normalized < 1.0, axis=1)
    if np.any(inside):
        return ref_hv - hypervolume_2d(normalized[inside], (1.0, 1.0))
    gaps = np.maximum(normalized - 1.0, 0.0)
    return ref_hv + float(np.min(np.linalg.norm(gaps, axis=1)))


def indicator_value(archive, refdata: ReferenceData) -> float:
    """
    Anytime indicator of ``archive`` (an Archive or an (n, 2) objective array).

    Returns +inf for an empty archive.
    """
    F = archive.objectives() if isinstance(archive, Archive) else np.asarray(archive, dtype=float)
    if F.size == 0:
        return float("inf")
    return _indicator_normalized(normalize(np.atleast_2d(F), refdata.ref_points), refdata.ref_hv)


def targets(ref_hv: float, count: int = N_TARGETS, decades: int = TARGET_DECADES) -> np.ndarray:
    """Precision targets ``ref_hv * 10^linspace(-decades, 0, count)``, ascending."""
    return ref_hv * np.power(10.0, np.linspace(-decades, 0.0, count))


def first_hits(series: Sequence[Tuple[int, float]], target_values: np.ndarray) -> List[Optional[int]]:
    hits: List[Optional[int]] = []
    for target in target_values:
        hit = next((idx for idx, value in series if value <= target), None)
        hits.append(hit)
    return hits


def build_trace(objectives: Sequence[Sequence[float]], refdata: ReferenceData) -> IndicatorTrace:
    """
    Indicator after every evaluation of a run, given its f-values in order.

    The archive is updated incrementally and the indicator recomputed only
    when an insertion changes it. Values are made non-increasing with a
    running minimum to absorb floating-point noise.
    """
    archive = Archive()
    ref_points = refdata.ref_points
    series: List[Tuple[int, float]] = []
    current = float("inf")
    for eval_index, f in enumerate(objectives, start=1):
        if archive.insert(np.empty(0), f):
            value = _indicator_normalized(normalize(archive.objectives(), ref_points), refdata.ref_hv)
            current = min(current, value)
        series.append((eval_index, current))
    target_values = targets(refdata.ref_hv)
    return IndicatorTrace(series=series, targets=target_values, hits=first_hits(series, target_values))


def runtime_to_target(trace: IndicatorTrace, target: float) -> Optional[int]:
    """First evaluation index whose indicator value is <= ``target``."""
    return first_hits(trace.series, np.array([target]))[0]


def ecdf(traces: Sequence[IndicatorTrace], eval_grid: Sequence[int]) -> List[Tuple[int, float]]:
    """
    Fraction of (trace, target) pairs hit within ``e`` evaluations, per grid point.

    Raises:
        AssessError: If ``traces`` is empty or traces disagree on the number of targets
    """
    if not traces:
        raise AssessError("ecdf needs at least one trace")
    n_targets = len(traces[0].targets)
    if any(len(t.targets) != n_targets for t in traces) or n_targets == 0:
        raise AssessError("all traces must share the same number of targets")
    hit_times = np.array(
        [h if h is not None else np.inf for t in traces for h in t.hits], dtype=float
    )
    total = len(hit_times)
    return [(int(e), float(np.count_nonzero(hit_times <= e)) / total) for e in eval_grid]
