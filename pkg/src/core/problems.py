# ============================================================================
# SOURCEFILE: problems.py
# RELPATH: tpb_bench/src/core/problems.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Bi-objective benchmark problems and reference fronts
# ============================================================================

"""
Benchmark problems.

A bi-objective problem pairs two single-objective functions, each evaluated
at ``z = R (x - s)`` with its own shift ``s`` (drawn in [-4, 4]^N) and
orthogonal rotation ``R``. Supported kinds:

- ``sphere``      sum z_i^2                                     (not rotated)
- ``ellipsoid``   sum 10^(6 (i-1) / (N-1)) z_i^2
- ``rosenbrock``  sum 100 (u_i^2 - u_{i+1})^2 + (u_i - 1)^2,  u = z + 1
- ``rastrigin``   10 (N - sum cos(2 pi z_i)) + sum z_i^2         (not rotated)
- ``schwefel``    sum_i (sum_{j<=i} z_j)^2  (Schwefel 1.2)

Every kind has its minimum 0 at z = 0, i.e. at x = s.
"""

from math import ceil, log2
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple
import logging
import sys
import os

import numpy as np
from scipy import optimize as sp_optimize
from scipy.stats import ortho_group, qmc

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from core.assess import hypervolume_2d, nondominated_filter
from core.exceptions import PreconditionError, ResultReadError, UnsupportedKindError
from core.models import ProblemInstance, ReferenceData, RefPoints
from core.scalarize import normalize, ref_points_from
from core.validators import check_dimension

logger = logging.getLogger(__name__)

LOWER_BOUND = -5.0
UPPER_BOUND = 5.0
SHIFT_RANGE = 4.0
MIN_RESOLUTION = 100
REFINEMENT_WEIGHTS = 21


def _sphere(Z: np.ndarray) -> np.ndarray:
    return np.sum(Z ** 2, axis=1)


def _ellipsoid(Z: np.ndarray) -> np.ndarray:
    n = Z.shape[1]
    scales = np.power(10.0, 6.0 * np.arange(n) / (n - 1)) if n > 1 else np.ones(1)
    return Z ** 2 @ scales


def _rosenbrock(Z: np.ndarray) -> np.ndarray:
    U = Z + 1.0
    return np.sum(100.0 * (U[:, :-1] ** 2 - U[:, 1:]) ** 2 + (U[:, :-1] - 1.0) ** 2, axis=1)


def _rastrigin(Z: np.ndarray) -> np.ndarray:
    n = Z.shape[1]
    return 10.0 * (n - np.sum(np.cos(2.0 * np.pi * Z), axis=1)) + np.sum(Z ** 2, axis=1)


def _schwefel(Z: np.ndarray) -> np.ndarray:
    return np.sum(np.cumsum(Z, axis=1) ** 2, axis=1)


FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sphere": _sphere,
    "ellipsoid": _ellipsoid,
    "rosenbrock": _rosenbrock,
    "rastrigin": _rastrigin,
    "schwefel": _schwefel,
}
KIND_NAMES: Tuple[str, ...] = tuple(FUNCTIONS)
UNROTATED_KINDS = frozenset({"sphere", "rastrigin"})
MULTIMODAL_KINDS = frozenset({"rastrigin"})

CURATED_SUITE: Tuple[Tuple[str, str], ...] = (
    ("sphere", "sphere"),
    ("sphere", "ellipsoid"),
    ("sphere", "rosenbrock"),
    ("ellipsoid", "ellipsoid"),
    ("rosenbrock", "rosenbrock"),
    ("sphere", "rastrigin"),
    ("rastrigin", "rastrigin"),
    ("sphere", "schwefel"),
)


def modality_label(f1_kind: str, f2_kind: str) -> str:
    """'multimodal' when either function is multimodal, else 'unimodal'."""
    return "multimodal" if {f1_kind, f2_kind} & MULTIMODAL_KINDS else "unimodal"


def _check_kind(kind: str) -> None:
    if kind not in FUNCTIONS:
        raise UnsupportedKindError(kind, KIND_NAMES)


def make_problem(f1_kind: str, f2_kind: str, N: int, instance_seed: int) -> ProblemInstance:
    """
    Build a deterministic instance of the (f1_kind, f2_kind) pair.

    Raises:
        UnsupportedKindError: If a kind is unknown
        PreconditionError: If N < 2
    """
    _check_kind(f1_kind)
    _check_kind(f2_kind)
    if N < 2:
        raise PreconditionError("make_problem", f"need N >= 2, got {N}")

    seq = np.random.SeedSequence([int(instance_seed), int(N),
                                  KIND_NAMES.index(f1_kind), KIND_NAMES.index(f2_kind)])
    rng = np.random.default_rng(seq)
    shifts = []
    rotations = []
    for kind in (f1_kind, f2_kind):
        shifts.append(rng.uniform(-SHIFT_RANGE, SHIFT_RANGE, N))
        if kind in UNROTATED_KINDS:
            rotations.append(np.eye(N))
        else:
            rotations.append(ortho_group.rvs(N, random_state=rng))

    return ProblemInstance(
        f1_kind=f1_kind, f2_kind=f2_kind, N=int(N), seed=int(instance_seed),
        shift1=shifts[0], shift2=shifts[1],
        rotation1=rotations[0], rotation2=rotations[1],
        lower_bound=LOWER_BOUND, upper_bound=UPPER_BOUND,
    )


def evaluate_batch(instance: ProblemInstance, X: np.ndarray) -> np.ndarray:
    """Objective vectors of every row of ``X``; returns an (n, 2) array."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != instance.N:
        raise PreconditionError("evaluate_batch", f"expected {instance.N} columns, got {X.shape[1]}")
    Z1 = (X - instance.shift1) @ instance.rotation1.T
    Z2 = (X - instance.shift2) @ instance.rotation2.T
    return np.column_stack([FUNCTIONS[instance.f1_kind](Z1), FUNCTIONS[instance.f2_kind](Z2)])


def evaluate_objectives(instance: ProblemInstance, x: np.ndarray) -> np.ndarray:
    """
    ``(f1(R1 (x - s1)), f2(R2 (x - s2)))``; x may lie outside the box.

    Raises:
        DimensionError: If ``len(x) != N``
    """
    x = np.asarray(x, dtype=float)
    check_dimension("evaluate_objectives", x, instance.N)
    return evaluate_batch(instance, x[None, :])[0]


def is_bi_sphere(instance: ProblemInstance) -> bool:
    return instance.f1_kind == "sphere" and instance.f2_kind == "sphere"


def analytic_pareto_point(instance: ProblemInstance, t: float) -> np.ndarray:
    """
    Point ``shift1 + t (shift2 - shift1)`` of the bi-sphere Pareto set.

    Raises:
        UnsupportedKindError: If the instance is not sphere/sphere
        PreconditionError: If t is outside [0, 1]
    """
    if not is_bi_sphere(instance):
        raise UnsupportedKindError(f"{instance.f1_kind}/{instance.f2_kind}", ["sphere/sphere"])
    if not 0.0 <= t <= 1.0:
        raise PreconditionError("analytic_pareto_point", f"t must lie in [0, 1], got {t}")
    return instance.shift1 + t * (instance.shift2 - instance.shift1)


def distance_to_pareto_set(instance: ProblemInstance, x: np.ndarray) -> float:
    """Euclidean distance from ``x`` to the bi-sphere Pareto segment."""
    if not is_bi_sphere(instance):
        raise UnsupportedKindError(f"{instance.f1_kind}/{instance.f2_kind}", ["sphere/sphere"])
    a, b = instance.shift1, instance.shift2
    direction = b - a
    t = float(np.clip(np.dot(np.asarray(x) - a, direction) / np.dot(direction, direction), 0.0, 1.0))
    return float(np.linalg.norm(np.asarray(x) - (a + t * direction)))


# ============================================================================
# Reference fronts
# ============================================================================

def _segment_points(instance: ProblemInstance, count: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, count)[:, None]
    return instance.shift1 + t * (instance.shift2 - instance.shift1)


def _refine(instance: ProblemInstance, X: np.ndarray, F: np.ndarray) -> List[np.ndarray]:
    """Polish the best sample point of each weighted sum with L-BFGS-B."""
    ref = ref_points_from(F)
    bounds = [(instance.lower_bound, instance.upper_bound)] * instance.N
    refined = []
    for w1 in np.linspace(0.0, 1.0, REFINEMENT_WEIGHTS):
        w = np.array([w1, 1.0 - w1])
        start = X[int(np.argmin(normalize(F, ref) @ w))]

        def scalar(x: np.ndarray, w=w) -> float:
            return float(normalize(evaluate_batch(instance, x[None, :]), ref)[0] @ w)

        result = sp_optimize.minimize(scalar, start, method="L-BFGS-B", bounds=bounds)
        refined.append(np.clip(result.x, instance.lower_bound, instance.upper_bound))
    return refined


def _approximate_front(instance: ProblemInstance, resolution: int) -> np.ndarray:
    seq = np.random.SeedSequence([int(instance.seed), int(instance.N), int(resolution)])
    sampler = qmc.Sobol(d=instance.N, scramble=True, seed=np.random.default_rng(seq))
    unit = sampler.random_base2(m=int(ceil(log2(resolution * resolution))))
    X = qmc.scale(unit, instance.lower, instance.upper)
    X = np.vstack([X, _segment_points(instance, resolution)])
    F = evaluate_batch(instance, X)

    refined = np.vstack(_refine(instance, X, F))
    F = np.vstack([F, evaluate_batch(instance, refined)])
    return np.vstack(nondominated_filter(F))


def _cache_path(cache_dir: Path, instance: ProblemInstance, resolution: int) -> Path:
    return Path(cache_dir) / f"front_{instance.key}_r{resolution}.txt"


def format_reference(refdata: ReferenceData) -> str:
    """Cache text: three '#' header lines then one 'f1 f2' line per front point."""
    lines = [
        f"# ref_hv {refdata.ref_hv!r}",
        "# z_ideal " + " ".join(repr(float(v)) for v in refdata.z_ideal),
        "# z_nadir " + " ".join(repr(float(v)) for v in refdata.z_nadir),
    ]
    lines.extend(" ".join(repr(float(v)) for v in row) for row in refdata.front)
    return "\n".join(lines) + "\n"


def parse_reference(text: str, source: str = "<string>") -> ReferenceData:
    """
    Inverse of ``format_reference``.

    Raises:
        ResultReadError: If the header or a data line is malformed
    """
    header: Dict[str, List[float]] = {}
    rows: List[List[float]] = []
    try:
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                name, *values = line[1:].split()
                header[name] = [float(v) for v in values]
            else:
                rows.append([float(v) for v in line.split()])
        return ReferenceData(
            front=np.array(rows, dtype=float),
            ref_hv=header["ref_hv"][0],
            z_ideal=np.array(header["z_ideal"]),
            z_nadir=np.array(header["z_nadir"]),
        )
    except (KeyError, IndexError, ValueError, PreconditionError) as e:
        raise ResultReadError(source, f"malformed reference front: {e}")


def reference_front(instance: ProblemInstance, resolution: int = 200,
                    cache_dir: Optional[Path] = None) -> ReferenceData:
    """
    Discretized Pareto front of ``instance`` with its reference hypervolume.

    The bi-sphere front is sampled exactly along the segment between the
    optima (``resolution`` points). Other pairs use a nondominated filter over
    at least ``resolution^2`` scrambled Sobol points, the segment between the
    optima and L-BFGS-B refinements of weighted sums. The front is normalized
    by its own extremes and ``ref_hv`` is its hypervolume w.r.t. (1, 1).

    When ``cache_dir`` is given the result is read from / written to
    ``front_<key>_r<resolution>.txt`` there.
    """
    if resolution < MIN_RESOLUTION:
        raise PreconditionError("reference_front", f"resolution must be >= {MIN_RESOLUTION}, got {resolution}")

    path = _cache_path(cache_dir, instance, resolution) if cache_dir is not None else None
    if path is not None and path.exists():
        logger.debug("Reference front cache hit: %s", path)
        return parse_reference(path.read_text(encoding="utf-8"), str(path))

    if is_bi_sphere(instance):
        front = evaluate_batch(instance, _segment_points(instance, resolution))
    else:
        front = _approximate_front(instance, resolution)

    ref = RefPoints(front.min(axis=0), front.max(axis=0))
    ref_hv = hypervolume_2d(normalize(front, ref), (1.0, 1.0))
    if ref_hv <= 0.0:
        # only the two extremes survived; they sit on the reference box edge
        ref_hv = 1.0
    refdata = ReferenceData(front=front, ref_hv=ref_hv, z_ideal=ref.z_ideal, z_nadir=ref.z_nadir)

    if path is not None:
        from core.writer import atomic_write_text
        atomic_write_text(path, format_reference(refdata))
        logger.info("Reference front for %s cached at %s (%d points)", instance.key, path, len(front))
    return refdata
