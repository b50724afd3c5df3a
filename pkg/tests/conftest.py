# ============================================================================
# SOURCEFILE: conftest.py
# RELPATH: tpb_bench/tests/conftest.py
# PROJECT: TPB Bench
# VERSION: 1.0.0
# LIFECYCLE: Production
# DESCRIPTION: Pytest fixtures for the TPB Bench test suite
# ============================================================================

"""
Pytest configuration and shared fixtures.

Provides deterministic problem instances, small run configurations,
scalar test problems and temporary directories.
"""

import pytest
import tempfile
import shutil
from pathlib import Path
import sys
import os

import numpy as np

# Add src to path for imports
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from core.models import EvaluationLedger, ScalarProblem, TpbConfig
from core.problems import make_problem


# ============================================================================
# Problem Fixtures
# ============================================================================

@pytest.fixture
def rng():
    """Seeded generator; tests must not depend on global random state."""
    return np.random.default_rng(12345)


@pytest.fixture
def bi_sphere():
    """sphere/sphere instance 1 in N=2."""
    return make_problem("sphere", "sphere", 2, 1)


@pytest.fixture
def bi_sphere_5d():
    return make_problem("sphere", "sphere", 5, 1)


@pytest.fixture
def sphere_ellipsoid():
    return make_problem("sphere", "ellipsoid", 3, 1)


@pytest.fixture
def small_config():
    """TPB defaults with budget 20N for N=2."""
    return TpbConfig(budget=40)


@pytest.fixture
def empty_ledger():
    return EvaluationLedger(40)


@pytest.fixture
def quadratic_problem():
    """Separable convex quadratic on [-5, 5]^3 with minimum 0 at (1, -2, 0.5)."""
    optimum = np.array([1.0, -2.0, 0.5])

    def objective(x):
        return float(np.sum((np.asarray(x) - optimum) ** 2))

    return ScalarProblem(objective, np.full(3, -5.0), np.full(3, 5.0), 200), optimum


@pytest.fixture
def make_scalar_problem():
    """Factory for ScalarProblems on a cube, for tests building their own objective."""
    def factory(objective, n=2, lower=-5.0, upper=5.0, max_evals=100):
        return ScalarProblem(objective, np.full(n, lower), np.full(n, upper), max_evals)
    return factory


# ============================================================================
# Filesystem Fixtures
# ============================================================================

@pytest.fixture
def temp_dir():
    """Create a temporary directory for test file operations."""
    base_path = Path(tempfile.mkdtemp())
    work_dir = base_path / "workspace"
    work_dir.mkdir(parents=True, exist_ok=True)
    try:
        yield work_dir
    finally:
        shutil.rmtree(base_path, ignore_errors=True)


@pytest.fixture
def temp_config_file(temp_dir):
    """Path for a flat key=value config file inside temp_dir."""
    yield temp_dir / "tpb_config.txt"


@pytest.fixture
def minimal_grid_text():
    """Smallest useful experiment grid: one problem, one dimension, all algorithms."""
    return (
        "problems = sphere/sphere\n"
        "dims = 2\n"
        "budget_factors = 30\n"
        "algos = tpb, tpb1, tpb2\n"
        "instances = 1\n"
        "seeds = 1\n"
        "resolution = 100\n"
        "workers = 1\n"
    )
