# ============================================================================
# STANDALONE TEST HARNESS: reference fronts and hypervolume
# DESCRIPTION: Checks hypervolume_2d against a quasi-Monte Carlo estimate
#              and the bi-sphere reference hypervolume against its closed
#              form (5/6 for the normalized front) as resolution grows.
# ============================================================================

import sys
import os

import numpy as np
from scipy.stats import qmc

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from core.assess import hypervolume_2d
from core.problems import make_problem, reference_front

BI_SPHERE_HV = 5.0 / 6.0


def sampled_hypervolume(points: np.ndarray, ref, n: int = 2 ** 16, seed: int = 7) -> float:
    """Dominated fraction of [0, ref] estimated with scrambled Sobol samples."""
    sampler = qmc.Sobol(d=2, scramble=True, seed=np.random.default_rng(seed))
    samples = sampler.random(n) * np.asarray(ref)
    dominated = np.zeros(n, dtype=bool)
    for p in points:
        dominated |= np.all(samples >= p, axis=1)
    return float(dominated.mean() * np.prod(ref))


# ============================================================================
# Acceptance Tests
# ============================================================================
def run_tests():
    print("Running reference front / hypervolume harness...")
    total_tests, passed_count, failed_count = 0, 0, 0

    def run_test_category(name, test_func):
        nonlocal total_tests, passed_count, failed_count
        print(f"\n--- Testing Category: {name} ---")
        try:
            results = test_func()
            total_tests += len(results)
            for success, test_name, detail in results:
                if success:
                    passed_count += 1
                    print(f"  ✓ PASS: {test_name:<42} ({detail})")
                else:
                    failed_count += 1
                    print(f"  ✗ FAIL: {test_name:<42} ({detail})")
        except Exception as e:
            failed_count += 1
            print(f"  ✗ FATAL ERROR in {name}: {e.__class__.__name__}: {e}")

    def test_exact_vs_sampled():
        results = []
        rng = np.random.default_rng(3)
        for trial in range(5):
            pts = rng.uniform(0.0, 1.0, size=(12, 2))
            exact = hypervolume_2d(pts, (1.0, 1.0))
            sampled = sampled_hypervolume(pts, (1.0, 1.0))
            ok = abs(exact - sampled) < 5e-3
            results.append((ok, f"Random set {trial}", f"exact {exact:.5f}, sampled {sampled:.5f}"))
        return results

    def test_bi_sphere_convergence():
        results = []
        problem = make_problem("sphere", "sphere", 5, 1)
        previous = None
        for resolution in (100, 200, 400, 800):
            ref_hv = reference_front(problem, resolution).ref_hv
            gap = BI_SPHERE_HV - ref_hv
            shrinking = previous is None or gap < previous
            results.append((0.0 <= gap < 0.01 and shrinking, f"Resolution {resolution}", f"gap {gap:.2e}"))
            previous = gap
        return results

    def test_approximate_fronts():
        results = []
        for f1, f2 in (("sphere", "ellipsoid"), ("sphere", "rastrigin")):
            refdata = reference_front(make_problem(f1, f2, 2, 1), 100)
            ok = 0.0 < refdata.ref_hv <= 1.0
            results.append((ok, f"{f1}/{f2} N=2", f"{len(refdata.front)} points, ref_hv {refdata.ref_hv:.4f}"))
        return results

    run_test_category("hypervolume_2d vs Sobol estimate", test_exact_vs_sampled)
    run_test_category("Bi-sphere reference convergence", test_bi_sphere_convergence)
    run_test_category("Approximate fronts", test_approximate_fronts)

    print("\n" + "="*60 + "\nHARNESS EXECUTION SUMMARY\n" + f"  Total Tests: {total_tests}\n  Passed:      {passed_count}\n  Failed:      {failed_count}\n" + "="*60 + "\n")
    if failed_count == 0:
        print("SUCCESS: All reference front checks passed.")
    else:
        print("FAILURE: One or more checks failed.")
    return failed_count


if __name__ == "__main__":
    sys.exit(1 if run_tests() else 0)
