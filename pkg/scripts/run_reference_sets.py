#!/usr/bin/env python3
"""
Reference set runner for StripCrack.
Solves the three bundled viscoelastic media and prints |K| with its ordering.
"""
import sys
import os

# Add the project root to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from stripcrack.core.config import load_run_config
from stripcrack.core.logging import configure_logging
from stripcrack.services.linsolve import reduction_solve
from stripcrack.services.postprocess import sif

CONFIG_DIR = os.path.join(os.path.dirname(__file__), '..', 'configs')
REFERENCE_SETS = ["reference_a.conf", "reference_b.conf", "reference_c.conf"]


def solve_reference(name):
    """Solve one bundled configuration and return (name, SifResult, N, published |K|)."""
    config = load_run_config(os.path.join(CONFIG_DIR, name))
    solver = config.solver
    solution = reduction_solve(
        config.material,
        config.quadrature,
        n0=solver.N0,
        n_max=solver.N_max,
        sif_tol=solver.sif_tol,
        step=solver.step,
    )
    return name, sif(solution, config.material), solution.n, config.reference.K_abs


def main():
    """Run all reference sets."""
    configure_logging("WARNING")
    print("StripCrack reference sets")
    print("=" * 72)
    print(f"{'config':<20}{'K_I':>14}{'K_II':>14}{'|K|':>14}{'N':>5}{'scale':>10}")

    results = []
    try:
        for name in REFERENCE_SETS:
            results.append(solve_reference(name))
    except Exception as e:
        print(f"Error solving reference sets: {e}")
        return 1

    for name, result, n, published in results:
        scale = f"{published / result.magnitude:10.5f}" if published else f"{'-':>10}"
        print(
            f"{name:<20}{result.k_one:>14.8f}{result.k_two:>14.8f}"
            f"{result.magnitude:>14.8f}{n:>5}{scale}"
        )

    magnitudes = [result.magnitude for _, result, _, _ in results]
    decreasing = all(b < a for a, b in zip(magnitudes, magnitudes[1:]))
    print("-" * 72)
    print(f"|K| strictly decreasing across sets: {decreasing}")
    return 0 if decreasing else 1


if __name__ == "__main__":
    sys.exit(main())
