"""
Executable regularity and convergence checks, and an independent collocation solver.
"""
import math
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np
import structlog

from stripcrack.models.material import MaterialParams
from stripcrack.models.quadrature import ChebKind, QuadratureSpec
from stripcrack.models.solution import (
    ConvergenceRow,
    ConvergenceStudy,
    DecayReport,
    SpectralSolution,
)
from stripcrack.models.system import GalerkinSystem
from stripcrack.services.assembly import GalerkinAssembler
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.linsolve import solve_dense, solve_system
from stripcrack.services.postprocess import sif
from stripcrack.services.specfun import cheb_rule, cheb_t_table, chebyshev_coefficients
from stripcrack.services.wave import derive_wave_params

logger = structlog.get_logger(__name__)

DEFAULT_THRESHOLDS: Dict[str, float] = {
    "slope_rowsum": 0.0,
    "slope_n": -0.9,
    "slope_m": -0.9,
}


def _loglog_slope(index: np.ndarray, values: np.ndarray) -> float:
    if not np.any(values):
        return -math.inf
    mask = values > 0
    if mask.sum() < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(index[mask]), np.log(values[mask]), 1)
    return float(slope)


def frobenius_sq(system: GalerkinSystem) -> float:
    return float(np.sum(np.abs(system.matrix_r) ** 2))


def frobenius_drift(small: GalerkinSystem, large: GalerkinSystem) -> float:
    """Relative growth of sum |R_nm|^2 from the smaller to the larger truncation."""
    base = frobenius_sq(small)
    if base == 0:
        return 0.0
    return abs(frobenius_sq(large) - base) / base


def regularity_report(
    system: GalerkinSystem, thresholds: Optional[Dict[str, float]] = None
) -> DecayReport:
    """
    Row sums and decay slopes of R.

    Entry slopes fit max_m |R_nm| against n and max_n |R_nm| against m over the
    last third of indices; the row-sum slope fits S_n over n in [N/2, N].

    Args:
        system: assembled Galerkin system
        thresholds: overrides for slope_rowsum (strict <), slope_n and slope_m (<=)

    Returns:
        DecayReport
    """
    limits = dict(DEFAULT_THRESHOLDS)
    if thresholds:
        limits.update(thresholds)

    magnitude = np.abs(system.matrix_r)
    n = system.n
    index = np.arange(1, n + 1, dtype=float)
    row_sums = magnitude.sum(axis=1)

    tail = slice(n - max(2, n // 3), n)
    half = slice((n - 1) // 2, n)
    slope_n = _loglog_slope(index[tail], magnitude.max(axis=1)[tail])
    slope_m = _loglog_slope(index[tail], magnitude.max(axis=0)[tail])
    slope_rowsum = _loglog_slope(index[half], row_sums[half])

    passed = {
        "slope_rowsum": bool(slope_rowsum < limits["slope_rowsum"]),
        "slope_n": bool(slope_n <= limits["slope_n"]),
        "slope_m": bool(slope_m <= limits["slope_m"]),
    }
    report = DecayReport(
        row_sums=row_sums,
        fitted_slopes=(slope_n, slope_m, slope_rowsum),
        frobenius_sq=float(np.sum(magnitude ** 2)),
        thresholds=limits,
        passed=passed,
    )
    logger.info("regularity_report", N=n, slopes=report.fitted_slopes, passed=report.all_passed)
    return report


def collocation_oracle(mp: MaterialParams, q: QuadratureSpec, n: int) -> SpectralSolution:
    """
    Solve the integral equation by Gauss-Chebyshev collocation.

    Unknowns are the density values g_j at the n kind-1 nodes; equations hold at
    y_k = cos(k pi / n), k = 1..n-1, where the discrete Cauchy sum is exact, plus
    the closure row sum g_j = 0. The step of the regular kernel acts through the
    discrete antiderivative of the density.

    Returns:
        SpectralSolution with a_m = (2/n) sum_j g_j T_m(eta_j), m = 1..n
    """
    if n < 4:
        raise ValueError("collocation needs n >= 4")
    wp = derive_wave_params(mp)
    kernel = KernelEvaluator(wp, q)

    eta = cheb_rule(ChebKind.FIRST, n).nodes
    theta_k = np.arange(1, n) * math.pi / n
    y = np.cos(theta_k)

    matrix = np.zeros((n, n), dtype=complex)
    matrix[:-1] = 1.0 / (2.0 * n * (eta[None, :] - y[:, None]))

    if not kernel.is_static:
        p = kernel.diagonal_limit()
        continuous = kernel.regular_kernel_grid(y, eta) - p * np.sign(y[:, None] - eta[None, :])
        matrix[:-1] += (math.pi / n) * continuous

        m = np.arange(1, n)
        # Phi(y_k) = -sum_m a_m sin(m theta_k) / m with a_m = (2/n) sum_j g_j T_m(eta_j)
        to_coeffs = (2.0 / n) * cheb_t_table(n - 1, eta)[1:]
        antiderivative = -(np.sin(np.outer(theta_k, m)) / m) @ to_coeffs
        matrix[:-1] += 2.0 * p * antiderivative

    matrix[-1] = 1.0
    rhs = np.zeros(n, dtype=complex)
    rhs[:-1] = mp.tau0 / wp.g_tilde

    try:
        density = solve_dense(matrix, rhs)
    except Exception as e:
        logger.error(f"Failed to solve collocation system: {e}", N=n)
        raise

    residual = float(np.linalg.norm(matrix @ density - rhs))
    coeffs = chebyshev_coefficients(density, m_max=n)[1:]
    logger.info("collocation_solved", N=n, residual=residual)
    return SpectralSolution(
        coeffs=coeffs,
        n=n,
        residual=residual,
        history=[(n, complex(np.sum(coeffs)))],
    )


def _fitted_order(rows: Sequence[ConvergenceRow]) -> Optional[float]:
    points = [(row.n, row.increment) for row in rows if row.increment]
    if len(points) < 2:
        return None
    sizes, increments = zip(*points)
    slope, _ = np.polyfit(np.log(sizes), np.log(increments), 1)
    return float(slope)


def convergence_study(
    mp: MaterialParams, q: QuadratureSpec, n_list: Iterable[int], t: float = 0.0
) -> ConvergenceStudy:
    """
    Solve at each N and tabulate sum a_n, |K| and the relative increment of the sum.

    Args:
        mp: material parameters
        q: kernel quadrature controls
        n_list: ascending truncation sizes
        t: SIF evaluation time

    Returns:
        ConvergenceStudy with a least-squares log-log order of the increments
    """
    sizes = list(n_list)
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("N_list must be non-empty and strictly ascending")

    assembler = GalerkinAssembler(mp, q)
    rows: List[ConvergenceRow] = []
    previous: Optional[complex] = None
    for n in sizes:
        solution = solve_system(assembler.assemble(n))
        total = solution.coeff_sum
        increment = None
        if previous is not None:
            increment = abs(total - previous) / abs(total) if total != 0 else abs(total - previous)
        rows.append(
            ConvergenceRow(
                n=n,
                coeff_sum=total,
                k_abs=sif(solution, mp, t).magnitude,
                increment=increment,
            )
        )
        logger.info("convergence_row", N=n, coeff_sum=str(total), increment=increment)
        previous = total

    return ConvergenceStudy(rows=rows, fitted_order=_fitted_order(rows))
