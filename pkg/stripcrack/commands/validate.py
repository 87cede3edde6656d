"""
validate: run the diagnostic checks against configured thresholds.
"""
import argparse
import math
from dataclasses import asdict, dataclass
from typing import List

import numpy as np
import pandas as pd
import structlog

from stripcrack.commands.output import write_result
from stripcrack.core.config import RunConfig
from stripcrack.services.assembly import GalerkinAssembler
from stripcrack.services.diagnostics import (
    collocation_oracle,
    convergence_study,
    frobenius_drift,
    regularity_report,
)
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.linsolve import reduction_solve, solve_system
from stripcrack.services.postprocess import sif

logger = structlog.get_logger(__name__)

EXIT_FAILED = 1


@dataclass
class Check:
    check: str
    value: float
    threshold: float
    passed: bool
    gated: bool = True


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="Run diagnostic checks; exit 1 on failure")
    parser.set_defaults(handler=run)


def _relative(a: complex, b: complex) -> float:
    scale = abs(b)
    return abs(a - b) / scale if scale else abs(a - b)


def static_check(config: RunConfig) -> Check:
    """Closed form a_1 = 2 tau0 / G, |K| = sqrt(2) tau0 in the static medium."""
    material = config.material.with_value("k", 0.0)
    solution = reduction_solve(material, config.quadrature, n0=config.solver.N0, n_max=config.solver.N_max)
    a1 = 2.0 * material.tau0 / material.G
    error = _relative(solution.coeffs[0], a1) if a1 else abs(solution.coeffs[0])
    error = max(error, float(np.max(np.abs(solution.coeffs[1:]))) / abs(a1) if a1 else 0.0)
    k_abs = sif(solution, material).magnitude
    reference = math.sqrt(2.0) * abs(material.tau0)
    error = max(error, abs(k_abs - reference) / reference if reference else k_abs)
    tol = config.validate_.static_tol
    return Check("static_closed_form", error, tol, error <= tol)


def diagonal_check(kernel: KernelEvaluator, tol: float) -> Check:
    """rho0(0) by quadrature against i pi w / 2, at 1000x tighter tolerances."""
    q = kernel.q
    tight = q.model_copy(
        update={
            "abs_tol": q.abs_tol / 1000.0,
            "rel_tol": q.rel_tol / 1000.0,
            "max_doublings": max(q.max_doublings, 40),
        }
    )
    tight_kernel = KernelEvaluator(kernel.wp, tight)
    exact = tight_kernel.diagonal_limit()
    error = _relative(tight_kernel.rho0_eval(0.0).value, exact)
    return Check("diagonal_limit", error, tol, error <= tol)


def honesty_check(kernel: KernelEvaluator, samples: int) -> Check:
    """Halving tolerances moves rho0 by less than the reported error estimate."""
    halved = KernelEvaluator(kernel.wp, kernel.q.tightened(2.0))
    worst = 0.0
    for s in np.linspace(0.0, 2.0, samples):
        loose = kernel.rho0_eval(float(s))
        tight = halved.rho0_eval(float(s))
        worst = max(worst, abs(loose.value - tight.value) / loose.est_error)
    return Check("kernel_tolerance_honesty", worst, 1.0, worst < 1.0)


def collect_checks(config: RunConfig) -> List[Check]:
    cfg = config.validate_
    material, q = config.material, config.quadrature
    checks = [static_check(config)]

    assembler = GalerkinAssembler(material, q)
    if not assembler.kernel.is_static:
        checks.append(diagonal_check(assembler.kernel, cfg.diagonal_tol))
        checks.append(honesty_check(assembler.kernel, cfg.kernel_samples))

    probe = assembler.assemble(cfg.n_probe)
    report = regularity_report(
        probe,
        thresholds={
            "slope_rowsum": cfg.slope_rowsum,
            "slope_n": cfg.slope_entries,
            "slope_m": cfg.slope_entries,
        },
    )
    checks.extend(
        [
            Check("slope_rowsum", report.slope_rowsum, cfg.slope_rowsum, report.passed["slope_rowsum"]),
            Check("slope_n", report.slope_n, cfg.slope_entries, report.passed["slope_n"]),
            Check("slope_m", report.slope_m, cfg.slope_entries, report.passed["slope_m"]),
        ]
    )

    drift = frobenius_drift(assembler.assemble(cfg.n_drift_from), probe)
    checks.append(Check("frobenius_drift", drift, cfg.drift_max, drift < cfg.drift_max))

    galerkin_k = sif(solve_system(probe), material).k_complex
    colloc_k = sif(collocation_oracle(material, q, cfg.n_probe), material).k_complex
    gap = _relative(abs(colloc_k), abs(galerkin_k))
    checks.append(Check("oracle_equivalence", gap, cfg.oracle_tol, gap <= cfg.oracle_tol))

    study = convergence_study(material, q, cfg.n_list)
    checks.append(Check("increments_monotone", float(study.monotone), 1.0, study.monotone))
    order = study.fitted_order
    checks.append(
        Check(
            "fitted_order",
            math.nan if order is None else order,
            -1.0,
            order is None or order <= -1.0,
        )
    )

    if config.reference.K_abs is not None:
        k_abs = study.rows[-1].k_abs
        scale = config.reference.K_abs / k_abs if k_abs else math.nan
        checks.append(Check("reference_scale", scale, math.nan, True, gated=False))
    return checks


def run(args: argparse.Namespace, config: RunConfig) -> int:
    checks = collect_checks(config)
    table = pd.DataFrame([asdict(check) for check in checks])
    failed = [check.check for check in checks if check.gated and not check.passed]
    write_result(
        config.output.format,
        config.output.path,
        table,
        extra={"passed": not failed, "failed": failed},
    )
    if failed:
        logger.error("validation_failed", failed=failed)
        return EXIT_FAILED
    logger.info("validation_passed", checks=len(checks))
    return 0
