"""
solve: reduction method for one material, SIF and coefficients.
"""
import argparse

import pandas as pd
import structlog

from stripcrack.commands.output import write_result
from stripcrack.core.config import RunConfig
from stripcrack.core.exceptions import NoConvergenceError
from stripcrack.models.solution import SpectralSolution
from stripcrack.services.linsolve import ReductionSolver
from stripcrack.services.postprocess import sif

logger = structlog.get_logger(__name__)

EXIT_NO_CONVERGENCE = 3


def register(subparsers) -> None:
    parser = subparsers.add_parser("solve", help="Solve one configuration and report the SIF")
    parser.set_defaults(handler=run)


def solution_tables(solution: SpectralSolution, config: RunConfig):
    """Primary row plus coefficient and history tables."""
    result = sif(solution, config.material, config.output.t)
    table = pd.DataFrame(
        [
            {
                "N": solution.n,
                "K_re": result.k_complex.real,
                "K_im": result.k_complex.imag,
                "K_abs": result.magnitude,
                "residual": solution.residual,
            }
        ]
    )
    coeffs = pd.DataFrame(
        {
            "m": range(1, solution.n + 1),
            "a_re": solution.coeffs.real,
            "a_im": solution.coeffs.imag,
        }
    )
    history = pd.DataFrame(
        {
            "N": [n for n, _ in solution.history],
            "sum_re": [total.real for _, total in solution.history],
            "sum_im": [total.imag for _, total in solution.history],
        }
    )
    return table, {"coeffs": coeffs, "history": history}


def run(args: argparse.Namespace, config: RunConfig) -> int:
    solver_cfg = config.solver
    solver = ReductionSolver(
        config.material,
        config.quadrature,
        n0=solver_cfg.N0,
        n_max=solver_cfg.N_max,
        sif_tol=solver_cfg.sif_tol,
        step=solver_cfg.step,
    )
    exit_code = 0
    try:
        solution = solver.run()
    except NoConvergenceError as e:
        logger.error(f"Failed to converge: {e}")
        if e.solution is None:
            raise
        solution = e.solution
        exit_code = EXIT_NO_CONVERGENCE

    table, siblings = solution_tables(solution, config)
    write_result(
        config.output.format,
        config.output.path,
        table,
        siblings,
        extra={"converged": solution.converged, "t": config.output.t},
    )
    return exit_code
