"""
Dense solve and the reduction (truncation) ladder.
"""
from typing import List, Optional, Tuple

import numpy as np
import structlog
from scipy.linalg import lu_factor, lu_solve

from stripcrack.core.exceptions import NoConvergenceError, SingularMatrixError
from stripcrack.models.material import MaterialParams
from stripcrack.models.quadrature import QuadratureSpec
from stripcrack.models.solution import SpectralSolution
from stripcrack.models.system import GalerkinSystem
from stripcrack.services.assembly import GalerkinAssembler

logger = structlog.get_logger(__name__)

LADDER_STEP = 5


def solve_dense(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Solve a x = b by LU factorization with partial pivoting.

    Args:
        a: square complex matrix
        b: right-hand side of matching length

    Returns:
        Solution vector

    Raises:
        SingularMatrixError: when a pivot is negligible against the matrix scale
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix size {a.shape[0]}")

    n = a.shape[0]
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0:
        raise SingularMatrixError("matrix is identically zero")

    lu, piv = lu_factor(a, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= n * np.finfo(float).eps * scale:
        raise SingularMatrixError(
            f"pivot {pivots.min():.3e} negligible against matrix scale {scale:.3e}"
        )
    return lu_solve((lu, piv), b)


def solve_system(system: GalerkinSystem) -> SpectralSolution:
    """Solve one truncated system and record its residual."""
    lhs = system.lhs
    coeffs = solve_dense(lhs, system.rhs)
    residual = float(np.linalg.norm(lhs @ coeffs - system.rhs))
    return SpectralSolution(
        coeffs=coeffs,
        n=system.n,
        residual=residual,
        history=[(system.n, complex(np.sum(coeffs)))],
        quad_orders=system.quad_orders,
    )


class ReductionSolver:
    """Solves growing truncations until the coefficient sum settles."""

    def __init__(
        self,
        mp: MaterialParams,
        q: QuadratureSpec,
        n0: int = 10,
        n_max: int = 60,
        sif_tol: float = 1e-6,
        step: int = LADDER_STEP,
    ):
        if n0 < 4:
            raise ValueError("N0 must be at least 4")
        if n_max < n0:
            raise ValueError("N_max must be at least N0")
        if not sif_tol > 0:
            raise ValueError("sif_tol must be positive")
        self.mp = mp
        self.q = q
        self.n0 = n0
        self.n_max = n_max
        self.sif_tol = sif_tol
        self.step = step
        self.assembler = GalerkinAssembler(mp, q)

    def ladder(self) -> List[int]:
        sizes = list(range(self.n0, self.n_max + 1, self.step))
        if sizes[-1] != self.n_max:
            sizes.append(self.n_max)
        return sizes

    def solve_at(self, n: int, quad_orders: Optional[Tuple[int, int]] = None) -> SpectralSolution:
        return solve_system(self.assembler.assemble(n, quad_orders))

    def run(self) -> SpectralSolution:
        """
        Walk the ladder N0, N0 + step, ... and finish on N_max.

        Returns:
            The converged SpectralSolution with the full (N, sum a_n) history

        Raises:
            NoConvergenceError: N_max reached first; carries the last solution
        """
        history: List[Tuple[int, complex]] = []
        previous: Optional[complex] = None
        solution: Optional[SpectralSolution] = None

        for n in self.ladder():
            system = self.assembler.assemble(n)
            solution = solve_system(system)
            total = solution.coeff_sum
            history.append((n, total))

            exact = not np.any(system.matrix_r)
            increment = None if previous is None else abs(total - previous)
            logger.info(
                "ladder_step",
                N=n,
                coeff_sum=str(total),
                increment=increment,
                residual=solution.residual,
            )
            if exact or (increment is not None and increment <= self.sif_tol * abs(total)):
                logger.info("ladder_converged", N=n, steps=len(history))
                return _with_history(solution, history, converged=True)
            previous = total

        last = _with_history(solution, history, converged=False)
        logger.warning("ladder_not_converged", N_max=self.n_max, sif_tol=self.sif_tol)
        raise NoConvergenceError(
            f"Coefficient sum not settled to {self.sif_tol:g} by N_max={self.n_max}",
            solution=last,
        )


def _with_history(
    solution: SpectralSolution, history: List[Tuple[int, complex]], converged: bool
) -> SpectralSolution:
    return SpectralSolution(
        coeffs=solution.coeffs,
        n=solution.n,
        residual=solution.residual,
        history=list(history),
        converged=converged,
        quad_orders=solution.quad_orders,
    )


def reduction_solve(
    mp: MaterialParams,
    q: QuadratureSpec,
    n0: int = 10,
    n_max: int = 60,
    sif_tol: float = 1e-6,
    step: int = LADDER_STEP,
) -> SpectralSolution:
    """Reduction method for one material; see ReductionSolver.run."""
    return ReductionSolver(mp, q, n0=n0, n_max=n_max, sif_tol=sif_tol, step=step).run()
