"""
Galerkin assembly of the truncated system (I + R) a = f.
"""
import math
import time
from typing import Optional, Tuple

import numpy as np
import structlog

from stripcrack.models.material import ComplexWaveParams, MaterialParams
from stripcrack.models.quadrature import ChebKind, QuadratureSpec
from stripcrack.models.system import GalerkinSystem
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.specfun import cheb_rule, cheb_t_table, cheb_u_table, sin_product_integral
from stripcrack.services.wave import derive_wave_params

logger = structlog.get_logger(__name__)

QUAD_PAD = 32
QUAD_FLOOR_PAD = 16


def default_quad_orders(n: int) -> Tuple[int, int]:
    return (n + QUAD_PAD, n + QUAD_PAD)


def rhs_vector(n: int, tau0: float, g_tilde: complex) -> np.ndarray:
    """f_1 = 2 tau0 / G~, f_n = 0 for n >= 2."""
    if n < 1:
        raise ValueError("system size must be at least 1")
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = 2.0 * tau0 / complex(g_tilde)
    return rhs


def jump_matrix(n: int, diagonal_limit: complex) -> np.ndarray:
    """Exact Galerkin image of the step rho0(0) sgn(y - eta)."""
    jump = np.zeros((n, n), dtype=complex)
    if diagonal_limit == 0:
        return jump
    for row in range(1, n + 1):
        for col in range(1, n + 1):
            if (row + col) % 2:
                continue
            jump[row - 1, col - 1] = (
                -8.0 * diagonal_limit / (math.pi * col) * sin_product_integral(row, col)
            )
    return jump


def galerkin_matrix(
    n: int,
    wp: ComplexWaveParams,
    kernel: KernelEvaluator,
    quad_orders: Optional[Tuple[int, int]] = None,
) -> np.ndarray:
    """
    R_nm = 4/pi int sqrt(1-y^2) U_{n-1}(y) int K(y, eta) T_m(eta) / sqrt(1-eta^2) d eta dy.

    K jumps by 2 rho0(0) across y = eta. The step is integrated exactly and the
    continuous remainder by a tensor kind-1 (eta) x kind-2 (y) Gauss-Chebyshev rule.

    Args:
        n: truncation size N
        wp: wave parameters of the medium
        kernel: evaluator bound to wp
        quad_orders: (n_eta, n_y), each at least N + 16

    Returns:
        Complex N x N matrix, rows n = 1..N, columns m = 1..N
    """
    n_eta, n_y = quad_orders or default_quad_orders(n)
    floor = n + QUAD_FLOOR_PAD
    if n_eta < floor or n_y < floor:
        raise ValueError(f"quad_orders {quad_orders} below floor N + {QUAD_FLOOR_PAD} = {floor}")

    if kernel.is_static:
        return np.zeros((n, n), dtype=complex)

    eta_rule = cheb_rule(ChebKind.FIRST, n_eta)
    y_rule = cheb_rule(ChebKind.SECOND, n_y)

    p = kernel.diagonal_limit()
    grid = kernel.regular_kernel_grid(y_rule.nodes, eta_rule.nodes)
    continuous = grid - p * np.sign(y_rule.nodes[:, None] - eta_rule.nodes[None, :])

    test = cheb_u_table(n - 1, y_rule.nodes) * y_rule.weights
    trial = cheb_t_table(n, eta_rule.nodes)[1:] * eta_rule.weights
    matrix = (4.0 / math.pi) * (test @ continuous @ trial.T)
    return matrix + jump_matrix(n, p)


class GalerkinAssembler:
    """Assembles Galerkin systems for one medium, reusing kernel values across sizes."""

    def __init__(self, mp: MaterialParams, q: QuadratureSpec):
        self.mp = mp
        self.q = q
        self.wave = derive_wave_params(mp)
        self.kernel = KernelEvaluator(self.wave, q)

    def assemble(self, n: int, quad_orders: Optional[Tuple[int, int]] = None) -> GalerkinSystem:
        """
        Build the truncated system at size n.

        Args:
            n: truncation size N
            quad_orders: optional (n_eta, n_y) override

        Returns:
            GalerkinSystem
        """
        orders = tuple(quad_orders) if quad_orders else default_quad_orders(n)
        start = time.perf_counter()
        try:
            matrix = galerkin_matrix(n, self.wave, self.kernel, orders)
        except Exception as e:
            logger.error(f"Failed to assemble Galerkin system: {e}", N=n, quad_orders=orders)
            raise

        system = GalerkinSystem(
            n=n,
            matrix_r=matrix,
            rhs=rhs_vector(n, self.mp.tau0, self.wave.g_tilde),
            quad_orders=orders,
            wave=self.wave,
        )
        logger.info(
            "system_assembled",
            N=n,
            quad_orders=orders,
            seconds=round(time.perf_counter() - start, 3),
        )
        return system


def assemble(
    n: int,
    mp: MaterialParams,
    q: QuadratureSpec,
    quad_orders: Optional[Tuple[int, int]] = None,
) -> GalerkinSystem:
    """Assemble the truncated Galerkin system for one material."""
    return GalerkinAssembler(mp, q).assemble(n, quad_orders)
