"""
Post-processing of spectral solutions: SIF, crack opening, displacement, error bound.
"""
import math
from typing import Optional, Union

import numpy as np
import structlog

from stripcrack.core.exceptions import OnCrackFaceError
from stripcrack.models.material import ComplexWaveParams, MaterialParams
from stripcrack.models.quadrature import ChebKind, QuadratureSpec
from stripcrack.models.solution import SifResult, SpectralSolution
from stripcrack.services.kernel import KernelEvaluator
from stripcrack.services.specfun import cheb_rule, cheb_t_table
from stripcrack.services.wave import derive_wave_params

logger = structlog.get_logger(__name__)

ZETA_DIRECT_TERMS = 2000


def sif(sol: SpectralSolution, mp: MaterialParams, t: float = 0.0) -> SifResult:
    """
    Complex stress intensity factor at time t.

    K_I + i K_II = e^{-ikt} / sqrt(2) * (G - ikG0) * sum a_n

    Args:
        sol: converged spectral solution
        mp: material parameters the solution was computed for
        t: evaluation time, s

    Returns:
        SifResult
    """
    g_tilde = derive_wave_params(mp).g_tilde
    k_complex = complex(np.exp(-1j * mp.k * t) / math.sqrt(2.0) * g_tilde * sol.coeff_sum)
    return SifResult(k_complex=k_complex, magnitude=abs(k_complex), t=float(t))


def _angles(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > 1):
        raise ValueError("y must lie in [-1, 1]")
    return np.arccos(y)


def cod_profile(sol: SpectralSolution, y) -> Union[complex, np.ndarray]:
    """Crack opening sqrt(1-y^2) sum a_m U_{m-1}(y) / m, i.e. sum (a_m/m) sin(m theta)."""
    theta = _angles(y)
    m = np.arange(1, sol.n + 1)
    modes = np.sin(np.multiply.outer(theta, m)) / m
    values = modes @ sol.coeffs
    return complex(values) if np.ndim(values) == 0 else values


def cod_slope(sol: SpectralSolution, y) -> Union[complex, np.ndarray]:
    """d/dy of cod_profile: -sum a_m T_m(y) / sqrt(1-y^2), |y| < 1."""
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) >= 1):
        raise ValueError("slope defined only for |y| < 1")
    t = cheb_t_table(sol.n, y)[1:]
    values = -np.tensordot(sol.coeffs, t, axes=1) / np.sqrt(1.0 - y * y)
    return complex(values) if np.ndim(values) == 0 else values


def _exterior_map(z: complex) -> complex:
    """w = z - sqrt(z^2 - 1) on the branch with |w| < 1 off [-1, 1]."""
    return z - np.sqrt(z - 1.0) * np.sqrt(z + 1.0)


def displacement_field(
    sol: SpectralSolution,
    x: float,
    y: float,
    wp: ComplexWaveParams,
    q: QuadratureSpec,
    kernel: Optional[KernelEvaluator] = None,
) -> complex:
    """
    Displacement omega_0(x, y) reconstructed from the crack density.

    The arctangent part is integrated by parts into the Poisson integral of the
    crack opening and summed mode by mode in closed form. The regular part uses
    kind-1 quadrature of the field kernel, whose step across eta = y is
    integrated exactly.

    Raises:
        OnCrackFaceError: x == 0 and |y| < 1
    """
    if x == 0:
        if abs(y) < 1:
            raise OnCrackFaceError(f"(0, {y}) lies on the crack; pick a side by the sign of x")
        return 0j

    m = np.arange(1, sol.n + 1)
    w = _exterior_map(complex(y, x))
    poisson = 0.5 * np.sum((sol.coeffs / m) * np.imag(w ** m))

    if kernel is None:
        kernel = KernelEvaluator(wp, q)
    if kernel.is_static:
        return complex(poisson)

    n_quad = max(64, 2 * sol.n)
    rule = cheb_rule(ChebKind.FIRST, n_quad)
    density = sol.coeffs @ cheb_t_table(sol.n, rule.nodes)[1:]
    diff = y - rule.nodes
    field = kernel.field_kernel_many(x, diff)

    if abs(y) < 1:
        edge = kernel.field_kernel_edge(x)
        continuous = field - edge * np.sign(diff)
        # int sgn(y - eta) phi0'(eta) d eta = -2 cod(y)
        step = edge * (-2.0 * cod_profile(sol, y))
        regular = step + np.sum(rule.weights * continuous * density)
    else:
        regular = np.sum(rule.weights * field * density)

    return complex(-regular / (2.0 * math.pi) + poisson)


def hurwitz_zeta(s: float, n: float) -> float:
    """
    zeta(s, N) = sum_{k >= 1} (k + N)^{-s} for s > 1, N >= 0.

    Direct summation of the first terms plus an Euler-Maclaurin tail.
    """
    if not s > 1:
        raise ValueError("zeta(s, N) requires s > 1")
    if n < 0:
        raise ValueError("N must be non-negative")
    k = np.arange(ZETA_DIRECT_TERMS, 0, -1, dtype=float)
    # smallest terms first
    direct = float(np.sum((k + n) ** (-s)))
    a = ZETA_DIRECT_TERMS + n + 1.0
    tail = (
        a ** (1.0 - s) / (s - 1.0)
        + 0.5 * a ** (-s)
        + s * a ** (-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * a ** (-s - 3.0) / 720.0
    )
    return direct + tail


def error_bound(n: int, constant: float = 1.0) -> float:
    """
    A priori truncation bound C * sqrt(zeta(4, N)).

    Scales as N^{-3/2} for large N.
    """
    if n < 0:
        raise ValueError("N must be non-negative")
    return constant * math.sqrt(hurwitz_zeta(4.0, n))
