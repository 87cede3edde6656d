"""
Complex wave quantities of the Kelvin-Voigt medium.
"""
import math
from typing import Union

import numpy as np
import structlog

from stripcrack.core.exceptions import InvalidMaterialError
from stripcrack.models.material import ComplexWaveParams, MaterialParams, Regime

logger = structlog.get_logger(__name__)

ArrayLike = Union[float, np.ndarray]


def derive_wave_params(mp: MaterialParams) -> ComplexWaveParams:
    """
    Derive the complex modulus and squared wavenumber.

    Args:
        mp: validated material parameters

    Returns:
        ComplexWaveParams with g_tilde = G - i k G0 and k0_sq = rho k^2 / g_tilde
    """
    if not (mp.G > 0 and math.isfinite(mp.G)):
        raise InvalidMaterialError(f"G must be positive, got {mp.G}")
    if not (mp.rho > 0 and math.isfinite(mp.rho)):
        raise InvalidMaterialError(f"rho must be positive, got {mp.rho}")

    g_tilde = complex(mp.G, -mp.k * mp.G0)
    if mp.k == 0:
        return ComplexWaveParams(g_tilde=g_tilde, k0_sq=0j, regime=Regime.STATIC)

    k0_sq = (mp.rho * mp.k ** 2) / g_tilde
    regime = Regime.VISCOELASTIC if mp.G0 > 0 else Regime.UNDAMPED
    logger.debug("wave_params_derived", g_tilde=str(g_tilde), k0_sq=str(k0_sq), regime=regime.value)
    return ComplexWaveParams(g_tilde=g_tilde, k0_sq=k0_sq, regime=regime)


def gamma(alpha: ArrayLike, wp: ComplexWaveParams) -> Union[complex, np.ndarray]:
    """sqrt(alpha^2 - k0_sq) on the Re >= 0 branch; scalars or arrays."""
    a = np.asarray(alpha, dtype=float)
    if np.any(~np.isfinite(a)) or np.any(a < 0):
        raise ValueError("alpha must be finite and non-negative")
    # numpy's principal complex sqrt already has Re >= 0
    g = np.sqrt(a * a - complex(wp.k0_sq))
    if g.ndim == 0:
        return complex(g)
    return g


def wavenumber(wp: ComplexWaveParams) -> complex:
    """Principal root w of k0_sq, with Im w > 0 in the viscoelastic regime."""
    return complex(np.sqrt(complex(wp.k0_sq)))
