"""
Exception hierarchy for StripCrack.
"""
from typing import Optional


class StripCrackError(Exception):
    """Base class for all solver errors."""


class InvalidMaterialError(StripCrackError, ValueError):
    """Material parameters violate G > 0, rho > 0, k >= 0, G0 >= 0."""


class ConfigError(StripCrackError, ValueError):
    """Run configuration could not be parsed or validated."""


class UnsupportedRegimeError(StripCrackError):
    """The undamped regime puts a pole on the real integration path."""


class NonConvergenceError(StripCrackError):
    """Kernel quadrature could not reach the requested tolerance."""

    def __init__(self, message: str, s: Optional[float] = None, est_error: Optional[float] = None):
        super().__init__(message)
        self.s = s
        self.est_error = est_error


class SingularMatrixError(StripCrackError):
    """A pivot of the LU factorization underflowed."""


class NoConvergenceError(StripCrackError):
    """The reduction ladder reached N_max without meeting sif_tol."""

    def __init__(self, message: str, solution=None):
        super().__init__(message)
        # last SpectralSolution, history included
        self.solution = solution


class OnCrackFaceError(StripCrackError, ValueError):
    """Displacement requested on the jump line x = 0, |y| < 1."""
