"""
Data models for StripCrack.
"""

from .material import MaterialParams, ComplexWaveParams, Regime
from .quadrature import QuadratureSpec, KernelEval, ChebKind, ChebRule
from .system import GalerkinSystem
from .solution import (
    SpectralSolution, SifResult, DecayReport, ConvergenceRow, ConvergenceStudy
)

__all__ = [
    "MaterialParams", "ComplexWaveParams", "Regime",
    "QuadratureSpec", "KernelEval", "ChebKind", "ChebRule",
    "GalerkinSystem",
    "SpectralSolution", "SifResult", "DecayReport", "ConvergenceRow", "ConvergenceStudy",
]
