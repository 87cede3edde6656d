"""
Numerical services for StripCrack.
"""

from .kernel import KernelEvaluator
from .assembly import GalerkinAssembler
from .linsolve import ReductionSolver

__all__ = [
    "KernelEvaluator",
    "GalerkinAssembler",
    "ReductionSolver",
]
