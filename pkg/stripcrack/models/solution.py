"""
Solution records: spectral coefficients, SIF, decay and convergence reports.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd


@dataclass(frozen=True, eq=False)
class SpectralSolution:
    """Chebyshev coefficients a_1..a_N with solve metadata."""
    coeffs: np.ndarray
    n: int
    residual: float
    history: List[Tuple[int, complex]] = field(default_factory=list)
    converged: bool = True
    quad_orders: Optional[Tuple[int, int]] = None

    @property
    def coeff_sum(self) -> complex:
        return complex(np.sum(self.coeffs))


@dataclass(frozen=True)
class SifResult:
    """Complex stress intensity factor K_I + i K_II at time t."""
    k_complex: complex
    magnitude: float
    t: float

    @property
    def k_one(self) -> float:
        return self.k_complex.real

    @property
    def k_two(self) -> float:
        return self.k_complex.imag


@dataclass(frozen=True, eq=False)
class DecayReport:
    """Row sums, fitted log-log slopes and pass flags for a Galerkin matrix."""
    row_sums: np.ndarray
    fitted_slopes: Tuple[float, float, float]
    frobenius_sq: float
    thresholds: Dict[str, float]
    passed: Dict[str, bool]

    @property
    def slope_n(self) -> float:
        return self.fitted_slopes[0]

    @property
    def slope_m(self) -> float:
        return self.fitted_slopes[1]

    @property
    def slope_rowsum(self) -> float:
        return self.fitted_slopes[2]

    @property
    def all_passed(self) -> bool:
        return all(self.passed.values())


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    coeff_sum: complex
    k_abs: float
    increment: Optional[float]


@dataclass(frozen=True)
class ConvergenceStudy:
    """Table of truncation sizes against Σa_n, |K| and relative increments."""
    rows: List[ConvergenceRow]
    fitted_order: Optional[float]

    @property
    def increments(self) -> List[float]:
        return [row.increment for row in self.rows if row.increment is not None]

    @property
    def monotone(self) -> bool:
        inc = self.increments
        return all(b <= a for a, b in zip(inc, inc[1:]))

    def to_frame(self) -> pd.DataFrame:
        """Rows as a DataFrame with complex sums split into parts."""
        return pd.DataFrame(
            {
                "N": [row.n for row in self.rows],
                "sum_re": [row.coeff_sum.real for row in self.rows],
                "sum_im": [row.coeff_sum.imag for row in self.rows],
                "K_abs": [row.k_abs for row in self.rows],
                "increment": [
                    np.nan if row.increment is None else row.increment for row in self.rows
                ],
            }
        )
