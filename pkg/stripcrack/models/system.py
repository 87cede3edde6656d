"""
Truncated Galerkin system.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from stripcrack.models.material import ComplexWaveParams


@dataclass(frozen=True, eq=False)
class GalerkinSystem:
    """(I + R) a = f truncated at size n.

    Rows are test functions U_{n-1}, columns trial functions T_m, both 1-based
    in the mathematics and 0-based in the arrays.
    """
    n: int
    matrix_r: np.ndarray
    rhs: np.ndarray
    quad_orders: Tuple[int, int]
    wave: ComplexWaveParams

    @property
    def lhs(self) -> np.ndarray:
        """The full operator I + R."""
        return np.eye(self.n, dtype=complex) + self.matrix_r

    def leading_block(self, n: int) -> np.ndarray:
        return self.matrix_r[:n, :n]
