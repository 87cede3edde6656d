"""
Quadrature controls and evaluation records.
"""
import enum
from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class ChebKind(enum.Enum):
    """Gauss-Chebyshev rule kind."""
    FIRST = 1
    SECOND = 2


class QuadratureSpec(BaseModel):
    """Tolerances and truncation controls for the kernel integrals."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    abs_tol: float = Field(1e-12, description="Absolute tolerance")
    rel_tol: float = Field(1e-10, description="Relative tolerance")
    initial_cutoff: float = Field(64.0, description="First finite upper limit A")
    max_doublings: int = Field(20, description="Cap on doubling A")
    panel_order: int = Field(16, description="Gauss-Legendre order per panel")
    max_panels: int = Field(4096, description="Cap on panel count")

    @field_validator("abs_tol", "rel_tol", "initial_cutoff")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        if not v > 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("max_doublings")
    @classmethod
    def validate_doublings(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_doublings must be at least 1")
        return v

    @field_validator("panel_order")
    @classmethod
    def validate_panel_order(cls, v: int) -> int:
        if v < 8:
            raise ValueError("panel_order must be at least 8")
        return v

    @field_validator("max_panels")
    @classmethod
    def validate_max_panels(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_panels must be at least 1")
        return v

    def tightened(self, factor: float) -> "QuadratureSpec":
        """Copy with both tolerances divided by factor."""
        return self.model_copy(
            update={"abs_tol": self.abs_tol / factor, "rel_tol": self.rel_tol / factor}
        )


@dataclass(frozen=True)
class KernelEval:
    """One kernel integral with its error certificate."""
    value: complex
    est_error: float
    cutoff_used: float
    panels_used: int


@dataclass(frozen=True, eq=False)
class ChebRule:
    """Gauss-Chebyshev nodes and weights."""
    kind: ChebKind
    n: int
    nodes: np.ndarray
    weights: np.ndarray
