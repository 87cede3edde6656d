"""
Material models: physical inputs and derived complex wave quantities.
"""
import enum
import math
from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


class Regime(enum.Enum):
    """Wave regime enumeration."""
    STATIC = "static"
    VISCOELASTIC = "viscoelastic"
    UNDAMPED = "undamped"


class MaterialParams(BaseModel):
    """Kelvin-Voigt half-space under a harmonic shear load of amplitude tau0.

    The crack half-length is fixed at 1.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    G: float = Field(..., description="Elastic shear modulus, Pa")
    G0: float = Field(0.0, description="Viscoelastic shear modulus, Pa*s")
    rho: float = Field(..., description="Mass density, kg/m^3")
    k: float = Field(0.0, description="Angular oscillation frequency, 1/s")
    tau0: float = Field(1.0, description="Shear load amplitude, Pa")

    @field_validator("G", "rho")
    @classmethod
    def validate_positive(cls, v: float, info) -> float:
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"{info.field_name} must be positive and finite")
        return v

    @field_validator("G0", "k")
    @classmethod
    def validate_non_negative(cls, v: float, info) -> float:
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"{info.field_name} must be non-negative and finite")
        return v

    @field_validator("tau0")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("tau0 must be finite")
        return v

    def with_value(self, name: str, value: Any) -> "MaterialParams":
        """Validated copy with one field replaced."""
        data = self.model_dump()
        if name not in data:
            raise ValueError(f"Unknown material parameter: {name}")
        data[name] = value
        return MaterialParams(**data)


@dataclass(frozen=True)
class ComplexWaveParams:
    """Derived complex modulus and squared wavenumber."""
    g_tilde: complex
    k0_sq: complex
    regime: Regime

    @property
    def is_static(self) -> bool:
        return self.regime is Regime.STATIC
