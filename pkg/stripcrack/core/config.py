"""
Run configuration for StripCrack.

Config files are flat `section.key = value` text; `#` starts a comment.
"""
import enum
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from stripcrack.core.exceptions import ConfigError
from stripcrack.models.material import MaterialParams
from stripcrack.models.quadrature import QuadratureSpec


class OutputFormat(str, enum.Enum):
    """Result file format."""
    CSV = "csv"
    JSON = "json"


def _reference_material() -> MaterialParams:
    return MaterialParams(G=8.0e10, G0=6.5e10, rho=2700.0, k=3.0, tau0=1.0)


class SolverConfig(BaseModel):
    """Reduction ladder controls."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    N0: int = Field(10, description="First truncation size")
    N_max: int = Field(60, description="Largest truncation size")
    sif_tol: float = Field(1e-6, description="Relative tolerance on sum a_n")
    step: int = Field(5, description="Ladder step")

    @field_validator("N0")
    @classmethod
    def validate_n0(cls, v: int) -> int:
        if v < 4:
            raise ValueError("N0 must be at least 4")
        return v

    @field_validator("sif_tol")
    @classmethod
    def validate_sif_tol(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("sif_tol must be positive")
        return v

    @field_validator("step")
    @classmethod
    def validate_step(cls, v: int) -> int:
        if v < 1:
            raise ValueError("step must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_range(self) -> "SolverConfig":
        if self.N_max < self.N0:
            raise ValueError("N_max must be at least N0")
        return self


class OutputConfig(BaseModel):
    """Where and how results are written."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    format: OutputFormat = OutputFormat.CSV
    path: Optional[str] = Field(None, description="Output file; stdout when unset")
    t: float = Field(0.0, description="SIF evaluation time, s")


def _split_int_list(v: Any) -> Any:
    if isinstance(v, str):
        return [int(item) for item in v.split(",") if item.strip()]
    return v


class ValidateConfig(BaseModel):
    """Thresholds of the validate command."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    n_probe: int = Field(25, description="Truncation used for regularity and oracle checks")
    n_drift_from: int = Field(20, description="Smaller truncation of the sum |R|^2 drift check")
    n_list: List[int] = Field(default_factory=lambda: [10, 15, 20, 25])
    kernel_samples: int = Field(20, description="s samples of the tolerance-honesty check")
    slope_rowsum: float = 0.0
    slope_entries: float = -0.9
    drift_max: float = 0.01
    oracle_tol: float = 1e-4
    static_tol: float = 1e-12
    diagonal_tol: float = 1e-9

    @field_validator("n_list", mode="before")
    @classmethod
    def split_n_list(cls, v: Any) -> Any:
        return _split_int_list(v)

    @field_validator("n_list")
    @classmethod
    def validate_n_list(cls, v: List[int]) -> List[int]:
        if len(v) < 2 or any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("n_list needs at least two strictly ascending sizes")
        return v


class ReferenceConfig(BaseModel):
    """Published reference magnitude, reported for scale only."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    K_abs: Optional[float] = None


class RunConfig(BaseModel):
    """Complete configuration of one run."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    material: MaterialParams = Field(default_factory=_reference_material)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    quadrature: QuadratureSpec = Field(default_factory=QuadratureSpec)
    output: OutputConfig = Field(default_factory=OutputConfig)
    validate_: ValidateConfig = Field(default_factory=ValidateConfig, alias="validate")
    reference: ReferenceConfig = Field(default_factory=ReferenceConfig)

    def with_output(self, **changes: Any) -> "RunConfig":
        """Copy with output fields replaced (None values ignored)."""
        updates = {key: value for key, value in changes.items() if value is not None}
        if not updates:
            return self
        data = self.output.model_dump()
        data.update(updates)
        try:
            output = OutputConfig(**data)
        except ValidationError as e:
            raise ConfigError(f"Invalid output options: {e}") from e
        return self.model_copy(update={"output": output})


SECTIONS = ("material", "solver", "quadrature", "output", "validate", "reference")


def parse_config_text(text: str, source: str = "<string>") -> RunConfig:
    """
    Parse flat key-value config text.

    Args:
        text: lines of `section.key = value`
        source: name used in error messages

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: malformed line, unknown section, duplicate key or invalid value
    """
    sections: Dict[str, Dict[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value'")
        name, value = (part.strip() for part in line.split("=", 1))
        if "." not in name:
            raise ConfigError(f"{source}:{lineno}: key '{name}' has no section prefix")
        section, key = name.split(".", 1)
        if section not in SECTIONS:
            raise ConfigError(f"{source}:{lineno}: unknown section '{section}'")
        block = sections.setdefault(section, {})
        if key in block:
            raise ConfigError(f"{source}:{lineno}: duplicate key '{name}'")
        block[key] = value

    try:
        return RunConfig(**sections)
    except ValidationError as e:
        raise ConfigError(f"{source}: invalid configuration: {e}") from e


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Load and validate a config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    return parse_config_text(text, source=str(path))


@lru_cache()
def get_default_config() -> RunConfig:
    """Get cached default configuration (reference medium, default controls)."""
    return RunConfig()
