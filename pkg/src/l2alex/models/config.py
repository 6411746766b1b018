import logging
import os
from typing import Any, Dict
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

_ENV_FIELDS = {
    "quad_points": ("L2ALEX_QUAD_POINTS", int),
    "root_tol": ("L2ALEX_ROOT_TOL", float),
    "kmax": ("L2ALEX_KMAX", int),
    "tmin": ("L2ALEX_TMIN", float),
    "tmax": ("L2ALEX_TMAX", float),
    "samples": ("L2ALEX_SAMPLES", int),
    "quad_workers": ("L2ALEX_QUAD_WORKERS", int),
    "max_terms": ("L2ALEX_MAX_TERMS", int),
}


class CliConfig(BaseModel):
    """
    Numerical settings shared by every command.
    """
    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "quad_points": 1024,
                "root_tol": 1e-12,
                "kmax": 32,
                "tmin": 1e-3,
                "tmax": 1e3,
                "samples": 121,
            }
        },
    )

    quad_points: int = Field(1024, gt=0, description="Quadrature points per torus dimension (power of two)")
    root_tol: float = Field(1e-12, gt=0, description="Absolute tolerance for root moduli")
    kmax: int = Field(32, gt=0, description="Largest power used for growth-rate bounds")
    tmin: float = Field(1e-3, gt=0, description="Smallest t of the sample grid")
    tmax: float = Field(1e3, gt=0, description="Largest t of the sample grid")
    samples: int = Field(121, ge=2, description="Number of log-spaced sample points")
    quad_workers: int = Field(1, gt=0, description="Threads used for quadrature chunks")
    max_terms: int = Field(20000, gt=0, description="Group-ring term cap for exact matrix powers")

    @field_validator("quad_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError(f"quad_points must be a power of two, got {value}")
        return value

    @model_validator(mode="after")
    def _grid_order(self):
        if self.tmin >= self.tmax:
            raise ValueError(f"tmin ({self.tmin}) must be smaller than tmax ({self.tmax})")
        return self

    @classmethod
    def from_env(cls, **overrides: Any) -> "CliConfig":
        """
        Build a configuration from environment variables, then apply overrides.

        Malformed environment values are logged and replaced by the defaults.
        """
        values: Dict[str, Any] = {}
        for name, (var, kind) in _ENV_FIELDS.items():
            raw = os.getenv(var)
            if raw is None:
                continue
            try:
                values[name] = kind(raw)
            except ValueError:
                logger.warning(f"Invalid {var} value {raw!r}, using default")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
