"""
Runtime settings for niclab.

Values are read from the environment (optionally seeded from a ``.env`` file)
and validated by pydantic. Every numeric entry point accepts an explicit
``settings`` argument; ``get_settings()`` is the fallback.
"""
import os
from functools import lru_cache
from typing import Literal, Mapping, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

_ENV_KEYS = {
    "log_level": "LOG_LEVEL",
    "eig_backend": "NICLAB_EIG_BACKEND",
    "jacobi_max_sweeps": "NICLAB_JACOBI_MAX_SWEEPS",
    "jacobi_threshold": "NICLAB_JACOBI_THRESHOLD",
    "max_dim": "NICLAB_MAX_DIM",
    "hermitian_tol": "NICLAB_HERMITIAN_TOL",
    "reconstruction_tol": "NICLAB_RECONSTRUCTION_TOL",
    "orthonormality_tol": "NICLAB_ORTHONORMALITY_TOL",
    "unitary_tol": "NICLAB_UNITARY_TOL",
    "gate_unitary_tol": "NICLAB_GATE_UNITARY_TOL",
    "phase_cluster_tol": "NICLAB_PHASE_CLUSTER_TOL",
    "phase_dedup_tol": "NICLAB_PHASE_DEDUP_TOL",
    "det_consistency_tol": "NICLAB_DET_CONSISTENCY_TOL",
    "grid_points": "NICLAB_GRID_POINTS",
    "golden_xtol": "NICLAB_GOLDEN_XTOL",
}


class Settings(BaseModel):
    """Tolerances, limits and backend selection"""
    model_config = ConfigDict(frozen=True)

    log_level: str = "INFO"
    eig_backend: Literal["lapack", "jacobi"] = "lapack"
    jacobi_max_sweeps: int = Field(default=100, ge=1)
    jacobi_threshold: float = Field(default=1e-12, gt=0)
    max_dim: int = Field(default=4096, ge=512)
    hermitian_tol: float = Field(default=1e-10, ge=0)
    reconstruction_tol: float = Field(default=1e-9, ge=0)
    orthonormality_tol: float = Field(default=1e-10, ge=0)
    unitary_tol: float = Field(default=1e-8, ge=0)
    gate_unitary_tol: float = Field(default=1e-9, ge=0)
    phase_cluster_tol: float = Field(default=1e-8, ge=0)
    phase_dedup_tol: float = Field(default=1e-10, ge=0)
    det_consistency_tol: float = Field(default=1e-6, ge=0)
    grid_points: int = Field(default=4096, ge=16)
    golden_xtol: float = Field(default=1e-9, gt=0)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @field_validator("eig_backend", mode="before")
    @classmethod
    def _lower_backend(cls, value):
        return value.lower() if isinstance(value, str) else value

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Build settings from environment variables; unset keys keep defaults"""
        environ = os.environ if environ is None else environ
        values = {
            field: environ[key]
            for field, key in _ENV_KEYS.items()
            if environ.get(key) not in (None, "")
        }
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    return Settings.from_env()


def resolve(settings: Optional[Settings]) -> Settings:
    return get_settings() if settings is None else settings
