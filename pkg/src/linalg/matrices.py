"""
Matrix carriers shared by every niclab module.

``ComplexMatrix`` is a plain numpy array annotated for pydantic: models that
declare a ``ComplexMatrix`` field accept Matrix JSON ({"dim": n, "entries":
[[re, im], ...]}), nested lists or arrays, and serialize back to Matrix JSON.
"""
from __future__ import annotations

import math
from typing import Annotated, Any, Dict, List

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    PlainSerializer,
    PlainValidator,
    field_validator,
    model_serializer,
    model_validator,
)

from src.utils.config import get_settings
from src.utils.errors import NicLabError


class DimensionMismatchError(NicLabError):
    """Operand shapes do not fit together"""


class NotHermitianError(NicLabError):
    """Input deviates from its adjoint beyond tolerance"""


class NotUnitaryError(NicLabError):
    """Input fails the unitarity check"""


class EigenConvergenceError(NicLabError):
    """Eigensolver did not reach the required accuracy"""
    def __init__(self, message: str, residual: float, original: Exception | None = None):
        super().__init__(f"{message} (residual={residual:.3e})", original=original)
        self.residual = residual


# ========================
# Matrix JSON codec
# ========================
def matrix_to_json(a: np.ndarray) -> Dict[str, Any]:
    a = np.asarray(a, dtype=np.complex128)
    return {
        "dim": int(a.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_json(doc: Dict[str, Any]) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"matrix document needs 'dim' and 'entries': {e}") from None
    if dim < 1 or len(entries) != dim * dim:
        raise ValueError(f"matrix document has {len(entries)} entries for dim {dim}")
    flat = np.array(
        [complex(float(re), float(im)) for re, im in entries], dtype=np.complex128
    )
    return flat.reshape(dim, dim)


def _coerce_matrix(value: Any) -> np.ndarray:
    if isinstance(value, dict):
        a = matrix_from_json(value)
    else:
        a = np.array(value, dtype=np.complex128)
        if a.ndim == 0:
            a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


def _coerce_vector(value: Any) -> np.ndarray:
    v = np.array(value, dtype=np.float64, copy=True).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    v.setflags(write=False)
    return v


ComplexMatrix = Annotated[
    np.ndarray,
    PlainValidator(_coerce_matrix),
    PlainSerializer(matrix_to_json, return_type=dict),
]

RealVector = Annotated[
    np.ndarray,
    PlainValidator(_coerce_vector),
    PlainSerializer(lambda v: [float(x) for x in v], return_type=list),
]


def as_matrix(value: Any) -> np.ndarray:
    """Validate anything matrix-like into a read-only complex array"""
    try:
        return _coerce_matrix(value)
    except ValueError as e:
        raise DimensionMismatchError("not a valid complex matrix", original=e) from None


def dagger(a: np.ndarray) -> np.ndarray:
    return np.conj(a).T


# ========================
# Domain models
# ========================
class HermitianMatrix(BaseModel):
    """
    Hermitian operator. Construction checks ``‖A − A†‖ ≤ tol`` and stores
    the symmetrized value ``(A + A†)/2``. Serializes as plain Matrix JSON.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    inner: ComplexMatrix

    @model_validator(mode="before")
    @classmethod
    def _accept_bare_matrix(cls, data: Any) -> Any:
        if isinstance(data, HermitianMatrix):
            return {"inner": data.inner}
        if isinstance(data, dict) and "inner" in data:
            return data
        return {"inner": data}

    @field_validator("inner")
    @classmethod
    def _symmetrize(cls, a: np.ndarray) -> np.ndarray:
        # env-only tolerance: validators have no settings argument
        tol = get_settings().hermitian_tol
        skew = float(np.linalg.norm(a - dagger(a)))
        if skew > tol:
            raise ValueError(f"matrix is not Hermitian: ‖A − A†‖ = {skew:.3e} > {tol:.1e}")
        sym = (a + dagger(a)) / 2
        sym.setflags(write=False)
        return sym

    @model_serializer
    def _as_matrix_json(self) -> Dict[str, Any]:
        return matrix_to_json(self.inner)

    @classmethod
    def of(cls, value: Any) -> "HermitianMatrix":
        if isinstance(value, HermitianMatrix):
            return value
        try:
            return cls.model_validate(value)
        except ValueError as e:
            raise NotHermitianError("cannot build Hermitian matrix", original=e) from None

    @property
    def dim(self) -> int:
        return int(self.inner.shape[0])

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        return HermitianMatrix(inner=self.inner + other.inner)

    def scaled(self, factor: float) -> "HermitianMatrix":
        return HermitianMatrix(inner=self.inner * factor)


class EigenDecomposition(BaseModel):
    """Ascending eigenvalues with orthonormal eigenvector columns"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: RealVector
    vectors: ComplexMatrix

    @property
    def lambda_min(self) -> float:
        return float(self.values[0])

    @property
    def lambda_max(self) -> float:
        return float(self.values[-1])


class PhaseSpectrum(BaseModel):
    """Eigenphases of a unitary, sorted, each in (−π, π]"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    phases: RealVector

    @field_validator("phases")
    @classmethod
    def _check_phases(cls, p: np.ndarray) -> np.ndarray:
        if p.size < 1:
            raise ValueError("phase spectrum is empty")
        if np.any(p <= -math.pi) or np.any(p > math.pi):
            raise ValueError("phases must lie in (−π, π]")
        if np.any(np.diff(p) < 0):
            raise ValueError("phases must be sorted ascending")
        return p

    @classmethod
    def of(cls, phases: List[float] | np.ndarray) -> "PhaseSpectrum":
        return cls(phases=np.sort(np.asarray(phases, dtype=np.float64)))

    def __len__(self) -> int:
        return int(self.phases.size)
