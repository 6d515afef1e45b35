import math
from typing import Optional

import numpy as np

from src.utils.config import Settings
from .eigen import herm_eigvals
from .matrices import HermitianMatrix, as_matrix, dagger


def _gram_spectrum(a: np.ndarray, settings: Optional[Settings]) -> np.ndarray:
    """Eigenvalues of A†A clipped at zero (squared singular values)"""
    a = as_matrix(a)
    gram = HermitianMatrix(inner=dagger(a) @ a)
    return np.clip(herm_eigvals(gram, settings), 0.0, None)


def spectral_norm(a: np.ndarray, settings: Optional[Settings] = None) -> float:
    """Largest singular value, ``sqrt(λ_max(A†A))``"""
    return math.sqrt(float(_gram_spectrum(a, settings)[-1]))


def trace_norm(a: np.ndarray, settings: Optional[Settings] = None) -> float:
    """Sum of singular values, ``tr sqrt(A†A)``"""
    return float(np.sum(np.sqrt(_gram_spectrum(a, settings))))


def is_unitary(a: np.ndarray, tol: float, settings: Optional[Settings] = None) -> bool:
    a = as_matrix(a)
    defect = spectral_norm(dagger(a) @ a - np.eye(a.shape[0]), settings)
    return defect <= tol
