"""Seeded random operators for property sweeps and instance generation."""
from typing import Sequence, Union

import numpy as np

from .matrices import HermitianMatrix, dagger

Seed = Union[int, Sequence[int], np.random.Generator]


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, (int, np.integer)):
        return np.random.default_rng(int(seed))
    return np.random.default_rng([int(s) for s in seed])


def random_unitary(dim: int, seed: Seed) -> np.ndarray:
    """
    Haar-distributed unitary: QR of a complex Gaussian matrix with the
    phases of R's diagonal moved into Q.
    """
    if dim < 1:
        raise ValueError(f"dimension must be positive, got {dim}")
    rng = make_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_hermitian_bounded(dim: int, lo: float, hi: float, seed: Seed) -> HermitianMatrix:
    """Hermitian matrix with Haar eigenbasis and eigenvalues uniform in [lo, hi]"""
    if hi < lo:
        raise ValueError(f"empty spectral window [{lo}, {hi}]")
    rng = make_rng(seed)
    basis = random_unitary(dim, rng)
    spectrum = rng.uniform(lo, hi, size=dim)
    return HermitianMatrix(inner=(basis * spectrum) @ dagger(basis))


def random_state(dim: int, seed: Seed) -> np.ndarray:
    """Unit vector drawn uniformly from the complex sphere"""
    rng = make_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
