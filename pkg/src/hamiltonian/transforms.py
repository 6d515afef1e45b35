"""
Preprocessing of a Local Hamiltonian instance ahead of the circuit
construction: per-term rescaling, dimension padding, assembly, odd/even
splitting and global normalization.
"""
from __future__ import annotations

import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from src.distance import eig_range
from src.linalg import HermitianMatrix, embed_local, herm_eigvals
from src.utils.config import Settings, resolve
from src.utils.errors import ResourceLimitError
from src.utils.logger import NicLogger
from .models import (
    ChainHamiltonian,
    HamiltonianInstance,
    LocalTerm,
    PreconditionError,
    ThresholdError,
)

logger = NicLogger()

# slack on the PSD / unit-norm precondition of pad
_PSD_SLACK = 1e-10


class PaddingMode(str, Enum):
    """
    How a padded term acts on basis states with exactly one particle in |d⟩.

    IDENTITY gives them eigenvalue 1, which keeps λ_min of the chain and
    makes |d⟩^n the top eigenvector. PROJECTOR_ONLY gives them 0.
    """
    IDENTITY = "identity"
    PROJECTOR_ONLY = "projector-only"


def rescale_psd(inst: HamiltonianInstance, settings: Optional[Settings] = None) -> HamiltonianInstance:
    """
    Shift every term by its own λ_min and divide all of them by the largest
    term range M, so 0 ⪯ H_i′ ⪯ I. Thresholds follow the same affine map:
    x′ = (x − Σ_i λ_min(H_i)) / M.
    """
    settings = resolve(settings)
    h = inst.hamiltonian
    spectra = [herm_eigvals(term.matrix, settings) for term in h.terms]
    lows = [float(values[0]) for values in spectra]
    ranges = [float(values[-1] - values[0]) for values in spectra]
    scale = max(ranges)
    if scale <= settings.hermitian_tol:
        scale = 1.0
    shift = float(sum(lows))

    terms = []
    for term, low in zip(h.terms, lows):
        local = (term.matrix.inner - low * np.eye(term.matrix.dim)) / scale
        terms.append(LocalTerm(site=term.site, matrix=HermitianMatrix(inner=local)))

    a, b = (inst.a - shift) / scale, (inst.b - shift) / scale
    logger.info(
        action="rescale_psd",
        response={"r": h.r, "shift": shift, "scale": scale, "a": a, "b": b}
    )
    return HamiltonianInstance(
        hamiltonian=h.with_terms(terms),
        a=a,
        b=b,
        metadata={**inst.metadata, "shift": shift, "scale": scale},
    )


def _pad_term(matrix: np.ndarray, d: int, mode: PaddingMode) -> np.ndarray:
    padded_d = d + 1
    kept = [x * padded_d + y for x in range(d) for y in range(d)]
    out = np.zeros((padded_d ** 2, padded_d ** 2), dtype=np.complex128)
    out[np.ix_(kept, kept)] = matrix
    if mode is PaddingMode.IDENTITY:
        for x in range(padded_d):
            for y in range(padded_d):
                if (x == d) != (y == d):
                    out[x * padded_d + y, x * padded_d + y] = 1.0
    out[d * padded_d + d, d * padded_d + d] = 1.0
    return out


def pad(
    h: ChainHamiltonian,
    mode: PaddingMode = PaddingMode.IDENTITY,
    settings: Optional[Settings] = None,
) -> ChainHamiltonian:
    """
    Add the state |d⟩ to every particle and |d⟩⟨d|⊗|d⟩⟨d| to every term.

    Raises:
        PreconditionError: a term is not PSD or has norm above 1.
    """
    settings = resolve(settings)
    terms = []
    for term in h.terms:
        values = herm_eigvals(term.matrix, settings)
        if values[0] < -_PSD_SLACK or values[-1] > 1 + _PSD_SLACK:
            logger.error(
                action="pad_precondition",
                response={"site": term.site, "min": float(values[0]), "max": float(values[-1])}
            )
            raise PreconditionError(
                f"term at site {term.site} needs spectrum in [0, 1], "
                f"got [{values[0]:.3e}, {values[-1]:.3e}]"
            )
        padded = _pad_term(term.matrix.inner, h.d, mode)
        terms.append(LocalTerm(site=term.site, matrix=HermitianMatrix(inner=padded)))
    return h.with_terms(terms, d=h.d + 1)


def assemble(h: ChainHamiltonian, settings: Optional[Settings] = None) -> HermitianMatrix:
    """Σ_i embed(H_i) as a dense d^n × d^n matrix"""
    settings = resolve(settings)
    if h.dim > settings.max_dim:
        logger.error(action="assemble_limit", response={"dim": h.dim, "max_dim": settings.max_dim})
        raise ResourceLimitError(f"chain dimension {h.dim} exceeds limit {settings.max_dim}")
    total = np.zeros((h.dim, h.dim), dtype=np.complex128)
    for term in h.terms:
        total += embed_local(term.matrix.inner, term.site, h.n, h.d, span=2)
    return HermitianMatrix(inner=total)


def split_odd_even(h: ChainHamiltonian) -> Tuple[ChainHamiltonian, ChainHamiltonian]:
    """
    Terms on even sites (particle pairs (1,2), (3,4), ... counting from one)
    form the odd part; the remaining terms form the even part. Supports
    within each part are disjoint.
    """
    odd = [term for term in h.terms if term.site % 2 == 0]
    even = [term for term in h.terms if term.site % 2 == 1]
    return h.with_terms(odd), h.with_terms(even)


def normalize(
    h: ChainHamiltonian, a_thr: float, b_thr: float
) -> Tuple[ChainHamiltonian, float, float]:
    """
    Scale every term by π/(2r).

    Returns:
        (normalized chain, l, s) with l = (r − a)π/(2r), s = (r − b)π/(2r)

    Raises:
        ThresholdError: unless 0 ≤ a < b ≤ r.
    """
    r = h.r
    if r < 1:
        raise ThresholdError("cannot normalize a chain without terms")
    if not 0 <= a_thr < b_thr <= r:
        logger.error(action="normalize_thresholds", response={"a": a_thr, "b": b_thr, "r": r})
        raise ThresholdError(f"thresholds need 0 ≤ a < b ≤ r={r}, got a={a_thr}, b={b_thr}")
    factor = math.pi / (2 * r)
    terms = [
        LocalTerm(site=term.site, matrix=term.matrix.scaled(factor))
        for term in h.terms
    ]
    l = (r - a_thr) * factor
    s = (r - b_thr) * factor
    return h.with_terms(terms), l, s


def eig_range_oracle(h: ChainHamiltonian, settings: Optional[Settings] = None) -> float:
    """λ(H) of the assembled chain by exact diagonalization"""
    return eig_range(assemble(h, settings), settings)


def ground_energy(h: ChainHamiltonian, settings: Optional[Settings] = None) -> float:
    """λ_min of the assembled chain by exact diagonalization"""
    return float(herm_eigvals(assemble(h, settings), settings)[0])
