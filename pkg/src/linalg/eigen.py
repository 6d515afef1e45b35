"""
Hermitian eigendecomposition and everything built directly on it.

Two backends share one post-condition check: LAPACK through
``numpy.linalg.eigh`` (default) and a cyclic complex Jacobi solver selected
with ``NICLAB_EIG_BACKEND=jacobi``.
"""
from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from src.utils.config import Settings, resolve
from src.utils.errors import ResourceLimitError
from src.utils.logger import NicLogger
from .matrices import (
    EigenConvergenceError,
    EigenDecomposition,
    HermitianMatrix,
    NotUnitaryError,
    PhaseSpectrum,
    as_matrix,
    dagger,
)

logger = NicLogger()

# phases this close to −π are rounding noise of eigenvalue −1
_SEAM_SNAP = 1e-12


def _check_size(dim: int, settings: Settings) -> None:
    if dim > settings.max_dim:
        logger.error(
            action="size_limit",
            response={"dim": dim, "max_dim": settings.max_dim}
        )
        raise ResourceLimitError(f"dimension {dim} exceeds limit {settings.max_dim}")


def jacobi_eigh(
    a: np.ndarray,
    threshold: float = 1e-12,
    max_sweeps: int = 100,
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Cyclic Jacobi rotations for a complex Hermitian matrix.

    Each (p, q) step first removes the phase of ``a[p, q]`` with a diagonal
    unitary, then applies the real symmetric rotation that zeroes it.
    Iterates until the off-diagonal Frobenius norm is at most
    ``threshold * ‖a‖_F``.

    Returns:
        (eigenvalues unsorted, eigenvector columns, sweeps used)

    Raises:
        EigenConvergenceError: off-diagonal mass still above threshold after
            ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    limit = threshold * max(float(np.linalg.norm(a)), np.finfo(float).tiny)

    def off_norm() -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while off_norm() > limit:
        if sweeps >= max_sweeps:
            raise EigenConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps", residual=off_norm()
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                magnitude = abs(apq)
                if magnitude == 0.0:
                    continue
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * math.atan2(2.0 * magnitude, aqq - app)
                c, s = math.cos(theta), math.sin(theta)
                e = apq.conjugate() / magnitude
                # columns p, q of D·G with D = diag(1, e) and G = [[c, s], [-s, c]]
                w = np.array([[c, s], [-s * e, c * e]], dtype=np.complex128)
                pair = [p, q]
                a[:, pair] = a[:, pair] @ w
                a[pair, :] = dagger(w) @ a[pair, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p], a[q, q] = a[p, p].real, a[q, q].real
                v[:, pair] = v[:, pair] @ w
        sweeps += 1
    return np.diag(a).real.copy(), v, sweeps


def herm_eig(h: HermitianMatrix, settings: Optional[Settings] = None) -> EigenDecomposition:
    """Eigenvalues ascending with orthonormal eigenvectors, residual-checked"""
    settings = resolve(settings)
    h = HermitianMatrix.of(h)
    a = h.inner
    _check_size(h.dim, settings)

    if settings.eig_backend == "jacobi":
        values, vectors, _ = jacobi_eigh(
            a, settings.jacobi_threshold, settings.jacobi_max_sweeps
        )
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], vectors[:, order]
    else:
        try:
            values, vectors = np.linalg.eigh(a)
        except np.linalg.LinAlgError as e:
            logger.error(action="eigh_failure", response=str(e))
            raise EigenConvergenceError("LAPACK eigh failed", residual=math.inf, original=e)

    # Frobenius norms bound the spectral ones, so both checks are conservative
    scale = max(1.0, float(np.max(np.abs(values))))
    residual = float(np.linalg.norm((vectors * values) @ dagger(vectors) - a))
    if residual > settings.reconstruction_tol * scale:
        logger.error(action="eig_reconstruction", response={"residual": residual})
        raise EigenConvergenceError("eigendecomposition does not reconstruct input", residual)
    drift = float(np.linalg.norm(dagger(vectors) @ vectors - np.eye(h.dim)))
    if drift > settings.orthonormality_tol:
        logger.error(action="eig_orthonormality", response={"residual": drift})
        raise EigenConvergenceError("eigenvectors are not orthonormal", drift)
    return EigenDecomposition(values=values, vectors=vectors)


def herm_eigvals(h: HermitianMatrix, settings: Optional[Settings] = None) -> np.ndarray:
    """Ascending eigenvalues only"""
    settings = resolve(settings)
    h = HermitianMatrix.of(h)
    if settings.eig_backend == "jacobi":
        return np.asarray(herm_eig(h, settings).values)
    _check_size(h.dim, settings)
    return np.linalg.eigvalsh(h.inner)


def expi(h: HermitianMatrix, t: float, settings: Optional[Settings] = None) -> np.ndarray:
    """``e^{iHt}`` as ``V diag(e^{iλt}) V†``"""
    eig = herm_eig(h, settings)
    vectors = eig.vectors
    return (vectors * np.exp(1j * eig.values * t)) @ dagger(vectors)


def wrap_phase(theta: np.ndarray | float) -> np.ndarray:
    """Map angles into (−π, π]"""
    wrapped = np.mod(np.asarray(theta, dtype=np.float64) + math.pi, 2 * math.pi) - math.pi
    return np.where(wrapped <= -math.pi + _SEAM_SNAP, math.pi, wrapped)


def eigphases(u: np.ndarray, settings: Optional[Settings] = None) -> PhaseSpectrum:
    """
    Eigenphases of a unitary in (−π, π], ascending, with multiplicity.

    Uses normality instead of a general eigensolver: diagonalize the
    Hermitian part ``(U + U†)/2``, then inside each cluster of (nearly) equal
    eigenvalues diagonalize the restriction of ``(U − U†)/2i``. Each phase is
    the argument of the Rayleigh quotient of ``U`` on the joint eigenvector.
    """
    settings = resolve(settings)
    u = as_matrix(u)
    defect = float(np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0])))
    if defect > settings.unitary_tol:
        logger.error(action="eigphases_not_unitary", response={"defect": defect})
        raise NotUnitaryError(f"‖U†U − I‖ = {defect:.3e} exceeds {settings.unitary_tol:.1e}")

    ud = dagger(u)
    hermitian_part = HermitianMatrix(inner=(u + ud) / 2)
    skew_part = (u - ud) / 2j
    eig = herm_eig(hermitian_part, settings)
    values, vectors = eig.values, eig.vectors

    joint = np.empty_like(vectors)
    start = 0
    n = values.size
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= settings.phase_cluster_tol:
            stop += 1
        block = vectors[:, start:stop]
        if stop - start == 1:
            joint[:, start] = block[:, 0]
        else:
            restricted = HermitianMatrix(inner=dagger(block) @ skew_part @ block)
            inner = herm_eig(restricted, settings).vectors
            joint[:, start:stop] = block @ inner
        start = stop

    rayleigh = np.sum(np.conj(joint) * (u @ joint), axis=0)
    phases = np.sort(wrap_phase(np.arctan2(rayleigh.imag, rayleigh.real)))

    sign, _ = np.linalg.slogdet(u)
    mismatch = abs(float(wrap_phase(np.angle(sign) - np.sum(phases))))
    if mismatch > settings.det_consistency_tol:
        logger.error(action="eigphases_det_check", response={"mismatch": mismatch})
        raise EigenConvergenceError("eigenphases inconsistent with det(U)", mismatch)
    return PhaseSpectrum(phases=phases)
