"""
Seeded Local Hamiltonian instances with a known promise side.

yes-biased chains are frustration-free: every term annihilates a common
product state up to its own shift, so λ_min(H) = Σ_i λ_min(H_i) and the
thresholds sit above it. no-biased chains give each term a random entangled
kernel; neighbouring kernels cannot be satisfied together, the frustration
energy E = λ_min(H) − Σ_i λ_min(H_i) is positive and measured exactly, and
both thresholds sit below λ_min(H).
"""
from __future__ import annotations

from enum import Enum
from typing import Optional

import numpy as np

from src.linalg import (
    HermitianMatrix,
    Seed,
    herm_eigvals,
    make_rng,
    random_hermitian_bounded,
    random_state,
)
from src.utils.config import Settings, resolve
from src.utils.errors import NicLabError
from src.utils.logger import NicLogger
from .models import ChainHamiltonian, HamiltonianInstance, LocalTerm, PreconditionError
from .transforms import ground_energy

logger = NicLogger()

_MIN_FRUSTRATION = 1e-3
_MAX_ATTEMPTS = 8


class InstanceKind(str, Enum):
    RANDOM = "random"
    YES_BIASED = "yes-biased"
    NO_BIASED = "no-biased"


def _complement(state: np.ndarray) -> np.ndarray:
    """Projector onto the orthogonal complement of a unit vector"""
    return np.eye(state.size) - np.outer(state, state.conj())


def _kernel_term(kernel: np.ndarray, shift: float, rng: np.random.Generator) -> HermitianMatrix:
    """shift·I + P⊥ M P⊥ with M PSD, so λ_min = shift on the kernel state"""
    dim = kernel.size
    body = random_hermitian_bounded(dim, 0.5, 1.0, rng).inner
    projector = _complement(kernel)
    return HermitianMatrix(inner=shift * np.eye(dim) + projector @ body @ projector)


def _term_lows_and_scale(terms, settings: Settings):
    spectra = [herm_eigvals(term.matrix, settings) for term in terms]
    shift = float(sum(values[0] for values in spectra))
    scale = max(float(values[-1] - values[0]) for values in spectra)
    return shift, scale


def _random_chain(n: int, d: int, rng: np.random.Generator) -> HamiltonianInstance:
    terms = [
        LocalTerm(site=i, matrix=random_hermitian_bounded(d * d, 0.0, 1.0, rng))
        for i in range(n - 1)
    ]
    r = len(terms)
    return HamiltonianInstance(
        hamiltonian=ChainHamiltonian(n=n, d=d, terms=terms), a=0.25 * r, b=0.5 * r,
    )


def _yes_chain(n: int, d: int, rng: np.random.Generator, settings: Settings) -> HamiltonianInstance:
    site_state = random_state(d, rng)
    pair_state = np.kron(site_state, site_state)
    terms = [
        LocalTerm(site=i, matrix=_kernel_term(pair_state, rng.uniform(-0.5, 0.5), rng))
        for i in range(n - 1)
    ]
    shift, scale = _term_lows_and_scale(terms, settings)
    return HamiltonianInstance(
        hamiltonian=ChainHamiltonian(n=n, d=d, terms=terms),
        a=shift + 0.1 * scale,
        b=shift + 0.5 * scale,
        metadata={"ground_energy": shift},
    )


def _no_chain(n: int, d: int, seed: Seed, settings: Settings) -> HamiltonianInstance:
    base = make_rng(seed).integers(0, 2**32)
    for attempt in range(_MAX_ATTEMPTS):
        rng = np.random.default_rng([int(base), attempt])
        terms = [
            LocalTerm(
                site=i,
                matrix=_kernel_term(random_state(d * d, rng), rng.uniform(-0.5, 0.5), rng),
            )
            for i in range(n - 1)
        ]
        chain = ChainHamiltonian(n=n, d=d, terms=terms)
        shift, _ = _term_lows_and_scale(terms, settings)
        energy = ground_energy(chain, settings)
        frustration = energy - shift
        if frustration >= _MIN_FRUSTRATION:
            return HamiltonianInstance(
                hamiltonian=chain,
                a=shift + 0.3 * frustration,
                b=shift + 0.7 * frustration,
                metadata={"ground_energy": energy, "frustration": frustration},
            )
        logger.warn(
            action="gen_retry",
            response={"attempt": attempt, "frustration": frustration}
        )
    raise NicLabError(f"no frustrated chain found in {_MAX_ATTEMPTS} attempts")


def generate_instance(
    kind: InstanceKind | str,
    n: int,
    d: int,
    seed: int,
    settings: Optional[Settings] = None,
) -> HamiltonianInstance:
    """
    Build an instance with a term on every adjacent pair.

    Raises:
        PreconditionError: d < 2, n < 2, or n < 3 for no-biased chains.
    """
    settings = resolve(settings)
    kind = InstanceKind(kind)
    if d < 2 or n < 2:
        raise PreconditionError(f"generators need n ≥ 2 and d ≥ 2, got n={n}, d={d}")
    if kind is InstanceKind.NO_BIASED and n < 3:
        raise PreconditionError("no-biased chains need n ≥ 3 to be frustrated")

    rng = make_rng(seed)
    if kind is InstanceKind.RANDOM:
        inst = _random_chain(n, d, rng)
    elif kind is InstanceKind.YES_BIASED:
        inst = _yes_chain(n, d, rng, settings)
    else:
        inst = _no_chain(n, d, rng, settings)

    inst = inst.model_copy(update={"metadata": {**inst.metadata, "kind": kind.value, "seed": seed}})
    logger.info(
        action="generate_instance",
        response={"kind": kind.value, "n": n, "d": d, "seed": seed, "a": inst.a, "b": inst.b}
    )
    return inst
