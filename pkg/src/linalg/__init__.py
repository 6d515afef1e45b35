"""
Dense complex linear algebra for niclab

Exports:
- ComplexMatrix / HermitianMatrix / EigenDecomposition / PhaseSpectrum: carriers
- herm_eig, expi, eigphases: spectral operations
- spectral_norm, trace_norm, is_unitary: norms
- kron, embed_local: tensor structure on qudit chains
- random_unitary, random_hermitian_bounded: seeded generators
"""

from .matrices import (
    ComplexMatrix,
    DimensionMismatchError,
    EigenConvergenceError,
    EigenDecomposition,
    HermitianMatrix,
    NotHermitianError,
    NotUnitaryError,
    PhaseSpectrum,
    RealVector,
    as_matrix,
    dagger,
    matrix_from_json,
    matrix_to_json,
)
from .eigen import eigphases, expi, herm_eig, herm_eigvals, jacobi_eigh, wrap_phase
from .norms import is_unitary, spectral_norm, trace_norm
from .tensor import apply_local, embed_local, kron, site_dims
from .sampling import Seed, make_rng, random_hermitian_bounded, random_state, random_unitary

__all__ = [
    # Carriers
    'ComplexMatrix',
    'HermitianMatrix',
    'EigenDecomposition',
    'PhaseSpectrum',
    'RealVector',

    # Spectral operations
    'herm_eig',
    'herm_eigvals',
    'jacobi_eigh',
    'expi',
    'eigphases',
    'wrap_phase',

    # Norms
    'spectral_norm',
    'trace_norm',
    'is_unitary',

    # Tensor structure
    'kron',
    'embed_local',
    'apply_local',
    'site_dims',

    # Generators
    'Seed',
    'make_rng',
    'random_unitary',
    'random_hermitian_bounded',
    'random_state',

    # Codec and helpers
    'as_matrix',
    'dagger',
    'matrix_to_json',
    'matrix_from_json',

    # Exceptions
    'DimensionMismatchError',
    'EigenConvergenceError',
    'NotHermitianError',
    'NotUnitaryError',
]
