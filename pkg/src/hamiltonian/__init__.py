"""
1-D Local Hamiltonian model and preprocessing

Exports:
- LocalTerm / ChainHamiltonian / HamiltonianInstance: data model and file codec
- rescale_psd, pad, assemble, split_odd_even, normalize: preprocessing
- eig_range_oracle, ground_energy: exact diagonalization oracles
- generate_instance: seeded instances with a known promise side
"""

from .models import (
    ChainHamiltonian,
    HamiltonianInstance,
    LocalTerm,
    PreconditionError,
    ThresholdError,
)
from .transforms import (
    PaddingMode,
    assemble,
    eig_range_oracle,
    ground_energy,
    normalize,
    pad,
    rescale_psd,
    split_odd_even,
)
from .generators import InstanceKind, generate_instance

__all__ = [
    # Model
    'LocalTerm',
    'ChainHamiltonian',
    'HamiltonianInstance',

    # Preprocessing
    'PaddingMode',
    'rescale_psd',
    'pad',
    'assemble',
    'split_odd_even',
    'normalize',

    # Oracles
    'eig_range_oracle',
    'ground_energy',

    # Generators
    'InstanceKind',
    'generate_instance',

    # Exceptions
    'PreconditionError',
    'ThresholdError',
]
