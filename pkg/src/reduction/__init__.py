"""
Local Hamiltonian → Non-Identity Check reduction

Exports:
- Gate / LayeredCircuit / simulate / equivalence_report: circuits
- TrotterConstant / trotter_constant / trotter_deviation: splitting constant
- NicInstance / reduce / build_trotter_circuit: the reduction
- decide_nic / nic_decision / classify_nic / NicDecision / NicMetric: brute-force decider
"""

from .circuits import Gate, LayeredCircuit, OverlapError, equivalence_report, simulate
from .trotter import (
    ANALYTIC_C1,
    ConstantMode,
    TrotterConstant,
    trotter_constant,
    trotter_deviation,
)
from .pipeline import (
    NicDecision,
    NicInstance,
    NicMetric,
    build_trotter_circuit,
    classify_nic,
    decide_nic,
    nic_decision,
    nic_value,
    reduce,
)

__all__ = [
    # Circuits
    'Gate',
    'LayeredCircuit',
    'simulate',
    'equivalence_report',

    # Trotter constant
    'ANALYTIC_C1',
    'ConstantMode',
    'TrotterConstant',
    'trotter_constant',
    'trotter_deviation',

    # Reduction
    'NicInstance',
    'build_trotter_circuit',
    'reduce',
    'NicDecision',
    'NicMetric',
    'nic_value',
    'nic_decision',
    'classify_nic',
    'decide_nic',

    # Exceptions
    'OverlapError',
]
