"""
Seeded randomized checks of the phase-range calculus

Exports:
- TrialConfig / SuiteReport / FailureRecord / LemmaId: suite models
- check_lemma1 … check_lemma5, check_eq5, check_report, check_gate_errors: single checks
- run_suite / default_suite / suite_passed / replay_failure: suite runs
- random_unitary / random_hermitian_bounded: the generators the checks draw from
"""

from src.linalg import random_hermitian_bounded, random_unitary
from .models import (
    FailureRecord,
    LemmaId,
    SuiteConfigError,
    SuiteReport,
    TrialConfig,
    decode_inputs,
    encode_inputs,
)
from .checks import CHECKS, Check
from .suite import (
    SuitePlan,
    check_eq5,
    check_gate_errors,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_report,
    default_suite,
    replay_failure,
    run_check,
    run_suite,
    suite_passed,
)

__all__ = [
    # Models
    'TrialConfig',
    'SuiteReport',
    'FailureRecord',
    'LemmaId',
    'SuitePlan',
    'encode_inputs',
    'decode_inputs',

    # Checks
    'Check',
    'CHECKS',
    'check_lemma1',
    'check_lemma2',
    'check_lemma3',
    'check_lemma4',
    'check_lemma5',
    'check_eq5',
    'check_report',
    'check_gate_errors',

    # Suites
    'run_check',
    'run_suite',
    'default_suite',
    'suite_passed',
    'replay_failure',

    # Generators
    'random_unitary',
    'random_hermitian_bounded',

    # Exceptions
    'SuiteConfigError',
]
