"""
Seeded trial runner for the lemma checks.

Trial i of a config draws from ``default_rng([seed, i])``, so reports are
identical across runs and across worker counts.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.distance import Relation
from src.utils.config import Settings
from src.utils.logger import NicLogger

from .checks import CHECKS, Check
from .models import (
    FailureRecord,
    LemmaId,
    SuiteConfigError,
    SuiteReport,
    TrialConfig,
    decode_inputs,
    encode_inputs,
)

logger = NicLogger()

# share of informative pairs whose deviation ratio must reach SCALING_MIN_RATIO
SCALING_MIN_SHARE = 0.95
SCALING_MIN_RATIO = 3.0

LEMMA_DIMS = range(2, 7)
REPORT_DIMS = range(2, 9)

SuitePlan = List[Tuple[LemmaId, TrialConfig]]


class _Outcome(NamedTuple):
    rejected: bool
    failures: List[FailureRecord]
    observation: Optional[float]


def _check_for(lemma: LemmaId | str) -> Tuple[LemmaId, Check]:
    try:
        lemma = LemmaId(lemma)
    except ValueError as e:
        raise SuiteConfigError(f"unknown lemma id {lemma!r}", original=e) from None
    return lemma, CHECKS[lemma]


def _run_trial(check: Check, config: TrialConfig, index: int, settings: Optional[Settings]) -> _Outcome:
    seed = [config.seed, index]
    inputs = check.sample(np.random.default_rng(seed), config.dim)
    if inputs is None:
        return _Outcome(True, [], None)
    broken = [r for r in check.evaluate(inputs, settings) if not r.holds(config.tolerance)]
    failures = []
    if broken:
        encoded = encode_inputs(inputs)
        failures = [
            FailureRecord(trial=index, seed=seed, relation=r.name, lhs=r.lhs, rhs=r.rhs, inputs=encoded)
            for r in broken
        ]
    observation = check.observe(inputs, settings) if check.observe is not None else None
    return _Outcome(False, failures, observation)


def _scaling_failure(config: TrialConfig, ratios: Sequence[float]) -> Optional[FailureRecord]:
    if not ratios:
        return None
    share = sum(ratio >= SCALING_MIN_RATIO for ratio in ratios) / len(ratios)
    if share >= SCALING_MIN_SHARE:
        return None
    return FailureRecord(
        trial=-1, seed=[config.seed], relation="scaling_share", lhs=SCALING_MIN_SHARE, rhs=share
    )


def run_check(
    lemma: LemmaId | str,
    config: TrialConfig,
    workers: int = 1,
    settings: Optional[Settings] = None,
) -> SuiteReport:
    """
    Run ``config.trials`` seeded trials of one check.

    Raises:
        SuiteConfigError: unknown lemma id or workers < 1.
    """
    lemma, check = _check_for(lemma)
    if workers < 1:
        raise SuiteConfigError(f"workers must be positive, got {workers}")

    def trial(index: int) -> _Outcome:
        return _run_trial(check, config, index, settings)

    if workers == 1:
        outcomes = [trial(i) for i in range(config.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(trial, range(config.trials)))

    failures = [f for outcome in outcomes for f in outcome.failures]
    if lemma is LemmaId.LEMMA5:
        ratios = [o.observation for o in outcomes if o.observation is not None]
        aggregate = _scaling_failure(config, ratios)
        if aggregate is not None:
            failures.append(aggregate)

    result = SuiteReport(
        lemma=lemma,
        config=config,
        trials=config.trials,
        rejected=sum(o.rejected for o in outcomes),
        failures=failures,
    )
    summary = {
        "lemma": lemma.value,
        "dim": config.dim,
        "trials": config.trials,
        "rejected": result.rejected,
        "failures": len(failures),
    }
    if failures:
        logger.warn(action="lemma_check_failed", response=summary)
    else:
        logger.info(action="lemma_check", response=summary)
    return result


def check_lemma1(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    """α_max(U1U2) ≤ α_max(U1) + α_max(U2) and the mirrored bound on α_min"""
    return run_check(LemmaId.LEMMA1, config, workers, settings)


def check_lemma2(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    """Extreme phases of e^{iH}e^{iK} stay inside those of e^{i(H+K)}"""
    return run_check(LemmaId.LEMMA2, config, workers, settings)


def check_lemma3(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    return run_check(LemmaId.LEMMA3, config, workers, settings)


def check_lemma4(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    return run_check(LemmaId.LEMMA4, config, workers, settings)


def check_lemma5(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    """Trotter bound on α plus the aggregate t → t/2 scaling share"""
    return run_check(LemmaId.LEMMA5, config, workers, settings)


def check_eq5(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    return run_check(LemmaId.EQ5, config, workers, settings)


def check_report(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    return run_check(LemmaId.REPORT, config, workers, settings)


def check_gate_errors(config: TrialConfig, workers: int = 1, settings: Optional[Settings] = None) -> SuiteReport:
    return run_check(LemmaId.GATE_ERRORS, config, workers, settings)


def default_suite(trials: int = 1000, seed: int = 0, tolerance: float = 1e-9) -> SuitePlan:
    """Every check over its default dimensions; distance reports run up to dim 8"""
    plan: SuitePlan = []
    for offset, lemma in enumerate(LemmaId):
        dims = REPORT_DIMS if lemma is LemmaId.REPORT else LEMMA_DIMS
        for dim in dims:
            config = TrialConfig(dim=dim, trials=trials, seed=seed + 1000 * offset + dim, tolerance=tolerance)
            plan.append((lemma, config))
    return plan


def run_suite(
    plan: Iterable[Tuple[LemmaId | str, TrialConfig]],
    workers: int = 1,
    settings: Optional[Settings] = None,
) -> List[SuiteReport]:
    return [run_check(lemma, config, workers, settings) for lemma, config in plan]


def suite_passed(reports: Iterable[SuiteReport]) -> bool:
    return all(r.passed for r in reports)


def replay_failure(
    lemma: LemmaId | str,
    failure: FailureRecord,
    settings: Optional[Settings] = None,
) -> Relation:
    """
    Re-evaluate a dumped failure from its recorded inputs.

    Raises:
        SuiteConfigError: unknown lemma, aggregate record, or relation not produced.
    """
    _, check = _check_for(lemma)
    if failure.trial < 0:
        raise SuiteConfigError(f"aggregate record {failure.relation!r} has no inputs to replay")
    for relation in check.evaluate(decode_inputs(failure.inputs), settings):
        if relation.name == failure.relation:
            return relation
    raise SuiteConfigError(f"relation {failure.relation!r} not produced by {lemma}")
