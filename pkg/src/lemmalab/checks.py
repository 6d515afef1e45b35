"""
Randomized checks of the phase-range lemmas.

Every check is split in two: ``sample`` draws the inputs of one trial from
a seeded generator (None rejects the draw), ``evaluate`` turns those inputs
into one-sided relations ``lhs ≤ rhs``. Evaluation only reads its inputs,
so a dumped failure replays exactly.
"""
from __future__ import annotations

import math
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from src.distance import (
    DistanceReport,
    Relation,
    alpha_extremes,
    measure,
    phase_range,
    phase_range_pair,
)
from src.linalg import (
    HermitianMatrix,
    dagger,
    eigphases,
    expi,
    kron,
    random_hermitian_bounded,
    random_unitary,
    spectral_norm,
)
from src.reduction import ANALYTIC_C1
from src.utils.config import Settings

from .models import LemmaId, TrialInputs

# keeps H + K strictly inside (−π, π)
SPECTRAL_MARGIN = 1e-3
# pairs whose deviation at the shorter probe time is below this carry no scaling information
SCALING_FLOOR = 1e-12
# the scaling probe runs at t/SCALING_SHRINK and half of it
SCALING_SHRINK = 4.0


class Check(NamedTuple):
    sample: Callable[[np.random.Generator, int], Optional[TrialInputs]]
    evaluate: Callable[[TrialInputs, Optional[Settings]], List[Relation]]
    observe: Optional[Callable[[TrialInputs, Optional[Settings]], Optional[float]]] = None


# ========================
# Samplers
# ========================
def _bounded(dim: int, lo: float, hi: float, rng: np.random.Generator) -> np.ndarray:
    return random_hermitian_bounded(dim, lo, hi, rng).inner


def _centered_window(rng: np.random.Generator) -> tuple:
    half = math.pi / 2 - SPECTRAL_MARGIN / 2
    return -float(rng.uniform(0.0, half)), float(rng.uniform(0.0, half))


def _mixed_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar half the time, otherwise e^{iH} with ‖H‖ below a random width"""
    if rng.random() < 0.5:
        return random_unitary(dim, rng)
    width = float(rng.uniform(0.0, math.pi / 2))
    return expi(HermitianMatrix(inner=_bounded(dim, -width, width, rng)), 1.0)


def _sample_lemma1(rng: np.random.Generator, dim: int) -> Optional[TrialInputs]:
    u1 = expi(HermitianMatrix(inner=_bounded(dim, *_centered_window(rng), rng)), 1.0)
    u2 = expi(HermitianMatrix(inner=_bounded(dim, *_centered_window(rng), rng)), 1.0)
    min1, max1 = alpha_extremes(eigphases(u1))
    min2, max2 = alpha_extremes(eigphases(u2))
    if max1 + max2 >= math.pi or min1 + min2 <= -math.pi:
        return None
    return {"U1": u1, "U2": u2}


def _sample_lemma2(rng: np.random.Generator, dim: int) -> Optional[TrialInputs]:
    h = _bounded(dim, *_centered_window(rng), rng)
    k = _bounded(dim, *_centered_window(rng), rng)
    values = np.linalg.eigvalsh(h + k)
    if values[0] <= -math.pi + SPECTRAL_MARGIN or values[-1] >= math.pi - SPECTRAL_MARGIN:
        return None
    return {"H": h, "K": k}


def _sample_lemma3(rng: np.random.Generator, dim: int) -> TrialInputs:
    return {name: _mixed_unitary(dim, rng) for name in ("U1", "U2", "U3")}


def _sample_lemma4(rng: np.random.Generator, dim: int) -> TrialInputs:
    u = _mixed_unitary(dim, rng)
    if rng.random() < 0.5:
        scale = 10.0 ** float(rng.uniform(-6.0, 0.0))
        v = u @ expi(HermitianMatrix(inner=_bounded(dim, -scale, scale, rng)), 1.0)
    else:
        v = _mixed_unitary(dim, rng)
    return {"U": u, "V": v}


def _sample_lemma5(rng: np.random.Generator, dim: int) -> TrialInputs:
    h = _bounded(dim, 0.0, math.pi / 2, rng)
    k = _bounded(dim, 0.0, math.pi / 2, rng)
    t = float(rng.uniform(0.0, 1.0))
    return {"H": h, "K": k, "t": t}


def _sample_phase_unitary(rng: np.random.Generator, dim: int) -> TrialInputs:
    """Haar, forced antipodal pair, or near identity in equal shares"""
    kind = int(rng.integers(3))
    if kind == 0:
        return {"U": random_unitary(dim, rng)}
    if kind == 1:
        base = float(rng.uniform(-math.pi, math.pi))
        phases = rng.uniform(-math.pi, math.pi, size=dim)
        phases[0], phases[1] = base, base + math.pi
        basis = random_unitary(dim, rng)
        return {"U": (basis * np.exp(1j * phases)) @ dagger(basis)}
    width = float(rng.uniform(0.0, math.pi / 2))
    return {"U": expi(HermitianMatrix(inner=_bounded(dim, -width, width, rng)), 1.0)}


def _sample_gate_errors(rng: np.random.Generator, dim: int) -> TrialInputs:
    u1, u2 = random_unitary(dim, rng), random_unitary(dim, rng)
    epsilon = float(rng.uniform(0.0, 1.0))
    v1 = u1 @ expi(HermitianMatrix(inner=_bounded(dim, -epsilon, epsilon, rng)), 1.0)
    v2 = u2 @ expi(HermitianMatrix(inner=_bounded(dim, -epsilon, epsilon, rng)), 1.0)
    return {"U1": u1, "U2": u2, "V1": v1, "V2": v2}


# ========================
# Evaluators
# ========================
def _evaluate_lemma1(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    u1, u2 = inputs["U1"], inputs["U2"]
    min1, max1 = alpha_extremes(eigphases(u1, settings))
    min2, max2 = alpha_extremes(eigphases(u2, settings))
    min12, max12 = alpha_extremes(eigphases(u1 @ u2, settings))
    return [
        Relation("alpha_max_subadditive", max12, max1 + max2),
        Relation("alpha_min_superadditive", min1 + min2, min12),
    ]


def _evaluate_lemma2(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    h, k = HermitianMatrix(inner=inputs["H"]), HermitianMatrix(inner=inputs["K"])
    split_min, split_max = alpha_extremes(eigphases(expi(h, 1.0, settings) @ expi(k, 1.0, settings), settings))
    joint_min, joint_max = alpha_extremes(eigphases(expi(h + k, 1.0, settings), settings))
    return [
        Relation("split_alpha_max", split_max, joint_max),
        Relation("split_alpha_min", joint_min, split_min),
    ]


def _evaluate_lemma3(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    u1, u2, u3 = inputs["U1"], inputs["U2"], inputs["U3"]
    a1, a2 = phase_range(u1, settings), phase_range(u2, settings)
    return [
        Relation("product", phase_range(u1 @ u2, settings), a1 + a2),
        Relation("pair", phase_range_pair(u1, u2, settings), a1 + a2),
        Relation(
            "metric",
            phase_range_pair(u1, u3, settings),
            phase_range_pair(u1, u2, settings) + phase_range_pair(u2, u3, settings),
        ),
    ]


def _evaluate_lemma4(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    u, v = inputs["U"], inputs["V"]
    return [
        Relation(
            "lipschitz",
            abs(phase_range(u, settings) - phase_range(v, settings)),
            math.pi * spectral_norm(u - v, settings),
        )
    ]


def _alpha_deviation(h: HermitianMatrix, k: HermitianMatrix, t: float, settings: Optional[Settings]) -> float:
    split = expi(h, t, settings) @ expi(k, t, settings)
    return abs(phase_range(split, settings) - phase_range(expi(h + k, t, settings), settings))


def _evaluate_lemma5(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    h, k, t = HermitianMatrix(inner=inputs["H"]), HermitianMatrix(inner=inputs["K"]), inputs["t"]
    return [Relation("trotter_alpha", _alpha_deviation(h, k, t, settings), math.pi * ANALYTIC_C1 * t ** 2)]


def _observe_lemma5(inputs: TrialInputs, settings: Optional[Settings]) -> Optional[float]:
    """dev(τ)/dev(τ/2) at τ = t/4, or None when dev(τ/2) is numerically zero"""
    h, k = HermitianMatrix(inner=inputs["H"]), HermitianMatrix(inner=inputs["K"])
    tau = inputs["t"] / SCALING_SHRINK
    half = _alpha_deviation(h, k, tau / 2, settings)
    if half < SCALING_FLOOR:
        return None
    return _alpha_deviation(h, k, tau, settings) / half


def _report_relations(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    # model_construct skips the validator so broken relations surface as records
    return DistanceReport.model_construct(**measure(inputs["U"], settings)).relations()


def _evaluate_eq5(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    return [r for r in _report_relations(inputs, settings) if r.name.startswith("min_phase")]


def _evaluate_gate_errors(inputs: TrialInputs, settings: Optional[Settings]) -> List[Relation]:
    u1, u2, v1, v2 = inputs["U1"], inputs["U2"], inputs["V1"], inputs["V2"]
    budget = spectral_norm(v1 - u1, settings) + spectral_norm(v2 - u2, settings)
    return [
        Relation("product_error", spectral_norm(v1 @ v2 - u1 @ u2, settings), budget),
        Relation("tensor_error", spectral_norm(kron(v1, v2) - kron(u1, u2), settings), budget),
    ]


CHECKS: Dict[LemmaId, Check] = {
    LemmaId.LEMMA1: Check(_sample_lemma1, _evaluate_lemma1),
    LemmaId.LEMMA2: Check(_sample_lemma2, _evaluate_lemma2),
    LemmaId.LEMMA3: Check(_sample_lemma3, _evaluate_lemma3),
    LemmaId.LEMMA4: Check(_sample_lemma4, _evaluate_lemma4),
    LemmaId.LEMMA5: Check(_sample_lemma5, _evaluate_lemma5, _observe_lemma5),
    LemmaId.EQ5: Check(_sample_phase_unitary, _evaluate_eq5),
    LemmaId.REPORT: Check(_sample_phase_unitary, _report_relations),
    LemmaId.GATE_ERRORS: Check(_sample_gate_errors, _evaluate_gate_errors),
}
