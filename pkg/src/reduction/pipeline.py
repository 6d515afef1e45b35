"""
Local Hamiltonian instance → Non-Identity Check instance.

rescale_psd → pad → normalize → split_odd_even → two-layer circuit
U_H = e^{iH_even t}·e^{iH_odd t} with t = (l − s)/(2c) and thresholds
a_nic = s·t, b_nic = l·t − c·t².
"""
from __future__ import annotations

import json
import math
from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.distance import diamond_to_identity, min_phase_dist, phase_range
from src.hamiltonian import (
    ChainHamiltonian,
    HamiltonianInstance,
    PaddingMode,
    PreconditionError,
    ThresholdError,
    normalize,
    pad,
    rescale_psd,
    split_odd_even,
)
from src.linalg import expi
from src.utils.config import Settings, resolve
from src.utils.errors import InputError, NicLabError
from src.utils.logger import NicLogger
from .circuits import Gate, LayeredCircuit, OverlapError, simulate
from .trotter import TrotterConstant, trotter_constant

logger = NicLogger()

_GAP_TOL = 1e-12


class NicDecision(str, Enum):
    YES = "Yes"
    NO = "No"
    PROMISE_VIOLATED = "PromiseViolated"


class NicMetric(str, Enum):
    """Closeness-to-identity measure the thresholds are read in"""
    PHASE_RANGE = "phase_range"
    DIAMOND = "diamond"
    MIN_PHASE_DIST = "min_phase_dist"


class NicInstance(BaseModel):
    """Is α(C) ≥ b_nic, or ≤ a_nic?"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    circuit: LayeredCircuit
    a_nic: float
    b_nic: float
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_thresholds(self) -> "NicInstance":
        if not self.b_nic > self.a_nic:
            raise ValueError(f"thresholds need b_nic > a_nic, got {self.a_nic}, {self.b_nic}")
        return self

    def to_document(self) -> Dict[str, Any]:
        return {
            **self.circuit.to_document(),
            "a_nic": self.a_nic,
            "b_nic": self.b_nic,
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "NicInstance":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError("NIC instance is not valid JSON", original=e) from None
        if not isinstance(doc, dict):
            raise InputError("NIC instance must be a JSON object")
        circuit = LayeredCircuit.from_document(doc)
        try:
            return cls(
                circuit=circuit,
                a_nic=doc["a_nic"],
                b_nic=doc["b_nic"],
                metadata=doc.get("metadata", {}),
            )
        except (KeyError, ValueError) as e:
            logger.error(action="nic_decode", response=str(e))
            raise InputError("malformed NIC instance", original=e) from None


def _check_disjoint(part: ChainHamiltonian, name: str) -> None:
    sites = sorted(term.site for term in part.terms)
    for left, right in zip(sites, sites[1:]):
        if right - left < 2:
            logger.error(action="trotter_overlap", response={"part": name, "sites": [left, right]})
            raise OverlapError(f"{name} part has overlapping terms at sites {left} and {right}")


def build_trotter_circuit(
    h_odd: ChainHamiltonian,
    h_even: ChainHamiltonian,
    t: float,
    settings: Optional[Settings] = None,
) -> LayeredCircuit:
    """
    Layer 0 holds e^{iH_i t} for the odd-part terms, layer 1 for the even
    part; simulate gives e^{iH_even t}·e^{iH_odd t}.

    Raises:
        OverlapError: two terms of one part share a site.
    """
    if (h_odd.n, h_odd.d) != (h_even.n, h_even.d):
        raise PreconditionError("odd and even parts act on different chains")
    if t < 0:
        raise PreconditionError(f"evolution time must be non-negative, got {t}")
    _check_disjoint(h_odd, "odd")
    _check_disjoint(h_even, "even")

    layers = tuple(
        tuple(
            Gate(first_site=term.site, span=2, unitary=expi(term.matrix, t, settings))
            for term in part.terms
        )
        for part in (h_odd, h_even)
    )
    return LayeredCircuit(n=h_odd.n, d=h_odd.d, layers=layers)


def reduce(
    inst: HamiltonianInstance,
    tc: Optional[TrotterConstant] = None,
    settings: Optional[Settings] = None,
) -> NicInstance:
    """
    Map a Local Hamiltonian instance to a constant-depth NIC instance.

    Rescaled thresholds outside [0, r] are clamped to it; λ_min of the
    rescaled chain lies in [0, r], so the clamp keeps every promise side.

    Raises:
        ThresholdError: empty gap after clamping, or t ≥ 1.
    """
    settings = resolve(settings)
    tc = tc or trotter_constant()
    logger.info(
        action="reduce_start",
        response={"n": inst.hamiltonian.n, "d": inst.hamiltonian.d, "r": inst.hamiltonian.r,
                  "c_mode": tc.mode.value}
    )

    rescaled = rescale_psd(inst, settings)
    r = rescaled.hamiltonian.r
    a, b = rescaled.a, rescaled.b
    clamped = {}
    if a < 0:
        clamped["a"] = a
        a = 0.0
    if b > r:
        clamped["b"] = b
        b = float(r)
    if clamped:
        logger.warn(action="reduce_clamp", response={"from": clamped, "a": a, "b": b})
    if not b > a:
        logger.error(action="reduce_thresholds", response={"a": a, "b": b, "r": r})
        raise ThresholdError(f"no promise gap left after clamping: a={a}, b={b}, r={r}")

    padded = pad(rescaled.hamiltonian, PaddingMode.IDENTITY, settings)
    normalized, l, s = normalize(padded, a, b)
    odd, even = split_odd_even(normalized)

    c = tc.c
    t = (l - s) / (2 * c)
    if not t < 1:
        raise ThresholdError(f"evolution time t={t} must be below 1")
    circuit = build_trotter_circuit(odd, even, t, settings)

    a_nic = s * t
    b_nic = l * t - c * t ** 2
    gap = (l - s) ** 2 / (4 * c)
    if abs((b_nic - a_nic) - gap) > _GAP_TOL:
        raise NicLabError(f"threshold gap {b_nic - a_nic} differs from (l−s)²/4c = {gap}")

    metadata = {
        "l": l,
        "s": s,
        "t": t,
        "c": c,
        "c1": tc.c1,
        "c_mode": tc.mode.value,
        "r": r,
        "gap": gap,
        "shift": rescaled.metadata["shift"],
        "scale": rescaled.metadata["scale"],
        "a_rescaled": a,
        "b_rescaled": b,
        "clamped": clamped,
        "source": inst.metadata,
    }
    logger.info(
        action="reduce_done",
        response={"l": l, "s": s, "t": t, "c": c, "gap": gap, "depth": circuit.depth}
    )
    return NicInstance(circuit=circuit, a_nic=a_nic, b_nic=b_nic, metadata=metadata)


def nic_value(
    inst: NicInstance,
    metric: NicMetric | str = NicMetric.PHASE_RANGE,
    settings: Optional[Settings] = None,
) -> tuple:
    """
    (measured value, low threshold, high threshold) in the chosen metric.

    Thresholds are capped at π, the largest phase range, and then move
    through the maps α ↦ 2 sin(α/2) for the diamond distance and
    α ↦ 2 sin(α/4) for the min-phase distance. Both maps are monotone on
    [0, π], so every metric orders instances the same way.
    """
    metric = NicMetric(metric)
    u = simulate(inst.circuit, settings)
    lo, hi = min(inst.a_nic, math.pi), min(inst.b_nic, math.pi)
    if metric is NicMetric.PHASE_RANGE:
        return phase_range(u, settings), lo, hi
    if metric is NicMetric.DIAMOND:
        return diamond_to_identity(u, settings), 2 * math.sin(lo / 2), 2 * math.sin(hi / 2)
    return min_phase_dist(u, settings)[0], 2 * math.sin(lo / 4), 2 * math.sin(hi / 4)


def classify_nic(value: float, lo: float, hi: float, slack: float = _GAP_TOL) -> NicDecision:
    """Yes at or above hi, No at or below lo, otherwise the promise is broken"""
    if value >= hi - slack:
        return NicDecision.YES
    if value <= lo + slack:
        return NicDecision.NO
    return NicDecision.PROMISE_VIOLATED


def nic_decision(
    inst: NicInstance,
    metric: NicMetric | str = NicMetric.PHASE_RANGE,
    settings: Optional[Settings] = None,
) -> tuple:
    """(decision, value, low, high) from a single simulation of the circuit"""
    metric = NicMetric(metric)
    value, lo, hi = nic_value(inst, metric, settings)
    slack = _GAP_TOL
    if metric is NicMetric.MIN_PHASE_DIST:
        # golden refinement resolves φ to xtol relative to |φ| ≤ 2π
        slack = max(slack, 4 * math.pi * resolve(settings).golden_xtol)
    decision = classify_nic(value, lo, hi, slack)
    logger.info(
        action="decide_nic",
        response={"metric": metric.value, "value": value, "decision": decision.value}
    )
    return decision, value, lo, hi


def decide_nic(
    inst: NicInstance,
    metric: NicMetric | str = NicMetric.PHASE_RANGE,
    settings: Optional[Settings] = None,
) -> NicDecision:
    """Brute-force decision: Yes if the value reaches b_nic, No if it stays within a_nic"""
    return nic_decision(inst, metric, settings)[0]
