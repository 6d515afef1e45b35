"""
Imperfect gates: V_i = U_i·e^{iG_i} with ‖G_i‖ ≤ ε, and the resulting shift
of the phase range, bounded by π·Σ_i ‖V_i − U_i‖.
"""
from __future__ import annotations

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.distance import phase_range
from src.linalg import expi, random_hermitian_bounded, spectral_norm
from src.reduction import Gate, LayeredCircuit, simulate
from src.utils.config import Settings
from src.utils.errors import NicLabError, PreconditionError
from src.utils.logger import NicLogger

logger = NicLogger()

_STABILITY_TOL = 1e-9


class ShapeMismatchError(NicLabError):
    """Circuits differ in register, layer or gate layout"""


class PerturbationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    per_gate_error: List[float]
    bound: float
    observed: float

    @property
    def slack(self) -> float:
        return self.bound - self.observed

    def holds(self, tolerance: float = _STABILITY_TOL) -> bool:
        return self.observed <= self.bound + tolerance


class StabilityViolation(NicLabError):
    """Observed phase-range shift exceeds π·Σ‖E_i‖"""
    def __init__(self, report: PerturbationReport):
        super().__init__(
            f"observed shift {report.observed:.6e} exceeds bound {report.bound:.6e}"
        )
        self.report = report


def perturb_circuit(
    c: LayeredCircuit,
    epsilon: float,
    seed: int,
    settings: Optional[Settings] = None,
) -> Tuple[LayeredCircuit, List[float]]:
    """
    Rotate every gate by a seeded e^{iG} with spectrum of G in [−ε, ε].

    Returns:
        (perturbed circuit, ‖V_i − U_i‖ per gate in application order)
    """
    if not 0 < epsilon < 1:
        raise PreconditionError(f"epsilon must lie in (0, 1), got {epsilon}")
    errors = []
    layers = []
    index = 0
    for layer in c.layers:
        gates = []
        for gate in layer:
            rng = np.random.default_rng([seed, index])
            rotation = expi(
                random_hermitian_bounded(gate.unitary.shape[0], -epsilon, epsilon, rng), 1.0, settings
            )
            noisy = gate.unitary @ rotation
            errors.append(spectral_norm(noisy - gate.unitary, settings))
            gates.append(Gate(first_site=gate.first_site, span=gate.span, unitary=noisy))
            index += 1
        layers.append(tuple(gates))
    return LayeredCircuit(n=c.n, d=c.d, layers=tuple(layers)), errors


def _layout(circuit: LayeredCircuit) -> list:
    return [[(g.first_site, g.span) for g in layer] for layer in circuit.layers]


def _check_shapes(c: LayeredCircuit, c2: LayeredCircuit) -> None:
    if (c.n, c.d) != (c2.n, c2.d) or _layout(c) != _layout(c2):
        raise ShapeMismatchError("circuits do not share a gate layout")


def alpha_stability_check(
    c: LayeredCircuit,
    c2: LayeredCircuit,
    tolerance: float = _STABILITY_TOL,
    settings: Optional[Settings] = None,
) -> PerturbationReport:
    """
    Compare α of two circuits with the same layout against π·Σ‖E_i‖.

    Raises:
        ShapeMismatchError: layouts differ.
        StabilityViolation: observed shift above bound + tolerance.
    """
    _check_shapes(c, c2)
    errors = [
        spectral_norm(g2.unitary - g1.unitary, settings)
        for (_, _, g1), (_, _, g2) in zip(c.gates(), c2.gates())
    ]
    observed = abs(phase_range(simulate(c, settings), settings) - phase_range(simulate(c2, settings), settings))
    report = PerturbationReport(
        per_gate_error=errors, bound=math.pi * sum(errors), observed=observed
    )
    if not report.holds(tolerance):
        logger.error(
            action="stability_violation",
            response={"observed": report.observed, "bound": report.bound}
        )
        raise StabilityViolation(report)
    return report
