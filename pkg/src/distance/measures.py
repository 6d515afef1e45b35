"""
Closeness-to-identity measures of a unitary.

All quantities are derived from the eigenphase multiset: the shortest arc
containing the spectrum (α̃), the capped phase range α, the distance ν from
the origin to the numerical range, the diamond distance to the identity
channel and the min-phase spectral distance min_φ ‖U − e^{iφ}I‖.
"""
from __future__ import annotations

import math
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import minimize_scalar

from src.linalg import (
    HermitianMatrix,
    PhaseSpectrum,
    as_matrix,
    dagger,
    eigphases,
    herm_eigvals,
    wrap_phase,
)
from src.utils.config import Settings, resolve

# arcs this close to π are evaluated by both branches of min_phase_dist
_SEAM_WIDTH = 1e-9
_REPORT_TOL = 1e-9


class Relation(NamedTuple):
    """One-sided inequality ``lhs ≤ rhs``"""
    name: str
    lhs: float
    rhs: float

    def holds(self, tolerance: float) -> bool:
        return self.lhs <= self.rhs + tolerance


# ========================
# Phase-multiset geometry
# ========================
def alpha_extremes(p: PhaseSpectrum) -> Tuple[float, float]:
    """(α_min, α_max): extreme eigenphase arguments"""
    return float(p.phases[0]), float(p.phases[-1])


def _distinct_phases(p: PhaseSpectrum, tol: float) -> np.ndarray:
    phases = np.asarray(p.phases)
    keep = np.concatenate(([True], np.diff(phases) > tol))
    distinct = phases[keep]
    # the seam: −π+ε and π describe the same point
    if distinct.size > 1 and distinct[0] + 2 * math.pi - distinct[-1] <= tol:
        distinct = distinct[1:]
    return distinct


def minimal_arc(p: PhaseSpectrum, settings: Optional[Settings] = None) -> Tuple[float, float]:
    """
    Start angle and length of the shortest arc holding every eigenphase.

    The arc is the complement of the largest circular gap between adjacent
    distinct phases, the wrap-around gap included.
    """
    settings = resolve(settings)
    distinct = _distinct_phases(p, settings.phase_dedup_tol)
    if distinct.size == 1:
        return float(distinct[0]), 0.0
    gaps = np.append(np.diff(distinct), distinct[0] + 2 * math.pi - distinct[-1])
    widest = int(np.argmax(gaps))
    start = float(distinct[(widest + 1) % distinct.size])
    return start, float(2 * math.pi - gaps[widest])


def shortest_arc(p: PhaseSpectrum, settings: Optional[Settings] = None) -> float:
    """α̃: length of the shortest arc containing all eigenvalues, in [0, 2π)"""
    return minimal_arc(p, settings)[1]


def _nu_from_arc(arc: float) -> float:
    return math.cos(arc / 2) if arc < math.pi else 0.0


def _max_chord(phases: np.ndarray, phi: np.ndarray | float) -> np.ndarray:
    """max_j |e^{iθ_j} − e^{iφ}| for scalar or vector φ"""
    phi = np.atleast_1d(np.asarray(phi, dtype=np.float64))
    chords = 2 * np.abs(np.sin((phases[:, None] - phi[None, :]) / 2))
    return np.max(chords, axis=0)


def _minimize_chord(phases: np.ndarray, settings: Settings) -> Tuple[float, float]:
    """Dense grid over (−π, π], then golden-section refinement of the best cell"""
    points = settings.grid_points
    step = 2 * math.pi / points
    grid = -math.pi + step * np.arange(1, points + 1)
    values = _max_chord(phases, grid)
    k = int(np.argmin(values))
    best_value, best_phi = float(values[k]), float(grid[k])

    def objective(phi: float) -> float:
        return float(_max_chord(phases, phi)[0])

    bracket = (best_phi - step, best_phi, best_phi + step)
    try:
        refined = minimize_scalar(
            objective, bracket=bracket, method="golden",
            options={"xtol": settings.golden_xtol},
        )
    except ValueError:
        # flat bracket: the grid point already ties a neighbour
        refined = minimize_scalar(
            objective, bounds=(bracket[0], bracket[2]), method="bounded",
            options={"xatol": settings.golden_xtol},
        )
    if float(refined.fun) < best_value:
        best_value, best_phi = float(refined.fun), float(refined.x)
    return best_value, float(wrap_phase(best_phi))


def _min_phase_dist_from(p: PhaseSpectrum, settings: Settings) -> Tuple[float, float]:
    start, arc = minimal_arc(p, settings)
    candidates = []
    if arc < math.pi + _SEAM_WIDTH:
        candidates.append((2 * math.sin(arc / 4), float(wrap_phase(start + arc / 2))))
    if arc >= math.pi - _SEAM_WIDTH:
        candidates.append(_minimize_chord(np.asarray(p.phases), settings))
    return min(candidates, key=lambda c: c[0])


# ========================
# Operations on unitaries
# ========================
def phase_range(u: np.ndarray, settings: Optional[Settings] = None) -> float:
    """α(U) = min{π, α̃(U)}"""
    return min(math.pi, shortest_arc(eigphases(u, settings), settings))


def phase_range_pair(u: np.ndarray, v: np.ndarray, settings: Optional[Settings] = None) -> float:
    """α(U, V) = α(U†V)"""
    return phase_range(dagger(as_matrix(u)) @ as_matrix(v), settings)


def nu(u: np.ndarray, settings: Optional[Settings] = None) -> float:
    """Distance from the origin to the numerical range of U"""
    return _nu_from_arc(shortest_arc(eigphases(u, settings), settings))


def diamond_to_identity(u: np.ndarray, settings: Optional[Settings] = None) -> float:
    """‖𝒰 − ℐ‖◇ = 2√(1 − ν²)"""
    value = nu(u, settings)
    return 2 * math.sqrt(max(0.0, 1 - value * value))


def min_phase_dist(u: np.ndarray, settings: Optional[Settings] = None) -> Tuple[float, float]:
    """
    min_φ ‖U − e^{iφ}I‖ and a minimizing φ.

    Closed form 2 sin(α̃/4) at the arc midpoint when α̃ < π; otherwise a
    numerical minimax over φ.
    """
    settings = resolve(settings)
    return _min_phase_dist_from(eigphases(u, settings), settings)


def eig_range(h: HermitianMatrix, settings: Optional[Settings] = None) -> float:
    """λ(H) = λ_max(H) − λ_min(H)"""
    values = herm_eigvals(HermitianMatrix.of(h), settings)
    return float(values[-1] - values[0])


# ========================
# Report
# ========================
class DistanceReport(BaseModel):
    """All closeness-to-identity quantities of one unitary, in radians"""
    model_config = ConfigDict(frozen=True)

    alpha_max: float
    alpha_min: float
    arc: float = Field(ge=0)
    alpha: float = Field(ge=0)
    nu: float = Field(ge=0, le=1)
    diamond: float = Field(ge=0, le=2)
    min_phase_dist: float = Field(ge=0, le=2)
    argmin_phi: float

    def relations(self) -> List[Relation]:
        """Internal consistency relations, each read as lhs ≤ rhs"""
        relations = [
            Relation("alpha_cap", abs(self.alpha - min(math.pi, self.arc)), 0.0),
            Relation("diamond_sin", abs(self.diamond - 2 * math.sin(self.alpha / 2)), 0.0),
            Relation(
                "diamond_nu",
                abs(self.diamond - 2 * math.sqrt(max(0.0, 1 - self.nu ** 2))),
                0.0,
            ),
            Relation("min_phase_lower", 2 * math.sin(self.alpha / 4), self.min_phase_dist),
        ]
        if self.arc < math.pi - _SEAM_WIDTH:
            relations.append(
                Relation("min_phase_closed_form", self.min_phase_dist, 2 * math.sin(self.alpha / 4))
            )
        return relations

    @model_validator(mode="after")
    def _check_consistency(self) -> "DistanceReport":
        broken = [r for r in self.relations() if not r.holds(_REPORT_TOL)]
        if broken:
            raise ValueError(f"inconsistent distance report: {broken}")
        return self


def measure(u: np.ndarray, settings: Optional[Settings] = None) -> dict:
    """Raw report fields, without the consistency check"""
    settings = resolve(settings)
    spectrum = eigphases(u, settings)
    alpha_min, alpha_max = alpha_extremes(spectrum)
    arc = shortest_arc(spectrum, settings)
    nu_value = _nu_from_arc(arc)
    value, phi = _min_phase_dist_from(spectrum, settings)
    return {
        "alpha_max": alpha_max,
        "alpha_min": alpha_min,
        "arc": arc,
        "alpha": min(math.pi, arc),
        "nu": nu_value,
        "diamond": 2 * math.sqrt(max(0.0, 1 - nu_value * nu_value)),
        "min_phase_dist": value,
        "argmin_phi": phi,
    }


def report(u: np.ndarray, settings: Optional[Settings] = None) -> DistanceReport:
    return DistanceReport(**measure(u, settings))
