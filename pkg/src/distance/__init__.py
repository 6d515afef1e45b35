"""
Closeness-to-identity calculus

Exports:
- phase_range / phase_range_pair / shortest_arc / alpha_extremes: phase geometry
- nu / diamond_to_identity / min_phase_dist: distinguishability measures
- report / DistanceReport: every measure of one unitary at once
"""

from src.linalg import PhaseSpectrum
from .measures import (
    DistanceReport,
    Relation,
    alpha_extremes,
    diamond_to_identity,
    eig_range,
    measure,
    min_phase_dist,
    minimal_arc,
    nu,
    phase_range,
    phase_range_pair,
    report,
    shortest_arc,
)

__all__ = [
    'PhaseSpectrum',
    'DistanceReport',
    'Relation',
    'alpha_extremes',
    'minimal_arc',
    'shortest_arc',
    'phase_range',
    'phase_range_pair',
    'nu',
    'diamond_to_identity',
    'min_phase_dist',
    'eig_range',
    'measure',
    'report',
]
