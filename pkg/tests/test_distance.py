import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from src.distance import (
    DistanceReport,
    PhaseSpectrum,
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
from src.linalg import (
    NotUnitaryError,
    eigphases,
    expi,
    random_hermitian_bounded,
    random_unitary,
    spectral_norm,
)

PAULI_Z = np.diag([1.0, -1.0]).astype(complex)
S_GATE = np.diag([1.0, 1j])


def with_phases(phases, seed):
    """Unitary with the given eigenphases in a random basis"""
    basis = random_unitary(len(phases), seed=seed)
    return (basis * np.exp(1j * np.asarray(phases))) @ basis.conj().T


def grid_minimum(phases):
    """Exhaustive oracle: 10⁶-point grid, then 10⁴ points on the best cell"""
    phases = np.asarray(phases)

    def f(phi):
        return np.max(2 * np.abs(np.sin((phases[:, None] - phi[None, :]) / 2)), axis=0)

    step = 2 * math.pi / 1_000_000
    coarse = -math.pi + step * np.arange(1, 1_000_001)
    values = f(coarse)
    k = int(np.argmin(values))
    fine = np.linspace(coarse[k] - step, coarse[k] + step, 10_001)
    return float(min(values[k], f(fine).min()))


# ========================
# Phase geometry
# ========================
def test_alpha_extremes():
    assert alpha_extremes(PhaseSpectrum(phases=[0.0])) == (0.0, 0.0)
    assert alpha_extremes(PhaseSpectrum(phases=[-math.pi / 3, math.pi / 4])) == pytest.approx(
        (-math.pi / 3, math.pi / 4)
    )


def test_alpha_extremes_follow_spectrum():
    h = random_hermitian_bounded(4, 0.0, 1.0, seed=3)
    t = 0.8
    values = np.linalg.eigvalsh(h.inner)
    low, high = alpha_extremes(eigphases(expi(h, t)))
    assert low == pytest.approx(values[0] * t, abs=1e-9)
    assert high == pytest.approx(values[-1] * t, abs=1e-9)


@pytest.mark.parametrize(
    "phases, expected",
    [
        ([0.7, 0.7, 0.7], 0.0),
        ([0.0, math.pi / 2], math.pi / 2),
        ([-3 * math.pi / 4, 3 * math.pi / 4], math.pi / 2),
        ([0.0, 2 * math.pi / 3 - 1e-3, -2 * math.pi / 3 + 1e-3], 4 * math.pi / 3 - 2e-3),
    ],
)
def test_shortest_arc(phases, expected):
    assert shortest_arc(PhaseSpectrum.of(phases)) == pytest.approx(expected, abs=1e-12)


def test_shortest_arc_merges_seam_duplicates():
    p = PhaseSpectrum(phases=[-math.pi + 1e-11, 0.5, math.pi])
    assert shortest_arc(p) == pytest.approx(math.pi - 0.5, abs=1e-9)


def test_minimal_arc_start_crosses_seam():
    start, arc = minimal_arc(PhaseSpectrum.of([-3 * math.pi / 4, 3 * math.pi / 4]))
    assert start == pytest.approx(3 * math.pi / 4)
    assert arc == pytest.approx(math.pi / 2)


@pytest.mark.parametrize(
    "u, expected",
    [(np.eye(3), 0.0), (PAULI_Z, math.pi), (S_GATE, math.pi / 2)],
)
def test_phase_range(u, expected):
    assert phase_range(u) == pytest.approx(expected, abs=1e-12)


def test_phase_range_pair():
    u = random_unitary(4, seed=1)
    assert phase_range_pair(u, u) == pytest.approx(0.0, abs=1e-7)
    assert phase_range_pair(np.eye(2), PAULI_Z) == pytest.approx(math.pi)


@pytest.mark.parametrize("seed", range(10))
def test_phase_range_pair_symmetric(seed):
    u, v = random_unitary(4, seed=2 * seed), random_unitary(4, seed=2 * seed + 1)
    assert phase_range_pair(u, v) == pytest.approx(phase_range_pair(v, u), abs=1e-9)


def test_phase_range_rejects_non_unitary():
    with pytest.raises(NotUnitaryError):
        phase_range(np.diag([1.0, 2.0]))


# ========================
# Distinguishability measures
# ========================
@pytest.mark.parametrize(
    "u, expected_nu, expected_diamond",
    [
        (np.eye(2), 1.0, 0.0),
        (PAULI_Z, 0.0, 2.0),
        (S_GATE, math.sqrt(2) / 2, math.sqrt(2)),
    ],
)
def test_nu_and_diamond(u, expected_nu, expected_diamond):
    assert nu(u) == pytest.approx(expected_nu, abs=1e-12)
    assert diamond_to_identity(u) == pytest.approx(expected_diamond, abs=1e-12)


def test_min_phase_dist_identity():
    value, phi = min_phase_dist(np.eye(3))
    assert value == pytest.approx(0.0, abs=1e-12)
    assert phi == pytest.approx(0.0, abs=1e-12)


def test_min_phase_dist_s_gate():
    value, phi = min_phase_dist(S_GATE)
    assert value == pytest.approx(2 * math.sin(math.pi / 8), abs=1e-12)
    assert phi == pytest.approx(math.pi / 4, abs=1e-12)


def test_min_phase_dist_pauli_z():
    value, phi = min_phase_dist(PAULI_Z)
    assert value == pytest.approx(math.sqrt(2), abs=1e-9)
    assert abs(phi) == pytest.approx(math.pi / 2, abs=1e-6)


def test_min_phase_dist_argmin_attains_value():
    u = with_phases([0.0, 2.5, -2.0], seed=4)
    value, phi = min_phase_dist(u)
    assert spectral_norm(u - np.exp(1j * phi) * np.eye(3)) == pytest.approx(value, abs=1e-8)


@pytest.mark.parametrize("seed", range(30))
def test_min_phase_dist_matches_grid_oracle(seed):
    dim = 2 + seed % 2
    if seed % 3 == 0:
        # antipodal pair forces an arc of at least π
        rng = np.random.default_rng(seed)
        phases = [0.3, 0.3 - math.pi] + list(rng.uniform(-math.pi, math.pi, dim - 2))
        u = with_phases(phases, seed=seed)
    else:
        u = random_unitary(dim, seed=seed)
    spectrum = eigphases(u)
    value, _ = min_phase_dist(u)
    assert value == pytest.approx(grid_minimum(spectrum.phases), abs=1e-6)
    arc = shortest_arc(spectrum)
    if arc < math.pi:
        assert value == pytest.approx(2 * math.sin(arc / 4), abs=1e-12)


def test_min_phase_dist_near_pi_takes_smaller_branch():
    u = with_phases([0.0, math.pi - 5e-10], seed=2)
    value, _ = min_phase_dist(u)
    assert value <= 2 * math.sin((math.pi - 5e-10) / 4) + 1e-12


@pytest.mark.parametrize(
    "matrix, expected",
    [(np.zeros((3, 3)), 0.0), (np.diag([0.0, 1.0, 3.0]), 3.0)],
)
def test_eig_range(matrix, expected):
    assert eig_range(matrix) == pytest.approx(expected, abs=1e-12)


def test_eig_range_shift_invariant():
    h = random_hermitian_bounded(5, -1.0, 2.0, seed=6)
    shifted = h.inner + 0.731 * np.eye(5)
    assert eig_range(shifted) == pytest.approx(eig_range(h), abs=1e-9)


# ========================
# Report
# ========================
def test_report_identity():
    r = report(np.eye(4))
    assert (r.alpha, r.arc, r.diamond, r.min_phase_dist) == pytest.approx((0, 0, 0, 0), abs=1e-12)
    assert r.nu == pytest.approx(1.0)


def test_report_pauli_z():
    r = report(PAULI_Z)
    assert r.alpha == pytest.approx(math.pi)
    assert r.nu == pytest.approx(0.0, abs=1e-12)
    assert r.diamond == pytest.approx(2.0)
    assert r.min_phase_dist == pytest.approx(math.sqrt(2), abs=1e-9)


def test_report_json_fields():
    dumped = report(S_GATE).model_dump()
    assert set(dumped) == {
        "alpha_max", "alpha_min", "arc", "alpha", "nu", "diamond", "min_phase_dist", "argmin_phi",
    }


def test_report_rejects_inconsistent_fields():
    fields = measure(S_GATE)
    fields["diamond"] = 0.5
    with pytest.raises(ValueError):
        DistanceReport(**fields)


@pytest.mark.parametrize("dim", range(2, 9))
def test_report_consistency_random(dim):
    for seed in range(20):
        r = report(random_unitary(dim, seed=[dim, seed]))
        assert all(rel.holds(1e-9) for rel in r.relations())


def test_report_consistency_near_identity():
    h = random_hermitian_bounded(4, -1.0, 1.0, seed=12)
    r = report(expi(h, 0.4))
    assert r.arc < math.pi
    assert r.min_phase_dist == pytest.approx(2 * math.sin(r.alpha / 4), abs=1e-12)


# ========================
# Properties
# ========================
@given(phi=st.floats(min_value=-math.pi, max_value=math.pi), seed=st.integers(0, 100_000))
@hyp_settings(max_examples=30, deadline=None)
def test_global_phase_invariance(phi, seed):
    u = random_unitary(3, seed=seed)
    assert phase_range(np.exp(1j * phi) * u) == pytest.approx(phase_range(u), abs=1e-9)


@given(seed=st.integers(0, 100_000))
@hyp_settings(max_examples=30, deadline=None)
def test_triangle_and_metric(seed):
    u1, u2, u3 = (random_unitary(3, seed=[seed, k]) for k in range(3))
    assert phase_range(u1 @ u2) <= phase_range(u1) + phase_range(u2) + 1e-9
    assert phase_range_pair(u1, u3) <= phase_range_pair(u1, u2) + phase_range_pair(u2, u3) + 1e-9


@given(seed=st.integers(0, 100_000), scale=st.floats(min_value=1e-4, max_value=1.0))
@hyp_settings(max_examples=30, deadline=None)
def test_lipschitz(seed, scale):
    u = random_unitary(4, seed=seed)
    v = u @ expi(random_hermitian_bounded(4, -scale, scale, seed=seed + 1), 1.0)
    assert abs(phase_range(u) - phase_range(v)) <= math.pi * spectral_norm(u - v) + 1e-9


@pytest.mark.parametrize("seed", range(15))
def test_distinguishability_boundary(seed):
    u = random_unitary(3, seed=seed)
    r = report(u)
    perfectly = r.arc >= math.pi
    assert perfectly == (r.nu == 0.0)
    assert perfectly == (abs(r.diamond - 2.0) <= 1e-9)
