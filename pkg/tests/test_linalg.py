import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from scipy.linalg import expm

from src.linalg import (
    DimensionMismatchError,
    EigenConvergenceError,
    HermitianMatrix,
    NotHermitianError,
    NotUnitaryError,
    PhaseSpectrum,
    eigphases,
    embed_local,
    expi,
    herm_eig,
    is_unitary,
    jacobi_eigh,
    kron,
    matrix_from_json,
    matrix_to_json,
    random_hermitian_bounded,
    random_state,
    random_unitary,
    spectral_norm,
    trace_norm,
    wrap_phase,
)
from src.linalg.tensor import apply_local
from src.utils.config import Settings, get_settings
from src.utils.errors import ResourceLimitError

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


@pytest.fixture
def random_h():
    return random_hermitian_bounded(6, -2.0, 3.0, seed=11)


# ========================
# Carriers
# ========================
def test_hermitian_symmetrizes_small_skew():
    a = np.array([[1.0, 2.0 + 1e-12], [2.0, 0.0]])
    h = HermitianMatrix.of(a)
    assert np.allclose(h.inner, h.inner.conj().T, atol=0)


def test_hermitian_rejects_skew():
    with pytest.raises(NotHermitianError):
        HermitianMatrix.of(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_hermitian_tolerance_follows_environment(monkeypatch):
    skewed = np.array([[1.0, 2.0 + 1e-6], [2.0, 0.0]])
    get_settings.cache_clear()
    with pytest.raises(NotHermitianError):
        HermitianMatrix.of(skewed)
    monkeypatch.setenv("NICLAB_HERMITIAN_TOL", "1e-4")
    get_settings.cache_clear()
    try:
        h = HermitianMatrix.of(skewed)
        assert h.inner[0, 1] == pytest.approx(2.0 + 5e-7)
    finally:
        get_settings.cache_clear()


def test_matrix_rejects_non_finite():
    with pytest.raises(NotHermitianError):
        HermitianMatrix.of(np.array([[np.nan]]))


def test_matrix_json_document():
    doc = matrix_to_json(np.array([[1 + 2j, 0], [0, -0.5]]))
    assert doc["dim"] == 2
    assert doc["entries"][0] == [1.0, 2.0]
    assert np.array_equal(matrix_from_json(doc), np.array([[1 + 2j, 0], [0, -0.5]]))


def test_matrix_json_rejects_wrong_entry_count():
    with pytest.raises(ValueError):
        matrix_from_json({"dim": 2, "entries": [[1.0, 0.0]]})


def test_hermitian_serializes_as_matrix_json():
    h = HermitianMatrix.of(np.diag([1.0, 2.0]))
    dumped = h.model_dump()
    assert dumped["dim"] == 2
    assert np.array_equal(HermitianMatrix.model_validate(dumped).inner, h.inner)


def test_phase_spectrum_rejects_unsorted():
    with pytest.raises(ValueError):
        PhaseSpectrum(phases=[0.5, 0.1])


def test_phase_spectrum_rejects_minus_pi():
    with pytest.raises(ValueError):
        PhaseSpectrum(phases=[-math.pi])


# ========================
# Eigendecomposition
# ========================
@pytest.mark.parametrize("backend", ["lapack", "jacobi"])
def test_herm_eig_diagonal(backend):
    eig = herm_eig(np.diag([3.0, 1.0, 2.0]), Settings(eig_backend=backend))
    assert np.allclose(eig.values, [1.0, 2.0, 3.0])
    assert np.allclose(np.abs(eig.vectors), np.abs(eig.vectors).round())


@pytest.mark.parametrize("backend", ["lapack", "jacobi"])
def test_herm_eig_pauli_x(backend):
    eig = herm_eig(PAULI_X, Settings(eig_backend=backend))
    assert np.allclose(eig.values, [-1.0, 1.0])


@pytest.mark.parametrize("backend", ["lapack", "jacobi"])
def test_herm_eig_reconstructs(random_h, backend):
    eig = herm_eig(random_h, Settings(eig_backend=backend))
    rebuilt = (eig.vectors * eig.values) @ eig.vectors.conj().T
    assert np.linalg.norm(rebuilt - random_h.inner) <= 1e-9 * max(1.0, eig.lambda_max)
    assert np.all(np.diff(eig.values) >= 0)


def test_jacobi_matches_lapack(random_h):
    values, _, sweeps = jacobi_eigh(random_h.inner)
    assert np.allclose(np.sort(values), np.linalg.eigvalsh(random_h.inner), atol=1e-10)
    assert sweeps <= 100


def test_jacobi_sweep_cap_raises(random_h):
    with pytest.raises(EigenConvergenceError) as info:
        jacobi_eigh(random_h.inner, threshold=1e-12, max_sweeps=0)
    assert info.value.residual > 0


def test_herm_eig_size_limit(caplog):
    big = np.zeros((600, 600))
    with pytest.raises(ResourceLimitError):
        herm_eig(big, Settings(max_dim=512))
    assert any(getattr(r, "action", "") == "size_limit" for r in caplog.records)


# ========================
# Exponential and norms
# ========================
def test_expi_zero_is_identity():
    assert np.allclose(expi(np.zeros((3, 3)), 0.7), np.eye(3))


def test_expi_scalar_pi():
    assert np.allclose(expi(np.array([[math.pi]]), 1.0), [[-1.0]])


def test_expi_pauli_z():
    assert np.allclose(expi(PAULI_Z, math.pi / 2), np.diag([1j, -1j]))


def test_expi_matches_scipy(random_h):
    assert np.allclose(expi(random_h, 0.37), expm(1j * 0.37 * random_h.inner), atol=1e-10)


def test_expi_group_law(random_h):
    product = expi(random_h, 0.2) @ expi(random_h, 0.5)
    assert np.linalg.norm(product - expi(random_h, 0.7), 2) <= 1e-9


@pytest.mark.parametrize(
    "matrix, expected",
    [(np.eye(3), 1.0), (np.diag([2.0, -3.0]), 3.0)],
)
def test_spectral_norm(matrix, expected):
    assert spectral_norm(matrix) == pytest.approx(expected, abs=1e-12)


def test_spectral_norm_of_unitary():
    assert spectral_norm(random_unitary(5, seed=3)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize(
    "matrix, expected",
    [(np.eye(4), 4.0), (np.diag([1.0, -2.0]), 3.0)],
)
def test_trace_norm(matrix, expected):
    assert trace_norm(matrix) == pytest.approx(expected, abs=1e-10)


def test_trace_norm_rank_one():
    u, v = random_state(4, seed=1), random_state(4, seed=2)
    assert trace_norm(np.outer(u, v.conj())) == pytest.approx(1.0, abs=1e-7)


@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
@hyp_settings(max_examples=25, deadline=None)
def test_norm_sandwich(seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    s, t = spectral_norm(a), trace_norm(a)
    assert s <= t + 1e-9
    assert t <= 4 * s + 1e-9


def test_is_unitary():
    assert is_unitary(np.eye(2), 1e-12)
    assert not is_unitary(np.diag([1.0, 0.5]), 1e-9)
    assert is_unitary(expi(random_hermitian_bounded(4, -1, 1, seed=5), 0.37), 1e-9)


# ========================
# Tensor structure
# ========================
def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, 2]), np.diag([1, 3])), np.diag([1, 3, 2, 6]))


def test_kron_mixed_product():
    a, b, c, d = (random_unitary(2, seed=s) for s in range(4))
    lhs = kron(a, b) @ kron(c, d)
    assert np.linalg.norm(lhs - kron(a @ c, b @ d)) <= 1e-12


def test_embed_zz_on_three_qubits():
    zz = np.kron(PAULI_Z, PAULI_Z)
    embedded = embed_local(zz, 0, 3, 2)
    assert np.allclose(np.diag(embedded), [1, 1, -1, -1, -1, -1, 1, 1])


def test_embed_identity_and_norm():
    assert np.array_equal(embed_local(np.eye(4), 1, 3, 2), np.eye(8))
    op = random_hermitian_bounded(4, -1.5, 0.5, seed=9).inner
    assert spectral_norm(embed_local(op, 1, 3, 2)) == pytest.approx(spectral_norm(op), abs=1e-9)


def test_embed_is_linear():
    a = random_hermitian_bounded(4, -1, 1, seed=1).inner
    b = random_hermitian_bounded(4, -1, 1, seed=2).inner
    assert np.allclose(embed_local(a + b, 0, 3, 2), embed_local(a, 0, 3, 2) + embed_local(b, 0, 3, 2))


@pytest.mark.parametrize("first_site", [2, 5])
def test_embed_rejects_overrun(first_site):
    with pytest.raises(DimensionMismatchError):
        embed_local(np.eye(4), first_site, 3, 2)


def test_embed_rejects_partial_site():
    with pytest.raises(DimensionMismatchError):
        embed_local(np.eye(3), 0, 3, 2)


def test_apply_local_matches_embedding():
    op = random_unitary(9, seed=4)
    target = random_unitary(27, seed=5)
    dims = [3, 3, 3]
    expected = embed_local(op, 1, 3, dims) @ target
    assert np.allclose(apply_local(op, target, 1, 2, dims), expected, atol=1e-12)


# ========================
# Eigenphases
# ========================
def test_eigphases_identity():
    assert np.allclose(eigphases(np.eye(3)).phases, 0.0)


def test_eigphases_pauli_z_uses_plus_pi():
    assert np.allclose(eigphases(PAULI_Z).phases, [0.0, math.pi])


def test_eigphases_minus_one_snaps_to_pi():
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)


def test_eigphases_spectral_mapping():
    h = random_hermitian_bounded(5, -1.0, 1.0, seed=21)
    t = 1.3
    expected = np.sort(wrap_phase(np.linalg.eigvalsh(h.inner) * t))
    assert np.allclose(eigphases(expi(h, t)).phases, expected, atol=1e-9)


def test_eigphases_degenerate_clusters():
    basis = random_unitary(4, seed=8)
    u = (basis * np.exp(1j * np.array([0.3, 0.3, -1.0, 2.0]))) @ basis.conj().T
    assert np.allclose(eigphases(u).phases, [-1.0, 0.3, 0.3, 2.0], atol=1e-9)


@given(phi=st.floats(min_value=-math.pi, max_value=math.pi), seed=st.integers(0, 10_000))
@hyp_settings(max_examples=25, deadline=None)
def test_eigphases_global_phase_shift(phi, seed):
    u = random_unitary(3, seed=seed)
    base = eigphases(u).phases
    shifted = np.sort(eigphases(np.exp(1j * phi) * u).phases)
    expected = np.sort(wrap_phase(base + phi))
    # compare points on the circle so the seam does not matter
    distance = np.abs(np.exp(1j * shifted)[:, None] - np.exp(1j * expected)[None, :])
    assert np.all(distance.min(axis=1) <= 1e-9)


def test_eigphases_rejects_non_unitary(caplog):
    with pytest.raises(NotUnitaryError):
        eigphases(np.diag([1.0, 0.5]))


def test_random_unitary_contract():
    scalar = random_unitary(1, seed=0)
    assert abs(abs(scalar[0, 0]) - 1) <= 1e-12
    assert np.array_equal(random_unitary(4, seed=7), random_unitary(4, seed=7))
    assert np.allclose(np.linalg.norm(random_unitary(5, seed=2), axis=0), 1.0, atol=1e-12)
    assert is_unitary(random_unitary(6, seed=3), 1e-10)


def test_random_hermitian_bounded_window():
    assert np.allclose(random_hermitian_bounded(3, 0.0, 0.0, seed=1).inner, 0.0)
    for seed in range(50):
        values = np.linalg.eigvalsh(random_hermitian_bounded(4, 0.0, math.pi / 2, seed=seed).inner)
        assert values[0] >= -1e-12
        assert values[-1] <= math.pi / 2 + 1e-12
