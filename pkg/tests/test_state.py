from __future__ import annotations

from functools import reduce

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from segrecube.errors import (
    BadCut,
    BadPauliIndex,
    ImaginaryResidueTooLarge,
    NotNormalized,
    NotPowerOfTwo,
    ZeroVector,
)
from segrecube.state import (
    PAULI,
    DensityMatrix,
    ProjectivePoint,
    apply_pauli,
    basis_state,
    from_amplitudes,
    hermitian_expectation,
    pauli_string_expectation,
    projective_distance,
    projective_point,
    purity,
    random_state,
    reduced_density_matrix,
    reshape_matrix,
    tensor,
)

from .strategies import phases, seeds, states

R2 = 1 / np.sqrt(2)
EPS = from_amplitudes([1, 0, 0, 1])
GHZ = from_amplitudes([1, 0, 0, 0, 0, 0, 0, 1])
W = from_amplitudes([0, 1, 1, 0, 1, 0, 0, 0])


def dense_pauli_expectation(psi, indices):
    """Oracle: materialize sigma_i1 x ... x I and take <psi|O|psi>."""
    ops = [PAULI[i] for i in indices] + [np.eye(2)] * (psi.n - len(indices))
    return np.vdot(psi.amps, reduce(np.kron, ops) @ psi.amps)


def dense_marginal(psi, ell):
    """Oracle: full |psi><psi| traced over the trailing qubits with einsum."""
    a, b = 2 ** ell, 2 ** (psi.n - ell)
    rho = np.outer(psi.amps, psi.amps.conj()).reshape(a, b, a, b)
    return np.einsum("ibjb->ij", rho)


# --- construction ----------------------------------------------------------


def test_basis_index_convention():
    # first qubit is the most significant bit
    assert basis_state("011").amps[3] == 1
    assert basis_state("100").amps[4] == 1
    assert basis_state("0").n == 1


def test_from_amplitudes_normalizes_eps():
    np.testing.assert_allclose(EPS.amps, [R2, 0, 0, R2], atol=1e-15)


def test_from_amplitudes_basis_vector():
    psi = from_amplitudes([1, 0, 0, 0])
    assert psi.n == 2 and psi.amps[0] == 1


@pytest.mark.parametrize("raw, err", [
    ([0, 0, 0, 0], ZeroVector),
    ([1, 0, 0], NotPowerOfTwo),
    ([1], NotPowerOfTwo),
    ([], NotPowerOfTwo),
])
def test_from_amplitudes_rejects(raw, err):
    with pytest.raises(err):
        from_amplitudes(raw)


def test_unnormalized_rejected_without_normalize():
    with pytest.raises(NotNormalized):
        from_amplitudes([1, 0, 0, 1], normalize=False)
    from_amplitudes([R2, 0, 0, R2], normalize=False)


def test_amplitudes_are_read_only():
    with pytest.raises(ValueError):
        EPS.amps[0] = 0


def test_tensor_matches_kron(rng):
    a, b = random_state(2, rng), random_state(3, rng)
    np.testing.assert_allclose(tensor(a, b).amps, np.kron(a.amps, b.amps), atol=1e-14)
    assert a.tensor(b).n == 5


# --- projective points -----------------------------------------------------


def test_projective_point_of_eps_and_ghz():
    assert projective_point(EPS) == ProjectivePoint(np.array([1, 0, 0, 1]))
    assert repr(projective_point(GHZ)) == "[1:0:0:0:0:0:0:1]"


@given(seeds, st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_projective_scale_invariance(seed, lam):
    psi = random_state(3, np.random.default_rng(seed))
    assert ProjectivePoint(lam * psi.amps) == projective_point(psi)
    assert projective_distance(lam * psi.amps, psi.amps) < 1e-10


def test_projective_points_differ():
    assert ProjectivePoint(np.array([1, 0])) != ProjectivePoint(np.array([1, 1]))
    assert ProjectivePoint(np.array([1, 0])) != ProjectivePoint(np.array([1, 0, 0, 0]))


def test_projective_point_rejects_zero():
    with pytest.raises(ZeroVector):
        ProjectivePoint(np.zeros(4))


def test_affine_representative():
    p = ProjectivePoint(np.array([0, 2j, 4j, 0]))
    np.testing.assert_allclose(p.affine(), [0, 1, 2, 0])


# --- Pauli strings ---------------------------------------------------------


@pytest.mark.parametrize("psi, indices, expected", [
    (basis_state("00"), (3, 3), 1.0),
    (EPS, (1, 1), 1.0),
    (EPS, (2, 2), -1.0),
    (EPS, (3, 3), 1.0),
    (EPS, (1,), 0.0),
    (GHZ, (3,), 0.0),
    (basis_state("10"), (3,), -1.0),
])
def test_pauli_expectation_values(psi, indices, expected):
    assert pauli_string_expectation(psi, indices) == pytest.approx(expected, abs=1e-12)


@given(states(1, 5), st.data())
def test_pauli_matches_dense_oracle(psi, data):
    ell = data.draw(st.integers(1, psi.n))
    indices = tuple(data.draw(st.lists(st.integers(0, 3), min_size=ell, max_size=ell)))
    assert pauli_string_expectation(psi, indices) == pytest.approx(
        dense_pauli_expectation(psi, indices).real, abs=1e-12)


@given(states(1, 6))
def test_identity_string_is_one(psi):
    assert abs(pauli_string_expectation(psi, (0,) * psi.n) - 1) < 1e-12


@given(states(1, 4), st.data())
def test_apply_pauli_matches_kron(psi, data):
    q = data.draw(st.integers(0, psi.n - 1))
    idx = data.draw(st.integers(0, 3))
    op = reduce(np.kron, [np.eye(2 ** q), PAULI[idx], np.eye(2 ** (psi.n - q - 1))])
    np.testing.assert_allclose(apply_pauli(psi.amps, psi.n, q, idx), op @ psi.amps, atol=1e-14)


@pytest.mark.parametrize("indices", [(4,), (-1,), (0, 0, 0, 0)])
def test_bad_pauli_index(indices):
    with pytest.raises(BadPauliIndex):
        pauli_string_expectation(EPS, indices)


def test_imaginary_residue_detected():
    with pytest.raises(ImaginaryResidueTooLarge):
        hermitian_expectation(np.array([1, 0]), np.array([1j, 0]))


# --- marginals -------------------------------------------------------------


@pytest.mark.parametrize("psi, ell, expected", [
    (EPS, 1, np.diag([0.5, 0.5])),
    (basis_state("00"), 1, np.diag([1, 0])),
    (GHZ, 2, np.diag([0.5, 0, 0, 0.5])),
])
def test_reduced_density_matrix_examples(psi, ell, expected):
    np.testing.assert_allclose(reduced_density_matrix(psi, ell).entries, expected, atol=1e-15)


@given(states(2, 7), st.data())
def test_reduced_density_matrix_oracle_and_invariants(psi, data):
    ell = data.draw(st.integers(1, psi.n - 1))
    rho = reduced_density_matrix(psi, ell)
    m = rho.entries
    np.testing.assert_allclose(m, dense_marginal(psi, ell), atol=1e-13)
    assert rho.dim == 2 ** ell
    assert np.abs(m - m.conj().T).max() < 1e-10
    assert abs(np.trace(m) - 1) < 1e-10
    assert np.linalg.eigvalsh(m).min() > -1e-10
    p = purity(rho)
    assert 1 / rho.dim - 1e-10 <= p <= 1 + 1e-10
    assert p == pytest.approx(np.trace(m @ m).real, abs=1e-12)


def test_purity_examples():
    assert purity(DensityMatrix(np.diag([1.0, 0.0]))) == pytest.approx(1.0)
    assert purity(DensityMatrix(np.diag([0.5, 0.5]))) == pytest.approx(0.5)
    # W marginal: 2(1 - Tr rho^2) = 8/9  ->  Tr rho^2 = 5/9
    rho = reduced_density_matrix(W, 1)
    assert purity(rho) == pytest.approx(5 / 9, abs=1e-12)
    assert np.trace(rho.entries @ rho.entries).real == pytest.approx(5 / 9, abs=1e-12)


@pytest.mark.parametrize("entries", [
    np.array([[1, 1], [0, 0]]),        # not Hermitian
    np.diag([0.6, 0.6]),               # trace
    np.diag([1.5, -0.5]),              # not PSD
])
def test_density_matrix_validation(entries):
    with pytest.raises(ValueError):
        DensityMatrix(entries)


@pytest.mark.parametrize("ell", [0, 3, -1])
def test_bad_cut(ell):
    with pytest.raises(BadCut):
        reduced_density_matrix(GHZ, ell)
    with pytest.raises(BadCut):
        reshape_matrix(GHZ, ell)


def test_single_qubit_has_no_cut():
    with pytest.raises(BadCut):
        reshape_matrix(basis_state("1"), 1)


# --- reshape ---------------------------------------------------------------


def test_reshape_examples():
    np.testing.assert_allclose(reshape_matrix(GHZ, 1), [[R2, 0, 0, 0], [0, 0, 0, R2]], atol=1e-15)
    b1 = from_amplitudes([1, 0, 0, 1, 0, 0, 0, 0])
    np.testing.assert_allclose(reshape_matrix(b1, 1), [[R2, 0, 0, R2], [0, 0, 0, 0]], atol=1e-15)


@given(states(2, 8), st.data())
def test_reshape_round_trip_and_norm(psi, data):
    ell = data.draw(st.integers(1, psi.n - 1))
    m = reshape_matrix(psi, ell)
    assert m.shape == (2 ** ell, 2 ** (psi.n - ell))
    np.testing.assert_array_equal(m.reshape(-1), psi.amps)
    assert abs(np.linalg.norm(m) - 1) < 1e-12


@given(states(1, 5), phases)
def test_global_phase_keeps_marginal(psi, phi):
    if psi.n < 2:
        return
    a = reduced_density_matrix(psi, 1).entries
    b = reduced_density_matrix(from_amplitudes(np.exp(1j * phi) * psi.amps), 1).entries
    np.testing.assert_allclose(a, b, atol=1e-14)
