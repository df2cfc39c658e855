"""Dense diagonalization and the determinant-basis FCI oracle."""

import numpy as np
import pytest

from molq import (
    build_fermionic_hamiltonian,
    dense_ground_energy,
    fci_determinant_oracle,
    jordan_wigner,
    pauli_matrix,
)
from molq.errors import ResourceError, UsageError
from molq.exact import DENSE_MAX_QUBITS
from molq.integrals_io import MOIntegrals
from molq.pauli import PauliSum, PauliTerm
from molq.statevector import Statevector, expectation

from conftest import penalty_strength, random_mo_integrals, with_number_penalty

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def single(n, letters, coefficient=1.0):
    return PauliSum(n, (PauliTerm(coefficient, letters),))


# ---------------------------------------------------------------------------
# pauli_matrix
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "letter,expected", [("X", X), ("Y", Y), ("Z", Z)], ids=["X", "Y", "Z"]
)
def test_pauli_matrix_single_qubit(letter, expected):
    assert np.allclose(pauli_matrix(single(1, {0: letter})), expected)


def test_pauli_matrix_identity_term():
    mat = pauli_matrix(single(2, {}, 2.5))
    assert np.allclose(mat, 2.5 * np.eye(4))


def test_pauli_matrix_qubit_zero_is_least_significant():
    # Z on qubit 0 of two qubits: diagonal (+1, -1, +1, -1) in index order.
    mat = pauli_matrix(single(2, {0: "Z"}))
    assert np.allclose(np.diag(mat), [1, -1, 1, -1])
    mat = pauli_matrix(single(2, {1: "Z"}))
    assert np.allclose(np.diag(mat), [1, 1, -1, -1])


def test_pauli_matrix_two_qubit_kron():
    # X on qubit 0, Y on qubit 1 -> kron(Y, X) with qubit 0 least significant.
    mat = pauli_matrix(single(2, {0: "X", 1: "Y"}))
    assert np.allclose(mat, np.kron(Y, X))


def test_pauli_matrix_sums_terms():
    s = PauliSum(1, (PauliTerm(0.5, {0: "X"}), PauliTerm(-2.0, {0: "Z"})))
    assert np.allclose(pauli_matrix(s), 0.5 * X - 2.0 * Z)


# ---------------------------------------------------------------------------
# dense_ground_energy
# ---------------------------------------------------------------------------


def test_dense_ground_energy_single_z():
    result = dense_ground_energy(single(1, {0: "Z"}))
    assert result.ground_energy == pytest.approx(-1.0, abs=1e-12)


def test_dense_ground_energy_single_x():
    result = dense_ground_energy(single(1, {0: "X"}))
    assert result.ground_energy == pytest.approx(-1.0, abs=1e-12)


def test_dense_ground_vector_is_eigenvector(h2_hamiltonian):
    result = dense_ground_energy(h2_hamiltonian)
    assert isinstance(result.ground_vector, Statevector)
    assert result.n_qubits == h2_hamiltonian.n_qubits
    energy = expectation(result.ground_vector, h2_hamiltonian)
    assert energy == pytest.approx(result.ground_energy, abs=1e-10)


def test_dense_ground_energy_h2(h2_hamiltonian):
    result = dense_ground_energy(h2_hamiltonian)
    assert result.ground_energy == pytest.approx(-1.1373058080797822, abs=1e-9)
    assert abs(result.ground_energy - (-1.1373)) <= 0.0010


def test_dense_rejects_non_hermitian():
    s = PauliSum(1, (PauliTerm(1.0j, {0: "Z"}),))
    with pytest.raises(UsageError):
        dense_ground_energy(s)


def test_dense_qubit_guard():
    s = single(DENSE_MAX_QUBITS + 1, {0: "Z"})
    with pytest.raises(ResourceError):
        dense_ground_energy(s)


# ---------------------------------------------------------------------------
# fci_determinant_oracle
# ---------------------------------------------------------------------------


def test_fci_zero_integrals_returns_core():
    mo = MOIntegrals(2, 2, np.zeros((2, 2)), np.zeros((2, 2, 2, 2)), e_core=-3.25)
    assert fci_determinant_oracle(mo) == pytest.approx(-3.25, abs=1e-14)


def test_fci_h2_equilibrium(h2_equilibrium):
    _, _, mo = h2_equilibrium
    energy = fci_determinant_oracle(mo)
    assert energy == pytest.approx(-1.1373058080797822, abs=1e-9)


def test_fci_matches_dense_h2(h2_equilibrium, h2_hamiltonian):
    _, _, mo = h2_equilibrium
    assert fci_determinant_oracle(mo) == pytest.approx(
        dense_ground_energy(h2_hamiltonian).ground_energy, abs=1e-9
    )


def test_fci_below_hf(h2_equilibrium):
    _, scf, mo = h2_equilibrium
    assert fci_determinant_oracle(mo) < scf.e_hf


def test_fci_matches_dense_random_integrals():
    """Random Hermitian integrals: oracle == dense qubit ground energy.

    The qubit spectrum spans all particle-number sectors while the oracle
    fixes n_e, so a number penalty pins the dense ground state to the same
    sector before comparing.
    """
    rng = np.random.default_rng(7)
    for trial in range(6):
        n = 2 if trial % 2 == 0 else 3
        n_e = 2
        mo = random_mo_integrals(rng, n, n_e, scale=0.5)
        reference = fci_determinant_oracle(mo)
        penalized = with_number_penalty(mo, penalty_strength(mo))
        dense = dense_ground_energy(
            jordan_wigner(build_fermionic_hamiltonian(penalized))
        ).ground_energy
        assert dense == pytest.approx(reference, abs=1e-9)


def test_fci_orbital_guard():
    n = 7
    mo = MOIntegrals(n, 2, np.zeros((n, n)), np.zeros((n, n, n, n)), e_core=0.0)
    with pytest.raises(ResourceError):
        fci_determinant_oracle(mo)


def test_fci_rejects_odd_electrons():
    mo = MOIntegrals(2, 3, np.zeros((2, 2)), np.zeros((2, 2, 2, 2)), e_core=0.0)
    with pytest.raises(UsageError):
        fci_determinant_oracle(mo)


def test_fci_rejects_overfull():
    mo = MOIntegrals(2, 6, np.zeros((2, 2)), np.zeros((2, 2, 2, 2)), e_core=0.0)
    with pytest.raises(UsageError):
        fci_determinant_oracle(mo)
