"""Pauli algebra, the Jordan-Wigner transform, canonicalization,
qubit-wise-commuting grouping, and the text format."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from molq import (
    ANNIHILATION,
    CREATION,
    FermionOperator,
    FermionTerm,
    ParseError,
    PauliSum,
    PauliTerm,
    build_fermionic_hamiltonian,
    canonicalize,
    group_measurement_basis,
    jordan_wigner,
    parse_pauli,
    pauli_multiply,
    qwc_group,
    serialize_pauli,
)

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
Z = np.diag([1.0, -1.0]).astype(complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def term_matrix(term, n):
    """Dense matrix of a PauliTerm with qubit 0 as the least significant bit."""
    out = np.array([[term.coefficient]], dtype=complex)
    for q in range(n):
        out = np.kron(MATS[term.letters.get(q, "I")], out)
    return out


# ------------------------------------------------------------ pauli_multiply
def test_defining_relation_xy():
    out = pauli_multiply(PauliTerm(1.0, {0: "X"}), PauliTerm(1.0, {0: "Y"}))
    assert out.letters == {0: "Z"} and out.coefficient == 1j


def test_involution_zz():
    out = pauli_multiply(PauliTerm(1.0, {0: "Z"}), PauliTerm(1.0, {0: "Z"}))
    assert out.letters == {} and out.coefficient == 1.0


def test_two_qubit_product():
    out = pauli_multiply(
        PauliTerm(1.0, {0: "X", 1: "Y"}), PauliTerm(1.0, {0: "Y", 1: "Y"})
    )
    assert out.letters == {0: "Z"} and out.coefficient == 1j


def test_product_matches_dense_matrices():
    rng = np.random.default_rng(0)
    letters = ["I", "X", "Y", "Z"]
    for _ in range(50):
        n = int(rng.integers(1, 4))
        a = PauliTerm(1.0, {q: letters[rng.integers(1, 4)] for q in range(n) if rng.random() < 0.8})
        b = PauliTerm(1.0, {q: letters[rng.integers(1, 4)] for q in range(n) if rng.random() < 0.8})
        prod = pauli_multiply(a, b)
        assert_allclose(
            term_matrix(prod, n),
            term_matrix(a, n) @ term_matrix(b, n),
            rtol=0,
            atol=1e-14,
        )


def test_associativity_exact():
    rng = np.random.default_rng(11)
    letters = ["I", "X", "Y", "Z"]

    def rand(n):
        return PauliTerm(
            1.0, {q: letters[rng.integers(1, 4)] for q in range(n) if rng.random() < 0.7}
        )

    for _ in range(300):
        n = int(rng.integers(1, 6))
        a, b, c = rand(n), rand(n), rand(n)
        lhs = pauli_multiply(pauli_multiply(a, b), c)
        rhs = pauli_multiply(a, pauli_multiply(b, c))
        assert lhs.letters == rhs.letters and lhs.coefficient == rhs.coefficient


# ------------------------------------------------------------- jordan_wigner
def test_number_operator():
    op = FermionOperator(2, (FermionTerm(1.0, ((0, CREATION), (0, ANNIHILATION))),))
    s = canonicalize(jordan_wigner(op))
    table = {t.pattern_key(): t.coefficient for t in s.terms}
    assert table == {(): 0.5, ((0, "Z"),): -0.5}


def test_single_creation_operator():
    op = FermionOperator(1, (FermionTerm(1.0, ((0, CREATION),)),))
    s = jordan_wigner(op)
    table = {t.pattern_key(): t.coefficient for t in s.terms}
    assert table[((0, "X"),)] == 0.5
    assert table[((0, "Y"),)] == -0.5j


def test_hopping_term():
    op = FermionOperator(
        2,
        (
            FermionTerm(1.0, ((0, CREATION), (1, ANNIHILATION))),
            FermionTerm(1.0, ((1, CREATION), (0, ANNIHILATION))),
        ),
    )
    s = canonicalize(jordan_wigner(op))
    table = {t.pattern_key(): t.coefficient for t in s.terms}
    assert table == {((0, "X"), (1, "X")): 0.5, ((0, "Y"), (1, "Y")): 0.5}


def test_z_chain_between_distant_modes():
    op = FermionOperator(4, (FermionTerm(1.0, ((3, CREATION), (0, ANNIHILATION))),))
    s = canonicalize(jordan_wigner(op))
    for t in s.terms:
        letters = dict(t.pattern_key())
        assert letters.get(1) == "Z" and letters.get(2) == "Z"


def test_jw_matches_dense_anticommutation():
    # {a_p, a^dag_q} = delta_pq as 3-mode dense matrices
    n = 3
    for p in range(n):
        for q in range(n):
            ap = FermionOperator(n, (FermionTerm(1.0, ((p, ANNIHILATION),)),))
            aqd = FermionOperator(n, (FermionTerm(1.0, ((q, CREATION),)),))
            mp = sum(term_matrix(t, n) for t in jordan_wigner(ap).terms)
            mq = sum(term_matrix(t, n) for t in jordan_wigner(aqd).terms)
            anti = mp @ mq + mq @ mp
            expected = np.eye(2**n) if p == q else np.zeros((2**n, 2**n))
            assert_allclose(anti, expected, rtol=0, atol=1e-14)


def test_hermitian_input_gives_real_coefficients(h2_equilibrium):
    _, _, mo = h2_equilibrium
    s = jordan_wigner(build_fermionic_hamiltonian(mo))
    for t in s.terms:
        assert t.coefficient.imag == 0.0


def test_constant_becomes_identity_term():
    op = FermionOperator(2, (), constant=0.25)
    s = jordan_wigner(op)
    assert len(s.terms) == 1
    assert s.terms[0].letters == {} and s.terms[0].coefficient == 0.25


# ------------------------------------------------------------- canonicalize
def test_merge_duplicates():
    s = canonicalize(PauliSum(1, (PauliTerm(1.0, {0: "X"}), PauliTerm(1.0, {0: "X"}))))
    assert len(s.terms) == 1 and s.terms[0].coefficient == 2.0


def test_cancellation_drops_term():
    s = canonicalize(PauliSum(1, (PauliTerm(1.0, {0: "X"}), PauliTerm(-1.0, {0: "X"}))))
    assert not s.terms


def test_idempotent_on_random_sums():
    rng = np.random.default_rng(3)
    letters = ["I", "X", "Y", "Z"]
    for _ in range(20):
        n = int(rng.integers(1, 4))
        terms = tuple(
            PauliTerm(
                complex(rng.standard_normal(), rng.standard_normal()),
                {q: letters[rng.integers(1, 4)] for q in range(n) if rng.random() < 0.6},
            )
            for _ in range(rng.integers(1, 8))
        )
        once = canonicalize(PauliSum(n, terms))
        twice = canonicalize(once)
        assert [(t.pattern_key(), t.coefficient) for t in once.terms] == [
            (t.pattern_key(), t.coefficient) for t in twice.terms
        ]


# ---------------------------------------------------------------- qwc_group
def test_conflicting_terms_split():
    z0 = PauliTerm(1.0, {0: "Z"})
    z0z1 = PauliTerm(1.0, {0: "Z", 1: "Z"})
    x0 = PauliTerm(1.0, {0: "X"})
    groups = qwc_group(PauliSum(2, (z0, z0z1, x0)))
    assert len(groups) == 2
    assert {t.pattern_key() for t in groups[0]} == {z0.pattern_key(), z0z1.pattern_key()}
    assert {t.pattern_key() for t in groups[1]} == {x0.pattern_key()}


def test_identical_terms_one_group():
    terms = tuple(PauliTerm(float(k + 1), {0: "Y", 2: "Y"}) for k in range(4))
    groups = qwc_group(PauliSum(3, terms))
    assert len(groups) == 1 and len(groups[0]) == 4


def test_h2_hamiltonian_group_count(h2_hamiltonian):
    groups = qwc_group(h2_hamiltonian)
    assert len(groups) <= 5
    assert sum(len(g) for g in groups) == len(h2_hamiltonian.terms)


def test_group_measurement_basis_unions_letters():
    g = [PauliTerm(1.0, {0: "Z"}), PauliTerm(1.0, {0: "Z", 1: "X"})]
    assert group_measurement_basis(g) == {0: "Z", 1: "X"}


# --------------------------------------------------------------- text format
def test_serialize_parse_roundtrip(h2_hamiltonian):
    back = parse_pauli(serialize_pauli(h2_hamiltonian))
    assert back.n_qubits == h2_hamiltonian.n_qubits
    assert {t.pattern_key(): t.coefficient for t in back.terms} == pytest.approx(
        {t.pattern_key(): t.coefficient for t in h2_hamiltonian.terms}
    )


def test_serialize_pattern_orientation():
    # qubit 0 is printed leftmost
    s = PauliSum(3, (PauliTerm(1.0, {0: "X"}),))
    line = serialize_pauli(s).strip()
    assert line.split()[1] == "XII"


def test_parse_pauli_errors():
    with pytest.raises(ParseError):
        parse_pauli("1.0 XQ\n")
    with pytest.raises(ParseError) as err:
        parse_pauli("1.0 XI\nbroken\n")
    assert err.value.line == 2
