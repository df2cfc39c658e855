"""Pauli-string algebra and the Jordan-Wigner transform.

A Pauli term stores only its non-identity letters as a qubit -> letter map.
Jordan-Wigner maps ladder operators to strings with Z parity chains:

    a+_p -> 1/2 (X_p - i Y_p) Z_{p-1} ... Z_0
    a_p  -> 1/2 (X_p + i Y_p) Z_{p-1} ... Z_0
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, UsageError
from .fermion import ANNIHILATION, CREATION, FermionOperator

COEFF_DROP = 1e-12

# Single-qubit products P1 * P2 -> (phase, letter); None letter = identity.
_PRODUCTS = {
    ("X", "X"): (1, None),
    ("Y", "Y"): (1, None),
    ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}


@dataclass
class PauliTerm:
    """coefficient * tensor product of letters (identity on absent qubits)."""

    coefficient: complex
    letters: dict = field(default_factory=dict)

    def __post_init__(self):
        for qubit, letter in self.letters.items():
            if letter not in ("X", "Y", "Z"):
                raise UsageError(f"bad Pauli letter {letter!r} on qubit {qubit}")
            if qubit < 0:
                raise UsageError(f"negative qubit index {qubit}")

    @property
    def weight(self) -> int:
        return len(self.letters)

    def pattern_key(self):
        return tuple(sorted(self.letters.items()))

    def pattern(self, n_qubits: int) -> str:
        return "".join(self.letters.get(q, "I") for q in range(n_qubits))


@dataclass
class PauliSum:
    n_qubits: int
    terms: list = field(default_factory=list)

    def __post_init__(self):
        for term in self.terms:
            for qubit in term.letters:
                if qubit >= self.n_qubits:
                    raise UsageError(
                        f"qubit {qubit} outside 0..{self.n_qubits - 1}"
                    )


def pauli_multiply(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """Product of two terms: per-qubit letter products with accumulated phase."""
    coeff = a.coefficient * b.coefficient
    letters = dict(a.letters)
    for qubit, lb in b.letters.items():
        la = letters.pop(qubit, None)
        if la is None:
            letters[qubit] = lb
            continue
        phase, lc = _PRODUCTS[(la, lb)]
        coeff *= phase
        if lc is not None:
            letters[qubit] = lc
    return PauliTerm(coeff, letters)


def canonicalize(s: PauliSum) -> PauliSum:
    """Merge equal patterns, drop |c| < 1e-12, sort by (weight, pattern)."""
    merged = {}
    for term in s.terms:
        key = term.pattern_key()
        merged[key] = merged.get(key, 0.0) + term.coefficient
    terms = [
        PauliTerm(coeff, dict(key))
        for key, coeff in merged.items()
        if abs(coeff) >= COEFF_DROP
    ]
    terms.sort(key=lambda t: (t.weight, t.pattern(s.n_qubits)))
    return PauliSum(n_qubits=s.n_qubits, terms=terms)


def _ladder_strings(mode: int, kind: str) -> list:
    """The two Pauli terms of a JW-mapped ladder operator on `mode`."""
    chain = {q: "Z" for q in range(mode)}
    sign = -0.5j if kind == CREATION else 0.5j
    x_term = PauliTerm(0.5, {**chain, mode: "X"})
    y_term = PauliTerm(sign, {**chain, mode: "Y"})
    return [x_term, y_term]


def jordan_wigner(op: FermionOperator) -> PauliSum:
    """Map a FermionOperator to a canonicalized PauliSum.

    The constant offset becomes the identity-term coefficient. When the
    image is real up to 1e-12 (always the case for Hermitian input) the
    imaginary parts are truncated.
    """
    terms = []
    if op.constant != 0.0:
        terms.append(PauliTerm(complex(op.constant), {}))
    for fterm in op.terms:
        partial = [PauliTerm(complex(fterm.coefficient), {})]
        for mode, kind in fterm.factors:
            expansion = _ladder_strings(mode, kind)
            partial = [pauli_multiply(p, e) for p in partial for e in expansion]
        terms.extend(partial)
    result = canonicalize(PauliSum(n_qubits=op.n_modes, terms=terms))
    if all(abs(t.coefficient.imag) <= 1e-12 for t in result.terms):
        for t in result.terms:
            t.coefficient = t.coefficient.real
    return result


def qwc_group(s: PauliSum) -> list:
    """Greedy first-fit grouping of terms into qubit-wise-commuting sets.

    Two terms fit together iff on every qubit their letters agree or at
    least one is identity. Returns a list of term lists covering the input.
    """
    groups = []
    bases = []  # per group, the union letter map
    for term in s.terms:
        for group, basis in zip(groups, bases):
            if all(basis.get(q, letter) == letter for q, letter in term.letters.items()):
                group.append(term)
                basis.update(term.letters)
                break
        else:
            groups.append([term])
            bases.append(dict(term.letters))
    return groups


def group_measurement_basis(group: list) -> dict:
    """Union letter map of a QWC group: the shared measurement basis."""
    basis = {}
    for term in group:
        for qubit, letter in term.letters.items():
            if basis.setdefault(qubit, letter) != letter:
                raise UsageError("terms do not qubit-wise commute")
    return basis


def _format_coefficient(c) -> str:
    c = complex(c)
    if abs(c.imag) <= 1e-12:
        return repr(c.real)
    return repr(c)


def serialize_pauli(s: PauliSum) -> str:
    """One `<coeff> <pattern>` line per term, qubit 0 leftmost in the pattern."""
    lines = [
        f"{_format_coefficient(t.coefficient)} {t.pattern(s.n_qubits) or 'I' * max(s.n_qubits, 1)}"
        for t in s.terms
    ]
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


_PAULI_LINE = re.compile(r"^\s*(?P<coeff>\S+)\s+(?P<pattern>[IXYZ]+)\s*$")


def parse_pauli(text: str) -> PauliSum:
    """Inverse of serialize_pauli; n_qubits is the pattern length."""
    terms = []
    n_qubits = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _PAULI_LINE.match(line)
        if m is None:
            raise ParseError(f"malformed Pauli line: {line!r}", line=lineno)
        try:
            coeff = complex(m.group("coeff"))
        except ValueError:
            raise ParseError(f"bad coefficient {m.group('coeff')!r}", line=lineno)
        if abs(coeff.imag) <= 1e-12:
            coeff = coeff.real
        pattern = m.group("pattern")
        n_qubits = max(n_qubits, len(pattern))
        letters = {q: c for q, c in enumerate(pattern) if c != "I"}
        terms.append(PauliTerm(coeff, letters))
    return PauliSum(n_qubits=n_qubits, terms=terms)
