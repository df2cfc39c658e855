"""Exact ground-state energies.

Two independent paths: dense diagonalization of a qubit PauliSum, and a
determinant-basis FCI oracle built directly from the MO integrals via
Slater-Condon rules (never touching the fermion/qubit pipeline). Their
agreement is the main correctness check of the whole package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import ResourceError, UsageError
from .integrals_io import MOIntegrals
from .pauli import PauliSum
from .statevector import Statevector

DENSE_MAX_QUBITS = 14
FCI_MAX_ORBITALS = 6


@dataclass
class SpectrumResult:
    ground_energy: float
    ground_vector: Statevector | None
    n_qubits: int


def pauli_matrix(s: PauliSum) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a PauliSum (little-endian basis order).

    For a string P, P|b> = i^{#Y} (-1)^{popcount(b & (Ymask|Zmask))} |b ^ flip>
    with flip the X|Y support, which fills one diagonal band per term.
    """
    dim = 2**s.n_qubits
    mat = np.zeros((dim, dim), dtype=complex)
    idx = np.arange(dim, dtype=np.int64)
    for term in s.terms:
        xm = ym = zm = 0
        for q, letter in term.letters.items():
            bit = 1 << q
            if letter == "X":
                xm |= bit
            elif letter == "Y":
                ym |= bit
            else:
                zm |= bit
        par = np.zeros(dim, dtype=np.int64)
        mask, q = ym | zm, 0
        while mask:
            if mask & 1:
                par ^= (idx >> q) & 1
            mask >>= 1
            q += 1
        values = complex(term.coefficient) * (1j) ** bin(ym).count("1") * (1.0 - 2.0 * par)
        mat[idx ^ (xm | ym), idx] += values
    return mat


def dense_ground_energy(h: PauliSum) -> SpectrumResult:
    """Minimal eigenvalue of the materialized Hermitian matrix."""
    if h.n_qubits > DENSE_MAX_QUBITS:
        raise ResourceError(
            f"{h.n_qubits} qubits exceeds the {DENSE_MAX_QUBITS}-qubit dense guard"
        )
    mat = pauli_matrix(h)
    if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
        raise UsageError("PauliSum is not Hermitian")
    eigenvalues, eigenvectors = np.linalg.eigh(mat)
    vector = Statevector(h.n_qubits, eigenvectors[:, 0].astype(complex))
    return SpectrumResult(
        ground_energy=float(eigenvalues[0]),
        ground_vector=vector,
        n_qubits=h.n_qubits,
    )


def _parity_below(mask: int, orbital: int) -> int:
    return bin(mask & ((1 << orbital) - 1)).count("1") & 1


def _single_phase(det: int, hole: int, particle: int) -> int:
    sign = _parity_below(det, hole)
    det ^= 1 << hole
    sign ^= _parity_below(det, particle)
    return -1 if sign else 1


def _double_phase(det: int, holes, particles) -> int:
    """Phase of a+_{p1} a+_{p2} a_{h2} a_{h1} |det> with holes=(h1,h2),
    particles=(p1,p2)."""
    sign = 0
    m = det
    for hole in holes:
        sign ^= _parity_below(m, hole)
        m ^= 1 << hole
    for particle in reversed(particles):
        sign ^= _parity_below(m, particle)
        m |= 1 << particle
    return -1 if sign else 1


def fci_determinant_oracle(mo: MOIntegrals) -> float:
    """Lowest eigenvalue over all (n_alpha = n_beta = n_e/2) determinants
    plus e_core, assembled from h, g with Slater-Condon rules.

    Spin orbital P < n is spatial P with alpha spin; P >= n is spatial P-n
    with beta spin (blocked ordering, matching the rest of the package).
    """
    n = mo.n_orbitals
    if n > FCI_MAX_ORBITALS:
        raise ResourceError(
            f"{n} orbitals exceeds the {FCI_MAX_ORBITALS}-orbital FCI guard"
        )
    if mo.n_electrons % 2 != 0:
        raise UsageError("FCI oracle covers closed-shell electron counts only")
    n_pair = mo.n_electrons // 2
    if n_pair > n:
        raise UsageError("more electron pairs than orbitals")

    h, g = mo.h, mo.g

    def spatial_spin(p):
        return (p, 0) if p < n else (p - n, 1)

    def h1(p, q):
        (ps, pspin), (qs, qspin) = spatial_spin(p), spatial_spin(q)
        return h[ps, qs] if pspin == qspin else 0.0

    def coulomb(p, q, r, s):
        # <pq|rs> = (pr|qs) with spin deltas between p,r and q,s
        (ps, pspin), (qs, qspin) = spatial_spin(p), spatial_spin(q)
        (rs_, rspin), (ss, sspin) = spatial_spin(r), spatial_spin(s)
        if pspin != rspin or qspin != sspin:
            return 0.0
        return g[ps, rs_, qs, ss]

    def anti(p, q, r, s):
        return coulomb(p, q, r, s) - coulomb(p, q, s, r)

    dets = []
    for alpha in itertools.combinations(range(n), n_pair):
        for beta in itertools.combinations(range(n), n_pair):
            mask = 0
            for a in alpha:
                mask |= 1 << a
            for b in beta:
                mask |= 1 << (b + n)
            dets.append(mask)

    def occupied(mask):
        return [p for p in range(2 * n) if mask >> p & 1]

    size = len(dets)
    mat = np.zeros((size, size))
    for col, d1 in enumerate(dets):
        occ1 = occupied(d1)
        for row, d2 in enumerate(dets):
            if row < col:
                continue  # fill lower triangle, mirror afterwards
            diff = d1 ^ d2
            n_diff = bin(diff).count("1")
            if n_diff == 0:
                value = sum(h1(p, p) for p in occ1)
                value += 0.5 * sum(
                    anti(p, q, p, q) for p in occ1 for q in occ1
                )
            elif n_diff == 2:
                hole = (d1 & diff).bit_length() - 1
                particle = (d2 & diff).bit_length() - 1
                common = occupied(d1 & d2)
                value = h1(particle, hole) + sum(
                    anti(particle, q, hole, q) for q in common
                )
                value *= _single_phase(d1, hole, particle)
            elif n_diff == 4:
                holes = occupied(d1 & diff)
                particles = occupied(d2 & diff)
                value = _double_phase(d1, holes, particles) * anti(
                    particles[0], particles[1], holes[0], holes[1]
                )
            else:
                continue
            mat[row, col] = value
            mat[col, row] = value
    eigenvalues = np.linalg.eigvalsh(mat)
    return float(eigenvalues[0] + mo.e_core)
