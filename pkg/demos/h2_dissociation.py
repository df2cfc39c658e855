"""Dissociation curve of H2 in a minimal basis, three ways.

Scans the bond length, computing the Hartree-Fock mean-field energy, the
VQE energy with a UCCSD ansatz, and the exact (FCI-quality) energy from
dense diagonalization of the qubit Hamiltonian. Near equilibrium the three
agree to a few millihartree; as the bond stretches, the single-determinant
HF energy drifts far above the exact curve while UCCSD tracks it, which is
the textbook motivation for correlated methods.

Run from the repository root:  python3 demos/h2_dissociation.py
"""

import numpy as np

from molq import ScanSpec, emit_curve, run_scan

lengths = [round(x, 2) for x in np.arange(0.4, 2.61, 0.2)]
spec = ScanSpec(
    molecule="H2",
    bond_lengths=lengths,
    fragment_a=[("H", (0.0, 0.0, 0.0))],
    fragment_b=[("H", (0.0, 0.0, 0.0))],
    basis="sto-3g",
    methods=("hf", "vqe", "exact"),
    ansatz="uccsd",
    optimizer="nelder_mead",
    budget=2000,
    seed=0,
)

print(f"Scanning H2/STO-3G at {len(lengths)} bond lengths...\n")
records = run_scan(spec)

print(f"{'R (A)':>6} {'E_HF (Ha)':>14} {'E_VQE (Ha)':>14} "
      f"{'E_exact (Ha)':>14} {'corr (mHa)':>11} {'VQE err':>9}")
for r in records:
    correlation = (r.e_hf - r.e_exact) * 1e3
    vqe_error = abs(r.e_vqe - r.e_exact)
    print(f"{r.bond_length:6.2f} {r.e_hf:14.8f} {r.e_vqe:14.8f} "
          f"{r.e_exact:14.8f} {correlation:11.3f} {vqe_error:9.1e}")

exact = [r.e_exact for r in records]
best = records[int(np.argmin(exact))]
print(f"\nMinimum of the exact curve: {best.e_exact:.8f} Ha "
      f"at {best.bond_length:.2f} A")
print("Correlation energy (E_HF - E_exact) grows from a few mHa at "
      "equilibrium\nto >100 mHa in the dissociation limit; UCCSD stays at "
      "chemical accuracy\n(|error| <= 1.6 mHa) across the whole range.")

print("\nCSV form (emit_curve):\n")
print(emit_curve(records), end="")
