"""Eigenfunctions of the solvable oscillator and its deformed ladder operators.

The spectrum is n - 3/2 for n = 0, 3, 4, 5, ...  Levels 1 and 2 do not
exist, and the ground state decouples from everything above it.  Run with
python demos/wavefunctions_and_ladders.py
"""

import math

import numpy as np

from qnlo import wavefunctions as wf
from qnlo.fock_algebra import commutator_check, deformation_f

x = np.linspace(-5, 5, 401)

print("level  energy   <n|n>        max Schrodinger residual")
for n in (0, 3, 4, 5, 8):
    print(f"{n:5d}  {wf.energy(n):6.2f}  {wf.overlap(n, n):.12f}  {wf.schrodinger_residual(n, x).max():.2e}")

# The differential operators reproduce sqrt(n) f(n) on the Fock basis
print("\nA psi_n vs sqrt(n) f(n) psi_{n-1}:")
for n in range(4, 9):
    want = math.sqrt(n) * deformation_f(n) * wf.psi(n - 1, x)
    err = np.abs(wf.apply_A_differential(n, x) - want).max()
    print(f"  n={n}: factor {math.sqrt(n) * deformation_f(n):8.4f}, max error {err:.1e}")

print("\nA|3> vanishes:", np.abs(wf.apply_A_differential(3, x)).max())

rep = commutator_check(6)
print(f"\nresiduals on |6> of [a, a+] = 1, [a, n] = a, [a+, n] = -a+: "
      f"{rep.canonical:.1e}, {rep.lowering:.1e}, {rep.raising:.1e}")
