"""The oscillator with mass m(y) = ((g + y^2)/(1 + y^2))^2.

A point canonical transformation eta(y) = y + (g - 1) arctan y carries every
eigenfunction and every coherent state over, with the same Fock amplitudes.
At g = 1 everything reduces to the constant-mass case.
"""

import math

import numpy as np

from qnlo import pdm
from qnlo.states import build_gk, synthesize_position

two = pdm.MassProfile.rational(2.0)
y = np.linspace(-6, 6, 481)

print("eta(1) =", pdm.eta(two, 1.0), " 1 + pi/4 =", 1 + math.pi / 4)
print("mass term at y = 0:", pdm.rational_mass_term(2.0, 0.0))

print("\nlevel  <psi|psi>     Schrodinger residual")
for n in (0, 3, 4, 6):
    print(f"{n:5d}  {pdm.pdm_overlap(n, n, two):.10f}  {pdm.pdm_residual(n, two, y).max():.1e}")

print("\nladder contracts (ordered derivative vs the bare m^-1/2 d/dy):")
for n in (4, 6, 8):
    good = max(pdm.ladder_contract_error(n, two, y).values())
    bare = max(pdm.ladder_contract_error(n, two, y, mode="literal").values())
    print(f"  n={n}: {good:.1e}   {bare:.1e}")

s = build_gk(1.2, 0.3)
wide = np.linspace(-14, 14, 8001)
print("\nGK state norm with mass:", pdm.pdm_norm(pdm.pdm_state(s, two, wide), wide))
one = pdm.MassProfile.rational(1.0)
print("g = 1 reduction error:", np.abs(pdm.pdm_state(s, one, y) - synthesize_position(s, y)).max())
