"""Gazeau-Klauder states: temporal stability and the action identity.

Evolving for time t only shifts the phase parameter, and <H> equals |z|^2
for every z.  The photon statistics are those of the coherent state with
r = |z|^2, because the phases drop out of |c_n|^2.
"""

import numpy as np

from qnlo import statistics as st
from qnlo.fock_algebra import energy_raw
from qnlo.states import build_gk, gk_evolve

for z in (0.5, 1.0, 3.0):
    p = build_gk(z, 0.4).probabilities()
    h = float(np.dot(energy_raw(np.arange(p.size)), p))
    print(f"|z| = {z}: <H> = {h:.12f}, |z|^2 = {z * z}")

s = build_gk(1.0, 0.2)
moved = gk_evolve(s, 0.5)
print("\nevolved vs rebuilt at gamma + t:", np.abs(moved.coeffs - build_gk(1.0, 0.7).coeffs).max())

rep = st.statistics_report(build_gk(2.0, 1.3))
print(f"Q at |z|^2 = 4: {rep.mandel_q:.10f} (coherent-state closed form {st.nlcs_closed_forms(4.0).q:.10f})")
