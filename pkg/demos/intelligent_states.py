"""Generalized intelligent states: squeezing with equality in the uncertainty relation.

lambda < 1 squeezes W, lambda > 1 squeezes P, and lambda = 1 is the
nonlinear coherent state again.  The ratio recursion must use sqrt(n) f(n)
over the previous ratio; the variant with n f(n)^2 there is shown failing.
"""

import numpy as np

from qnlo.fock_algebra import uncertainty_report
from qnlo.statevector import StateVector
from qnlo.states import build_gis, build_nlcs, eigen_residual, gis_ratios

print("alpha  lambda    dW       dP      |<G>|/2   dW dP - |<G>|/2   eigen residual")
for alpha in (1.0, 2.0):
    for lam in (0.3, 0.5, 1.0, 2.0):
        s = build_gis(alpha, lam)
        u = uncertainty_report(s)
        res = eigen_residual(s, "gis", alpha=alpha, lam=lam)
        print(f"{alpha:5.1f}  {lam:6.2f}  {u.dW:7.4f}  {u.dP:7.4f}  {abs(u.mean_g) / 2:8.4f}  "
              f"{u.saturation_residual:+.2e}        {res:.1e}")

print("\nlambda = 1 equals the coherent state exactly:",
      np.array_equal(build_gis(1.5, 1.0).coeffs, build_nlcs(1.5).coeffs))

s = build_gis(1.0, 0.5)
bad = np.r_[0, 0, 0, 1, np.cumprod(gis_ratios(1.0, 0.5, s.n_max - 1, printed=True))].astype(complex)
bad = StateVector(bad / np.linalg.norm(bad))
print("eigen residual with the n f(n)^2 weight in the one-step ratio:",
      f"{eigen_residual(bad, 'gis', alpha=1.0, lam=0.5):.2e}")
