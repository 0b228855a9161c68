"""Photon statistics of the nonlinear coherent state.

Three independent routes to <n>, Q and g2: direct sums over the amplitudes,
closed hypergeometric forms, and derivatives of the normalization series.
They should agree, and Q stays negative (sub-Poissonian) for every r.
"""

import math

from qnlo import statistics as st
from qnlo.states import build_nlcs

print("    r    <n> direct      <n> closed      Q            g2        normalization route Q")
for r in (0.0, 0.25, 1.0, 4.0, 9.0, 16.0, 20.0):
    s = build_nlcs(math.sqrt(r))
    rep = st.statistics_report(s)
    nf = st.stats_from_normalization(r).q if r > 0 else float("nan")
    print(f"{r:5.2f}  {rep.mean_n:14.10f}  {rep.closed_form.mean_n:14.10f}  "
          f"{rep.mandel_q:+.8f}  {rep.g2:.8f}  {nf:+.8f}")

p = st.photon_distribution(build_nlcs(2.0))
print("\nP(n) at r = 4:", ", ".join(f"{n}:{v:.4f}" for n, v in p.items() if v > 1e-4))

print("\ncompleteness integrals against 1/4 Gamma((n-2)^2) Gamma(n+1):")
for n in (3, 4, 5, 6):
    c = st.completeness_integral(n)
    print(f"  n={n}: {c.numeric:.10g} vs {c.gamma_form:.10g}   {c.note}")
