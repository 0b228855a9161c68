"""Even and odd nonlinear coherent states.

They live on even (n >= 4) and odd (n >= 3) levels, are orthogonal, and
both stay sub-Poissonian.  The closed 0F5 / 1F6 forms are checked against
the amplitude sums and any mismatch is reported.
"""

import math

from qnlo import statistics as st
from qnlo.states import build_even, build_odd

print("    r   even <n>    even Q      odd <n>     odd Q     closed-form mismatch")
for r in (0.0, 1.0, 5.0, 10.0, 20.0):
    e = st.statistics_report(build_even(math.sqrt(r)))
    o = st.statistics_report(build_odd(math.sqrt(r)))
    print(f"{r:5.1f}  {e.mean_n:9.5f}  {e.mandel_q:+9.5f}  {o.mean_n:9.5f}  {o.mandel_q:+9.5f}  "
          f"{max(e.discrepancy, o.discrepancy):.1e}")

a = build_even(2.0)
b = build_odd(2.0)
print("\n<even|odd> =", a.inner(b))
print("even support starts at", min(a.support), "odd at", min(b.support))
