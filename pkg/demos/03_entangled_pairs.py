"""
Entangled pairs in rotated bases
================================

For the state (r|00> + |11>)/sqrt(1+r^2), measured at 0, -60 and +60
degrees, the summed agreement drops below the classical floor of 1 for
r strictly between 3 - sqrt(8) and 3 + sqrt(8).
"""

import numpy as np

from qcdivide import (basis_from_k, entangled_pair, p_same, ratio_quantum,
                      separation_interval, triple_summary)
from qcdivide.quantum import COMPUTATIONAL, agreement_formula_audit

# Against a single rotated basis the agreement is 1/k for every r.
for k in (2, 3, 4):
    b = basis_from_k(k)
    vals = [p_same(entangled_pair(r), COMPUTATIONAL, b) for r in (0.0, 1.0, 5.0)]
    print(f"k={k} ({b.degrees:.2f} deg): P_same = {np.round(vals, 12)}")

print("\n   r    P_sq    ratio")
for r in (0.0, 0.17, 0.5, 1.0, 2.0, 5.83, 10.0):
    s = triple_summary(r)
    flag = "  < 1" if s.p_s_total < 1 else ""
    print(f"{r:5.2f}  {s.p_s_total:.4f}  {s.ratio:.4f}{flag}")

lo, hi = separation_interval()
print(f"\nviolation interval: ({lo:.6f}, {hi:.6f}); product of ends = {lo * hi:.12f}")
print("ratio at r = 1:", ratio_quantum(1.0))

# The simple agreement formula for a general real state drops the
# interference terms; it is exact only when a*b == c*d.
h = np.sqrt(0.5)
for row in (agreement_formula_audit(0.5, 0.5, 0.5, 0.5, 2), agreement_formula_audit(h, h, 0, 0, 2)):
    print(f"amps=({row['a']:.3f},{row['b']:.3f},{row['c']:.3f},{row['d']:.3f}) "
          f"interference-free={row['interference_free']:.3f} exact={row['exact']:.3f}")
