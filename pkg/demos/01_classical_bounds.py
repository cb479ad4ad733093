"""
Classical coincidence bounds
============================

Any joint distribution over three bits A, B, C obeys two facts about the
pairwise agreement probabilities:

* summed over the three pairs they equal ``1 + 2 P(A=B=C)``, so the sum is
  never below 1;
* the same/notsame ratio depends only on ``P(A=B=C)`` and is exactly 1/2
  when the three bits never all agree.
"""

import numpy as np

from qcdivide import (IndependentSpec, coincidence_summary, independent_joint,
                      make_joint, pairwise_from_joint, psc_independent,
                      ratio_classical, triple_same)

rng = np.random.default_rng(0)

# A random joint: check the identity directly.
j = make_joint(rng.dirichlet(np.ones(8)))
s = coincidence_summary(pairwise_from_joint(j))
print("P_same per pair (AB, AC, BC):", np.round(s.p_same, 4))
print("sum              :", s.p_s_total)
print("1 + 2 P(A=B=C)   :", 1 + 2 * triple_same(j))
print("ratio            :", s.ratio, "vs", ratio_classical(triple_same(j)))

# Remove the all-equal outcomes: the ratio collapses to 1/2 whatever else we do.
w = rng.dirichlet(np.ones(8))
w[[0, 7]] = 0
no_triple = make_joint(w / w.sum())
print("\nno three-way agreement -> ratio", coincidence_summary(pairwise_from_joint(no_triple)).ratio)

# Independent variables: the summed agreement lives in [1, 3].
grid = np.linspace(0, 1, 21)
vals = [psc_independent(IndependentSpec(r, s_, t)) for r in grid for s_ in grid for t in grid]
print("\nindependent variables: min %.6f, max %.6f" % (min(vals), max(vals)))
print("r = s = t = 1/2:", psc_independent(IndependentSpec(0.5, 0.5, 0.5)))
print("matches the joint route:",
      coincidence_summary(pairwise_from_joint(independent_joint(IndependentSpec(0.5, 0.5, 0.5)))).p_s_total)
