"""
Is pairwise data classical at all?
==================================

Given only pairwise information, three checks of increasing strength ask
whether a single joint distribution could have produced it.
"""

from qcdivide import (BooleTriple, PairwiseMarginals, boole_check,
                      coincidence_summary, full_check, make_joint,
                      pairwise_from_joint)

# Event probabilities P(AB)=0.4, P(BC)=2/3, P(AC)=0.8 cannot coexist.
rep = boole_check(BooleTriple(0.4, 2 / 3, 0.8))
print("Boole consistent:", rep.boole_ok, "| violated:", rep.violated_boole)
print("slacks:", [round(x, 4) for x in rep.boole_slacks])

# Pair tables that pass the summed-agreement test but disagree on the
# single-variable marginals.
tables = PairwiseMarginals.from_mapping({
    "AB": (0.3, 0.2, 0.3, 0.2),
    "BC": (0.15, 0.35, 0.25, 0.25),
    "AC": (0.1, 0.4, 0.2, 0.3),
})
print("\nsummed agreement:", coincidence_summary(tables).p_s_total)
rep = full_check(tables)
for eq in rep.marginal_equations:
    print(f"  {eq.name:5s} {eq.lhs:.2f} vs {eq.rhs:.2f}  {'ok' if eq.holds else 'VIOLATED'}")
print("feasible:", rep.feasible)

# Tables derived from a real joint always reconstruct; the interval gives
# every admissible value of P(A=B=C=1).
j = make_joint([0.2, 0.1, 0.05, 0.15, 0.1, 0.1, 0.1, 0.2])
rep = full_check(pairwise_from_joint(j))
print("\nfeasible:", rep.feasible, "| p111 interval:", rep.witness.h_interval, "| true p111:", j.p111)
