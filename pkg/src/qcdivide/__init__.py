"""Tell classical from quantum coincidence statistics of three binary measurements.

The central quantity is the ratio of "same" to "notsame" outcomes summed
over the three measurement pairs (AB, AC, BC).  Any classical joint with no
three-way agreement gives 1/2; a maximally entangled pair measured at
0, -60 and +60 degrees gives 1/3.
"""

from .classical import (IndependentSpec, independent_joint, psc_independent,
                        ratio_classical, triple_same)
from .consistency import (BooleTriple, ConsistencyReport, FeasibilityWitness,
                          bell_sum_check, boole_check, full_check,
                          marginal_check, reconstruct_joint)
from .core import (PAIRS, CoincidenceSummary, JointDist3, PairId, PairTable,
                   PairwiseMarginals, coincidence_summary, make_joint,
                   pairwise_from_joint)
from .errors import (DegenerateRatio, InconsistentMarginals, InvalidParameter,
                     NegativeProbability, NotNormalized, QCDivideError,
                     UndefinedRatio)
from .experiment import (CountTable, Label, NoiseSpec, RatioEstimate, Verdict,
                         classify, estimate, sample_classical, sample_quantum)
from .quantum import (DEFAULT_BASES, BasisTriple, MeasBasis, PureTwoQubitState,
                      basis_from_k, entangled_pair, exact_agreement, interference_free_agreement,
                      joint_probs, p_same, ratio_quantum, ratio_two_bases,
                      rebase, separation_interval, triple_summary)

__version__ = "0.1.0"
