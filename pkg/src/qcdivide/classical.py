"""Classical (pre-assigned outcome) results for three binary variables."""

from __future__ import annotations

from dataclasses import dataclass

from .core import NEG_TOL, RATIO_TOL, JointDist3, make_joint
from .errors import DegenerateRatio, InvalidParameter


@dataclass(frozen=True)
class IndependentSpec:
    """P(A=1)=r, P(B=1)=s, P(C=1)=t for three independent variables."""

    r: float
    s: float
    t: float

    def __post_init__(self):
        for name in ("r", "s", "t"):
            v = getattr(self, name)
            if not (-NEG_TOL <= v <= 1 + NEG_TOL):
                raise InvalidParameter(f"{name}={v!r} is not a probability")


def triple_same(j: JointDist3) -> float:
    """Probability that A, B and C all agree: p000 + p111."""
    return j.p000 + j.p111


def ratio_classical(p_abc_same: float) -> float:
    """Same/notsame ratio of a classical joint given its three-way agreement.

    Parameters
    ----------
    p_abc_same : float
        P(A=B=C), i.e. ``triple_same`` of the joint.

    Returns
    -------
    float
        ``(1 + 2 p) / (2 (1 - p))``; equals 1/2 when no outcome is shared
        by all three variables.
    """
    if not (-NEG_TOL <= p_abc_same <= 1 + NEG_TOL):
        raise InvalidParameter(f"p_abc_same={p_abc_same!r} is not a probability")
    denom = 2.0 * (1.0 - p_abc_same)
    if abs(denom) < 2 * RATIO_TOL:
        raise DegenerateRatio("all three variables always agree; no 'notsame' outcomes")
    return (1.0 + 2.0 * p_abc_same) / denom


def notsame_total_classical(p_abc_same: float) -> float:
    """Summed pairwise disagreement of a classical joint, 2 - 2 P(A=B=C)."""
    return 2.0 - 2.0 * p_abc_same


def independent_joint(spec: IndependentSpec) -> JointDist3:
    probs = []
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                pa = spec.r if a else 1.0 - spec.r
                pb = spec.s if b else 1.0 - spec.s
                pc = spec.t if c else 1.0 - spec.t
                probs.append(pa * pb * pc)
    return make_joint(probs)


def psc_independent(spec: IndependentSpec) -> float:
    """Summed pairwise agreement for independent variables.

    Evaluates ``rs + (1-r)(1-s) + st + (1-s)(1-t) + rt + (1-r)(1-t)``,
    which always lies in [1, 3].
    """
    r, s, t = spec.r, spec.s, spec.t
    return (r * s + (1 - r) * (1 - s)
            + s * t + (1 - s) * (1 - t)
            + r * t + (1 - r) * (1 - t))


def psc_stationary_min(t: float) -> float:
    """Value of the independent-variable sum on its stationary set s = 1 - t.

    The minimum over the remaining free variable is ``1 + 2t - 2t**2``, whose
    least value over t in [0, 1] is 1.
    """
    return 1.0 + 2.0 * t - 2.0 * t * t
