"""Can given pairwise data come from one classical joint distribution?

Four checks are provided, from weakest to strongest:

* `boole_check` -- Boole's inequalities on pairwise event probabilities.
* `bell_sum_check` -- summed pairwise agreement must be at least 1.
* `marginal_check` -- every single-variable marginal must be the same
  whichever pair table it is read from.
* `reconstruct_joint` -- explicit search for a nonnegative joint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (NEG_TOL, NORM_TOL, CoincidenceSummary, JointDist3,
                   PairwiseMarginals, coincidence_summary, make_joint)
from .errors import InconsistentMarginals, InvalidParameter

BOOLE_LABELS = ("r >= s + t - 1", "s >= t + r - 1", "t >= r + s - 1")


@dataclass(frozen=True)
class BooleTriple:
    """Joint-occurrence probabilities r = P(AB), s = P(BC), t = P(AC)."""

    r: float
    s: float
    t: float

    def __post_init__(self):
        for name in ("r", "s", "t"):
            v = getattr(self, name)
            if not (-NEG_TOL <= v <= 1 + NEG_TOL):
                raise InvalidParameter(f"{name}={v!r} is not a probability")


@dataclass(frozen=True)
class FeasibilityWitness:
    """Venn-region probabilities of a joint consistent with the input.

    ``lam`` = P(ABC), ``mu`` = P(AB not C), ``nu`` = P(A not B C),
    ``eta`` = P(not A BC).  ``h_interval`` is the range of P(ABC) over which
    a nonnegative joint exists; the witness sits at its midpoint.  ``joint``
    is filled when single marginals were available.
    """

    lam: float
    mu: float
    nu: float
    eta: float
    h_interval: tuple[float, float]
    joint: Optional[JointDist3] = None


@dataclass(frozen=True)
class MarginalEquation:
    name: str
    lhs: float
    rhs: float
    holds: bool

    @property
    def gap(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of one or more checks; fields of checks not run stay None."""

    boole_ok: Optional[bool] = None
    boole_slacks: tuple[float, ...] = ()
    violated_boole: tuple[str, ...] = ()
    marginal_ok: Optional[bool] = None
    marginal_equations: tuple[MarginalEquation, ...] = ()
    violated_marginal: tuple[str, ...] = ()
    bell_sum: Optional[float] = None
    bell_ok: Optional[bool] = None
    feasible: Optional[bool] = None
    witness: Optional[FeasibilityWitness] = None
    notes: tuple[str, ...] = field(default=())

    def merge(self, other: "ConsistencyReport") -> "ConsistencyReport":
        """Combine two partial reports; fields set in ``other`` win."""
        out = {}
        for name in self.__dataclass_fields__:
            mine, theirs = getattr(self, name), getattr(other, name)
            out[name] = theirs if theirs not in (None, ()) else mine
        return ConsistencyReport(**out)


def boole_check(b: BooleTriple) -> ConsistencyReport:
    slacks = (b.r - (b.s + b.t - 1.0),
              b.s - (b.t + b.r - 1.0),
              b.t - (b.r + b.s - 1.0))
    violated = tuple(lbl for lbl, sl in zip(BOOLE_LABELS, slacks) if sl < -NEG_TOL)
    witness = None
    if not violated:
        # Let the three pairwise regions absorb everything; the remaining
        # mass 1 - (union) must be nonnegative: lam >= (r+s+t-1)/2.
        lo = max(0.0, (b.r + b.s + b.t - 1.0) / 2.0)
        hi = min(b.r, b.s, b.t)
        lam = min(max((lo + hi) / 2.0, 0.0), hi)
        witness = FeasibilityWitness(lam=lam, mu=b.r - lam, nu=b.t - lam,
                                     eta=b.s - lam, h_interval=(lo, hi))
    return ConsistencyReport(boole_ok=not violated, boole_slacks=slacks,
                             violated_boole=violated, witness=witness)


def abs_form_holds(b: BooleTriple) -> bool:
    """``|P(AB) - P(AC)| <= 1 - P(BC)``, i.e. the s-centred pair of Boole bounds."""
    return abs(b.r - b.t) <= 1.0 - b.s + NEG_TOL


def _single_routes(m: PairwiseMarginals):
    """Each single-variable marginal read from its two pair tables.

    Returns ``(name, label, route1, route2)`` rows for value 0 then value 1,
    ordered to match the p_A, p_B, p_C equations.
    """
    ab, ac, bc = m.ab, m.ac, m.bc
    return [
        ("Eq5", "p_A(0)", ab.p00 + ab.p01, ac.p00 + ac.p01),
        ("Eq6", "p_B(0)", bc.p00 + bc.p01, ab.p00 + ab.p10),
        ("Eq7", "p_C(0)", bc.p00 + bc.p10, ac.p00 + ac.p10),
        ("Eq5'", "p_A(1)", ab.p10 + ab.p11, ac.p10 + ac.p11),
        ("Eq6'", "p_B(1)", bc.p10 + bc.p11, ab.p01 + ab.p11),
        ("Eq7'", "p_C(1)", bc.p01 + bc.p11, ac.p01 + ac.p11),
    ]


def marginal_check(m: PairwiseMarginals, tol: float = NORM_TOL) -> ConsistencyReport:
    """Compare each single marginal as read from its two pair tables.

    ``Eq5``..``Eq7`` compare P(X=0); the primed names compare P(X=1).
    ``tol`` may be raised above the default to allow for sampling error.
    """
    eqs = tuple(MarginalEquation(name, lhs, rhs, abs(lhs - rhs) <= tol)
                for name, _, lhs, rhs in _single_routes(m))
    violated = tuple(e.name for e in eqs if not e.holds)
    return ConsistencyReport(marginal_ok=not violated, marginal_equations=eqs,
                             violated_marginal=violated)


def bell_sum_check(s: CoincidenceSummary) -> tuple[bool, float]:
    """Return ``(ok, margin)`` with ``margin = p_s_total - 1``."""
    margin = s.p_s_total - 1.0
    return margin >= -NEG_TOL, margin


def singles_from_marginals(m: PairwiseMarginals) -> tuple[float, float, float]:
    """P(A=1), P(B=1), P(C=1), averaging the two routes for each."""
    rows = _single_routes(m)[3:]
    return tuple(0.5 * (r1 + r2) for _, _, r1, r2 in rows)


def _affine_joint(m: PairwiseMarginals, singles: Sequence[float]):
    """Joint entries as ``(offset, slope)`` in the free parameter h = p111."""
    pa, pb, pc = singles
    ab11, ac11, bc11 = m.ab.p11, m.ac.p11, m.bc.p11
    return [
        (1.0 - pa - pb - pc + ab11 + ac11 + bc11, -1.0),  # p000
        (pc - ac11 - bc11, 1.0),  # p001
        (pb - ab11 - bc11, 1.0),  # p010
        (bc11, -1.0),  # p011
        (pa - ab11 - ac11, 1.0),  # p100
        (ac11, -1.0),  # p101
        (ab11, -1.0),  # p110
        (0.0, 1.0),  # p111
    ]


def reconstruct_joint(m: PairwiseMarginals,
                      singles: Optional[Sequence[float]] = None,
                      tol: float = NORM_TOL) -> Optional[FeasibilityWitness]:
    """Find a nonnegative joint with the given pairwise tables, if one exists.

    With all pair tables and single marginals fixed, a three-variable binary
    joint has one free parameter, taken here as ``h = p111``; the other seven
    entries are affine in ``h``.  The returned witness sits at the midpoint of
    the interval of ``h`` for which every entry is nonnegative.

    Parameters
    ----------
    m : PairwiseMarginals
    singles : sequence of 3 floats, optional
        P(A=1), P(B=1), P(C=1).  Derived from ``m`` when omitted; when given
        they must agree with ``m``.
    tol : float
        Equality tolerance for the marginal checks and allowed negativity of
        reconstructed entries.  Raise it for sampled data.

    Returns
    -------
    FeasibilityWitness or None
        None when no classical joint reproduces the data.

    Raises
    ------
    InconsistentMarginals
        If supplied ``singles`` contradict the pair tables, or the pair
        tables cannot be recovered for any ``h``.
    """
    if not marginal_check(m, tol).marginal_ok:
        return None
    derived = singles_from_marginals(m)
    if singles is None:
        singles = derived
    else:
        singles = tuple(float(v) for v in singles)
        if len(singles) != 3:
            raise ValueError("singles must hold P(A=1), P(B=1), P(C=1)")
        for name, given, implied in zip("ABC", singles, derived):
            if abs(given - implied) > tol:
                raise InconsistentMarginals(
                    f"P({name}=1)={given!r} but pair tables imply {implied!r}")

    rows = _affine_joint(m, singles)
    # Pair entries are sums over the third variable, so h cancels; check at h=0.
    a, b, c, d, e, f, g, h = (off for off, _ in rows)
    rebuilt = {"AB": (a + b, c + d, e + f, g + h),
               "AC": (a + c, b + d, e + g, f + h),
               "BC": (a + e, b + f, c + g, d + h)}
    for key, vals in rebuilt.items():
        for got, want in zip(vals, m[key]):
            if abs(got - want) > 4 * tol:
                raise InconsistentMarginals(f"pair {key} cannot be reproduced")

    lo, hi = -math.inf, math.inf
    for off, slope in rows:
        # off + slope * h >= 0
        if slope > 0:
            lo = max(lo, -off)
        else:
            hi = min(hi, off)
    if lo > hi + tol:
        return None
    mid = 0.5 * (lo + hi)
    entries = [max(off + slope * mid, 0.0) for off, slope in rows]
    total = math.fsum(entries)
    joint = None
    if abs(total - 1.0) <= NORM_TOL:
        joint = make_joint(entries)
    elif total > 0:
        joint = make_joint([x / total for x in entries])
    return FeasibilityWitness(
        lam=entries[7], mu=entries[6], nu=entries[5], eta=entries[3],
        h_interval=(lo, hi), joint=joint)


def full_check(m: PairwiseMarginals,
               singles: Optional[Sequence[float]] = None,
               tol: float = NORM_TOL) -> ConsistencyReport:
    """Run the marginal, Bell-sum and reconstruction checks together."""
    report = marginal_check(m, tol)
    ok, margin = bell_sum_check(coincidence_summary(m))
    notes = []
    try:
        witness = reconstruct_joint(m, singles, tol)
    except InconsistentMarginals as exc:
        witness = None
        notes.append(str(exc))
    return report.merge(ConsistencyReport(
        bell_sum=margin + 1.0, bell_ok=ok,
        feasible=witness is not None, witness=witness, notes=tuple(notes)))
