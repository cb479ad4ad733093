"""Born-rule statistics of pure two-qubit states in rotated real bases.

A measurement basis is a rotation of the computational basis by an angle
``theta``::

    b0 =  cos(theta)|0> + sin(theta)|1>
    b1 = -sin(theta)|0> + cos(theta)|1>

It is also described by ``k = 1 / cos(theta)**2``, so ``k = 2`` is a
45 degree rotation and ``k = 4`` a 60 degree one.  Basis vectors are fixed
only up to sign; signs never affect outcome probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CoincidenceSummary, summary_from_same
from .errors import DegenerateRatio, InvalidParameter, NotNormalized

STATE_TOL = 1e-9


@dataclass(frozen=True)
class PureTwoQubitState:
    """Amplitudes of |00>, |01>, |10>, |11> (complex)."""

    amp00: complex
    amp01: complex
    amp10: complex
    amp11: complex

    def __post_init__(self):
        amps = self.amplitudes()
        if not np.all(np.isfinite(amps)):
            raise InvalidParameter("amplitudes must be finite")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > STATE_TOL:
            raise NotNormalized(f"state has squared norm {norm!r}")

    def amplitudes(self) -> np.ndarray:
        return np.array([self.amp00, self.amp01, self.amp10, self.amp11], dtype=complex)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex], normalize: bool = False) -> "PureTwoQubitState":
        vec = np.asarray(amps, dtype=complex).reshape(4)
        if normalize:
            n = np.linalg.norm(vec)
            if n == 0 or not np.isfinite(n):
                raise InvalidParameter("cannot normalize a zero or non-finite vector")
            vec = vec / n
        return cls(*(complex(v) for v in vec))


@dataclass(frozen=True)
class MeasBasis:
    """Real measurement basis rotated by ``theta`` radians, in (-pi/2, pi/2]."""

    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta) or not (-math.pi / 2 < self.theta <= math.pi / 2 + 1e-15):
            raise InvalidParameter(f"theta={self.theta!r} outside (-pi/2, pi/2]")

    @classmethod
    def from_degrees(cls, degrees: float) -> "MeasBasis":
        return cls(math.radians(degrees))

    @property
    def degrees(self) -> float:
        return math.degrees(self.theta)

    @property
    def k(self) -> float:
        c = math.cos(self.theta)
        return math.inf if c == 0 else 1.0 / (c * c)

    def vectors(self) -> np.ndarray:
        """Rows are b0 and b1 in computational coordinates."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, s], [-s, c]], dtype=float)


COMPUTATIONAL = MeasBasis(0.0)


@dataclass(frozen=True)
class BasisTriple:
    a: MeasBasis = COMPUTATIONAL
    b: MeasBasis = MeasBasis(-math.pi / 3)
    c: MeasBasis = MeasBasis(math.pi / 3)

    @classmethod
    def from_degrees(cls, a: float, b: float, c: float) -> "BasisTriple":
        return cls(MeasBasis.from_degrees(a), MeasBasis.from_degrees(b), MeasBasis.from_degrees(c))

    def pairs(self) -> tuple[tuple[MeasBasis, MeasBasis], ...]:
        """Basis pairs in (AB, AC, BC) order."""
        return ((self.a, self.b), (self.a, self.c), (self.b, self.c))


DEFAULT_BASES = BasisTriple()


def entangled_pair(r: float) -> PureTwoQubitState:
    """(r|00> + |11>) / sqrt(1 + r^2); r = 1 is maximally entangled."""
    if not math.isfinite(r) or r < 0:
        raise InvalidParameter(f"r must be finite and >= 0, got {r!r}")
    n = math.sqrt(1.0 + r * r)
    return PureTwoQubitState(r / n, 0.0, 0.0, 1.0 / n)


def basis_from_k(k: float, sign: str = "-") -> MeasBasis:
    """Basis with ``cos(theta) = 1/sqrt(k)``; ``sign`` picks the rotation direction."""
    if not math.isfinite(k) or k < 1:
        raise InvalidParameter(f"k must be >= 1, got {k!r}")
    if sign not in ("+", "-"):
        raise InvalidParameter(f"sign must be '+' or '-', got {sign!r}")
    theta = math.acos(min(1.0, 1.0 / math.sqrt(k)))
    return MeasBasis(theta if sign == "+" else -theta)


def rebase(state: PureTwoQubitState, left: MeasBasis, right: MeasBasis) -> PureTwoQubitState:
    """Express ``state`` in the product basis {left_i (x) right_j}.

    Returned amplitude ``ij`` is <left_i right_j | state>.
    """
    u = np.kron(left.vectors(), right.vectors())
    return PureTwoQubitState(*(complex(v) for v in u @ state.amplitudes()))


def joint_probs(state: PureTwoQubitState, left: MeasBasis, right: MeasBasis) -> np.ndarray:
    """Outcome probabilities P(00), P(01), P(10), P(11)."""
    return np.abs(rebase(state, left, right).amplitudes()) ** 2


def p_same(state: PureTwoQubitState, left: MeasBasis, right: MeasBasis) -> float:
    p = joint_probs(state, left, right)
    return float(p[0] + p[3])


def ratio_two_bases(k: float) -> float:
    """Same/notsame ratio between the computational basis and a k-basis: 1/(k-1)."""
    if not math.isfinite(k) or k < 1:
        raise InvalidParameter(f"k must be >= 1, got {k!r}")
    if k == 1:
        raise DegenerateRatio("k = 1: identical bases never disagree")
    return 1.0 / (k - 1.0)


def triple_summary(r: float, bases: BasisTriple = DEFAULT_BASES) -> CoincidenceSummary:
    """Pairwise coincidence summary of ``entangled_pair(r)`` over three bases."""
    return state_triple_summary(entangled_pair(r), bases)


def state_triple_summary(state: PureTwoQubitState, bases: BasisTriple = DEFAULT_BASES) -> CoincidenceSummary:
    return summary_from_same([p_same(state, x, y) for x, y in bases.pairs()])


# Closed forms for the default (0, -60, +60 degree) bases.

def p_same_bc_closed(r: float) -> float:
    return (5 * r * r - 6 * r + 5) / (8 * (1 + r * r))


def psq_closed(r: float) -> float:
    return 0.5 + p_same_bc_closed(r)


def pnq_closed(r: float) -> float:
    return (15 * r * r + 6 * r + 15) / (8 * (1 + r * r))


def ratio_quantum(r: float) -> float:
    """Same/notsame ratio of ``entangled_pair(r)`` in the default bases."""
    if not math.isfinite(r) or r < 0:
        raise InvalidParameter(f"r must be finite and >= 0, got {r!r}")
    return (3 * r * r - 2 * r + 3) / (5 * r * r + 2 * r + 5)


def separation_interval() -> tuple[float, float]:
    """Roots of r^2 - 6r + 1; between them the summed agreement drops below 1."""
    root = math.sqrt(8.0)
    return 3.0 - root, 3.0 + root


def interference_free_agreement(a: float, b: float, c: float, d: float, k: float) -> float:
    """Agreement of real state a|00>+b|01>+c|10>+d|11> against a k-basis,
    by the closed form that drops the interference terms."""
    if k < 1:
        raise InvalidParameter(f"k must be >= 1, got {k!r}")
    return (a * a + b * b * (k - 1) + c * c * (k - 1) + d * d) / k


def exact_agreement(a: float, b: float, c: float, d: float, k: float) -> float:
    """Born-rule value for the same setup as `interference_free_agreement`."""
    state = PureTwoQubitState.from_amplitudes([a, b, c, d])
    return p_same(state, COMPUTATIONAL, basis_from_k(k, "-"))


def agreement_formula_audit(a: float, b: float, c: float, d: float, k: float) -> dict:
    approx = interference_free_agreement(a, b, c, d, k)
    exact = exact_agreement(a, b, c, d, k)
    return {"a": a, "b": b, "c": c, "d": d, "k": k,
            "interference_free": approx, "exact": exact, "difference": approx - exact}
