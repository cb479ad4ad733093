"""Probability tables for three two-valued variables A, B, C.

The joint table is indexed by outcome bits ``(a, b, c)``; the eight entries
are stored in the order 000, 001, ..., 111.  Pairs are always handled in
the order (AB, AC, BC).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import NegativeProbability, NotNormalized

NORM_TOL = 1e-9
NEG_TOL = 1e-12
RATIO_TOL = 1e-12


class PairId(enum.Enum):
    AB = "AB"
    AC = "AC"
    BC = "BC"

    @property
    def indices(self) -> tuple[int, int]:
        """Positions of the two variables within an (A, B, C) triple."""
        return _PAIR_INDICES[self]


_PAIR_INDICES = {PairId.AB: (0, 1), PairId.AC: (0, 2), PairId.BC: (1, 2)}
PAIRS: tuple[PairId, PairId, PairId] = (PairId.AB, PairId.AC, PairId.BC)


def _check_probabilities(values: Sequence[float], what: str) -> None:
    for v in values:
        if not math.isfinite(v):
            raise NegativeProbability(f"{what}: non-finite entry {v!r}")
        if v < -NEG_TOL:
            raise NegativeProbability(f"{what}: entry {v!r} is negative")
        if v > 1 + NEG_TOL:
            raise NotNormalized(f"{what}: entry {v!r} exceeds 1")
    total = math.fsum(values)
    if abs(total - 1.0) > NORM_TOL:
        raise NotNormalized(f"{what}: entries sum to {total!r}, not 1")


@dataclass(frozen=True)
class JointDist3:
    """Eight-outcome joint distribution of (A, B, C).

    Field ``pXYZ`` is the probability of ``A=X, B=Y, C=Z``.
    """

    p000: float
    p001: float
    p010: float
    p011: float
    p100: float
    p101: float
    p110: float
    p111: float

    def __post_init__(self):
        _check_probabilities(self.as_tuple(), "joint")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.p000, self.p001, self.p010, self.p011,
                self.p100, self.p101, self.p110, self.p111)

    def as_array(self) -> np.ndarray:
        """Probabilities as a ``(2, 2, 2)`` array indexed ``[a, b, c]``."""
        return np.array(self.as_tuple(), dtype=float).reshape(2, 2, 2)

    def prob(self, a: int, b: int, c: int) -> float:
        return self.as_tuple()[4 * a + 2 * b + c]

    def singles(self) -> tuple[float, float, float]:
        """P(A=1), P(B=1), P(C=1)."""
        arr = self.as_array()
        return (float(arr[1].sum()), float(arr[:, 1].sum()), float(arr[:, :, 1].sum()))


def make_joint(eight_probabilities: Iterable[float]) -> JointDist3:
    """Validate eight probabilities (ordered 000..111) into a `JointDist3`."""
    values = [float(v) for v in eight_probabilities]
    if len(values) != 8:
        raise ValueError(f"expected 8 probabilities, got {len(values)}")
    return JointDist3(*values)


class PairTable(NamedTuple):
    """Outcome table for one pair; first index is the first variable."""

    p00: float
    p01: float
    p10: float
    p11: float

    @property
    def same(self) -> float:
        return self.p00 + self.p11

    @property
    def notsame(self) -> float:
        return self.p01 + self.p10


@dataclass(frozen=True)
class PairwiseMarginals:
    ab: PairTable
    ac: PairTable
    bc: PairTable

    def __post_init__(self):
        for pair in PAIRS:
            table = self[pair]
            if len(table) != 4:
                raise ValueError(f"pair {pair.value}: expected 4 entries")
            _check_probabilities(table, f"pair {pair.value}")

    def __getitem__(self, pair: PairId) -> PairTable:
        return getattr(self, PairId(pair).value.lower())

    def tables(self) -> tuple[PairTable, PairTable, PairTable]:
        return (self.ab, self.ac, self.bc)

    @classmethod
    def from_mapping(cls, tables: Mapping[str | PairId, Sequence[float]]) -> "PairwiseMarginals":
        """Build from ``{"AB": (p00, p01, p10, p11), ...}``."""
        norm = {PairId(k): PairTable(*(float(v) for v in vals)) for k, vals in tables.items()}
        missing = [p.value for p in PAIRS if p not in norm]
        if missing:
            raise ValueError(f"missing pair tables: {', '.join(missing)}")
        return cls(ab=norm[PairId.AB], ac=norm[PairId.AC], bc=norm[PairId.BC])


@dataclass(frozen=True)
class CoincidenceSummary:
    """Same/notsame probabilities per pair, in (AB, AC, BC) order, plus totals.

    ``ratio`` is NaN and ``ratio_defined`` is False when ``p_n_total`` is
    numerically zero (every pair always agrees).
    """

    p_same: tuple[float, float, float]
    p_notsame: tuple[float, float, float]
    p_s_total: float
    p_n_total: float
    ratio: float
    ratio_defined: bool

    def same(self, pair: PairId) -> float:
        return self.p_same[PAIRS.index(PairId(pair))]

    def notsame(self, pair: PairId) -> float:
        return self.p_notsame[PAIRS.index(PairId(pair))]


def pairwise_from_joint(j: JointDist3) -> PairwiseMarginals:
    a, b, c, d, e, f, g, h = j.as_tuple()
    return PairwiseMarginals(
        ab=PairTable(a + b, c + d, e + f, g + h),
        ac=PairTable(a + c, b + d, e + g, f + h),
        bc=PairTable(a + e, b + f, c + g, d + h),
    )


def summary_from_same(p_same: Sequence[float]) -> CoincidenceSummary:
    """Build a summary from the three per-pair 'same' probabilities."""
    same = tuple(float(p) for p in p_same)
    if len(same) != 3:
        raise ValueError("expected three p_same values (AB, AC, BC)")
    notsame = tuple(1.0 - p for p in same)
    return _summary(same, notsame)


def _summary(same, notsame) -> CoincidenceSummary:
    p_s = math.fsum(same)
    p_n = math.fsum(notsame)
    defined = p_n >= RATIO_TOL
    return CoincidenceSummary(
        p_same=same,
        p_notsame=notsame,
        p_s_total=p_s,
        p_n_total=p_n,
        ratio=p_s / p_n if defined else math.nan,
        ratio_defined=defined,
    )


def coincidence_summary(m: PairwiseMarginals) -> CoincidenceSummary:
    same = tuple(t.same for t in m.tables())
    notsame = tuple(t.notsame for t in m.tables())
    return _summary(same, notsame)
