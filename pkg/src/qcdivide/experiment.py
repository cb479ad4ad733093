"""Simulated coincidence experiments and the same/notsame ratio classifier.

Random numbers come from numpy's Philox4x64 counter-based generator.  Every
simulated trial consumes exactly one Philox block (four doubles):

    u0 -- selects the outcome by inverse CDF
    u1 -- detector flip for the first recorded bit
    u2 -- detector flip for the second recorded bit
    u3 -- pair choice (random schedule only)

so trial ``i`` of a stream is a pure function of ``(key, i)``.  That is what
makes chunked/parallel sampling reproduce the single-stream result exactly.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .core import PAIRS, JointDist3, PairId, PairTable, PairwiseMarginals
from .errors import InvalidParameter, UndefinedRatio
from .quantum import DEFAULT_BASES, BasisTriple, PureTwoQubitState, joint_probs

DEFAULT_THRESHOLD = 5.0 / 12.0
DEFAULT_Z = 3.0

_MASK64 = (1 << 64) - 1
# Per-pair stream constants, XORed into the seed.
PAIR_STREAM_CONSTANTS = {
    PairId.AB: 0x9E3779B97F4A7C15,
    PairId.AC: 0x3C6EF372FE94F82A,
    PairId.BC: 0xDAA66D2C7DDF743F,
}
SCHEDULE_STREAM_CONSTANT = 0x78DDE6E5FD29F054


@dataclass(frozen=True)
class NoiseSpec:
    """Independent bit-flip probability applied to each recorded bit."""

    epsilon: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.epsilon <= 0.5):
            raise InvalidParameter(f"epsilon={self.epsilon!r} outside [0, 0.5]")


@dataclass(frozen=True)
class CountTable:
    """Coincidence counts ``(n00, n01, n10, n11)`` for each pair."""

    ab: tuple[int, int, int, int]
    ac: tuple[int, int, int, int]
    bc: tuple[int, int, int, int]

    def __post_init__(self):
        for pair in PAIRS:
            counts = self[pair]
            if len(counts) != 4 or any(int(n) != n or n < 0 for n in counts):
                raise InvalidParameter(f"pair {pair.value}: counts must be 4 nonnegative integers")

    def __getitem__(self, pair: PairId) -> tuple[int, int, int, int]:
        return getattr(self, PairId(pair).value.lower())

    def total(self, pair: PairId) -> int:
        return sum(self[pair])

    @property
    def n_total(self) -> int:
        return sum(self.total(p) for p in PAIRS)

    def frequencies(self) -> PairwiseMarginals:
        tables = {}
        for pair in PAIRS:
            n = self.total(pair)
            if n == 0:
                raise UndefinedRatio(f"pair {pair.value} has no trials")
            tables[pair] = PairTable(*(c / n for c in self[pair]))
        return PairwiseMarginals.from_mapping(tables)

    def to_mapping(self) -> dict[str, dict[str, int]]:
        return {p.value: dict(zip(("n00", "n01", "n10", "n11"), map(int, self[p]))) for p in PAIRS}

    @classmethod
    def from_mapping(cls, data: Mapping[str, Sequence[int] | Mapping[str, int]]) -> "CountTable":
        out = {}
        for pair in PAIRS:
            if pair.value not in data:
                raise InvalidParameter(f"missing pair {pair.value}")
            vals = data[pair.value]
            if isinstance(vals, Mapping):
                vals = [vals[k] for k in ("n00", "n01", "n10", "n11")]
            out[pair.value.lower()] = tuple(int(v) for v in vals)
        return cls(**out)


@dataclass(frozen=True)
class RatioEstimate:
    """Empirical P_s/P_n with a delta-method standard error."""

    ratio_hat: float
    stderr: float
    n_total: int
    p_s_hat: float
    p_n_hat: float
    p_same: tuple[float, float, float]
    defined: bool = True


class Label(str, enum.Enum):
    CLASSICAL = "Classical"
    QUANTUM = "Quantum"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Verdict:
    label: Label
    threshold: float
    z: float
    # (ratio_hat - threshold) / stderr; positive leans classical.
    z_margin: float


# -- random streams -------------------------------------------------------

def stream_key(seed: int, constant: int) -> int:
    return (int(seed) & _MASK64) ^ constant


def _uniform_block(key: int, start: int, stop: int) -> np.ndarray:
    """Trials ``start..stop-1`` of stream ``key`` as an ``(n, 4)`` array."""
    # Explicit uint64: a plain list of large ints would round through float64.
    bitgen = np.random.Philox(key=np.array([key, 0], dtype=np.uint64),
                              counter=np.array([start, 0, 0, 0], dtype=np.uint64))
    return np.random.Generator(bitgen).random((stop - start, 4))


def _chunk_bounds(n: int, chunks: int) -> list[tuple[int, int]]:
    if chunks < 1:
        raise InvalidParameter("chunks must be >= 1")
    edges = np.linspace(0, n, chunks + 1).round().astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def _map_chunks(fn: Callable[[int, int], np.ndarray], n: int, chunks: int) -> np.ndarray:
    bounds = _chunk_bounds(n, chunks)
    if chunks == 1:
        parts = [fn(a, b) for a, b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=chunks) as pool:
            parts = list(pool.map(lambda ab: fn(*ab), bounds))
    return np.sum(parts, axis=0)


def _cdf(probs: Sequence[float]) -> np.ndarray:
    cdf = np.cumsum(np.asarray(probs, dtype=float))
    return cdf / cdf[-1]


def _noisy_code(bit1: np.ndarray, bit2: np.ndarray, u: np.ndarray, eps: float) -> np.ndarray:
    bit1 = bit1 ^ (u[:, 1] < eps)
    bit2 = bit2 ^ (u[:, 2] < eps)
    return 2 * bit1.astype(np.int64) + bit2.astype(np.int64)


# An outcome model maps (u0 values, pair index per trial) -> (bit1, bit2).
OutcomeModel = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


def _classical_model(j: JointDist3) -> OutcomeModel:
    cdf = _cdf(j.as_tuple())

    def draw(u0, pair_idx):
        idx = np.minimum(np.searchsorted(cdf, u0, side="right"), 7)
        bits = np.stack([(idx >> 2) & 1, (idx >> 1) & 1, idx & 1])
        first = np.array([p.indices[0] for p in PAIRS])[pair_idx]
        second = np.array([p.indices[1] for p in PAIRS])[pair_idx]
        cols = np.arange(idx.size)
        return bits[first, cols].astype(bool), bits[second, cols].astype(bool)

    return draw


def _pair_outcome_model(pair_probs: Sequence[Sequence[float]]) -> OutcomeModel:
    cdfs = np.array([_cdf(p) for p in pair_probs])

    def draw(u0, pair_idx):
        idx = np.empty(u0.size, dtype=np.int64)
        for i in range(len(PAIRS)):
            sel = pair_idx == i
            if sel.any():
                idx[sel] = np.minimum(np.searchsorted(cdfs[i], u0[sel], side="right"), 3)
        return ((idx >> 1) & 1).astype(bool), (idx & 1).astype(bool)

    return draw


def _sample(model: OutcomeModel, n_per_pair: int, noise: NoiseSpec, seed: int,
            chunks: int, schedule: str) -> CountTable:
    if n_per_pair < 0:
        raise InvalidParameter("n_per_pair must be >= 0")
    eps = noise.epsilon
    counts = {}
    if schedule == "equal":
        for i, pair in enumerate(PAIRS):
            key = stream_key(seed, PAIR_STREAM_CONSTANTS[pair])

            def run(start, stop, key=key, i=i):
                u = _uniform_block(key, start, stop)
                b1, b2 = model(u[:, 0], np.full(stop - start, i))
                return np.bincount(_noisy_code(b1, b2, u, eps), minlength=4)

            counts[pair] = _map_chunks(run, n_per_pair, chunks) if n_per_pair else np.zeros(4, int)
    elif schedule == "random":
        key = stream_key(seed, SCHEDULE_STREAM_CONSTANT)

        def run(start, stop):
            u = _uniform_block(key, start, stop)
            pair_idx = np.minimum((u[:, 3] * 3).astype(np.int64), 2)
            b1, b2 = model(u[:, 0], pair_idx)
            return np.bincount(4 * pair_idx + _noisy_code(b1, b2, u, eps), minlength=12)

        n = 3 * n_per_pair
        flat = _map_chunks(run, n, chunks) if n else np.zeros(12, int)
        counts = {pair: flat[4 * i:4 * i + 4] for i, pair in enumerate(PAIRS)}
    else:
        raise InvalidParameter(f"unknown schedule {schedule!r}")
    return CountTable(*(tuple(int(c) for c in counts[p]) for p in PAIRS))


def sample_classical(j: JointDist3, n_per_pair: int, noise: NoiseSpec = NoiseSpec(),
                     seed: int = 0, chunks: int = 1, schedule: str = "equal") -> CountTable:
    """Simulate a pre-assigned-outcome experiment.

    Each trial draws a full (A, B, C) triple from ``j`` and records only the
    two bits of the pair being measured, each flipped with probability
    ``noise.epsilon``.  With ``schedule="equal"`` every pair gets
    ``n_per_pair`` trials on its own substream; ``"random"`` draws the pair
    uniformly for each of ``3 * n_per_pair`` trials.  Results depend only on
    the arguments, not on ``chunks``.
    """
    return _sample(_classical_model(j), n_per_pair, noise, seed, chunks, schedule)


def sample_quantum(state: PureTwoQubitState, n_per_pair: int,
                   bases: BasisTriple = DEFAULT_BASES, noise: NoiseSpec = NoiseSpec(),
                   seed: int = 0, chunks: int = 1, schedule: str = "equal") -> CountTable:
    """Simulate two-qubit measurements of ``state`` for each basis pair.

    The pair (A, B) measures the first qubit in ``bases.a`` and the second in
    ``bases.b``, and likewise for (A, C) and (B, C).  Arguments otherwise as
    for `sample_classical`.
    """
    probs = [joint_probs(state, x, y) for x, y in bases.pairs()]
    return _sample(_pair_outcome_model(probs), n_per_pair, noise, seed, chunks, schedule)


# -- estimation -----------------------------------------------------------

def estimate(c: CountTable) -> RatioEstimate:
    """Estimate P_s/P_n from counts.

    The three pairs are treated as independent binomial samples; the
    standard error follows from the delta method applied to
    ``S / (3 - S)`` with ``S`` the summed agreement frequency.
    """
    totals = [c.total(p) for p in PAIRS]
    if min(totals) == 0:
        return RatioEstimate(math.nan, math.nan, sum(totals), math.nan, math.nan,
                             (math.nan,) * 3, defined=False)
    same = tuple((c[p][0] + c[p][3]) / n for p, n in zip(PAIRS, totals))
    p_s = math.fsum(same)
    p_n = math.fsum(1.0 - p for p in same)
    if p_n <= 0.0:
        raise UndefinedRatio("no 'notsame' outcomes observed")
    var_s = math.fsum(p * (1.0 - p) / n for p, n in zip(same, totals))
    stderr = (p_s + p_n) / (p_n * p_n) * math.sqrt(var_s)
    return RatioEstimate(p_s / p_n, stderr, sum(totals), p_s, p_n, same)


def classify(e: RatioEstimate, threshold: float = DEFAULT_THRESHOLD, z: float = DEFAULT_Z) -> Verdict:
    """Quantum if the ratio is confidently below ``threshold``, Classical if
    confidently above, else Indeterminate."""
    if not e.defined:
        raise UndefinedRatio("estimate is undefined; cannot classify")
    if e.stderr > 0:
        margin = (e.ratio_hat - threshold) / e.stderr
    else:
        margin = math.copysign(math.inf, e.ratio_hat - threshold) if e.ratio_hat != threshold else 0.0
    if e.ratio_hat + z * e.stderr < threshold:
        label = Label.QUANTUM
    elif e.ratio_hat - z * e.stderr > threshold:
        label = Label.CLASSICAL
    else:
        label = Label.INDETERMINATE
    return Verdict(label, threshold, z, margin)


def expected_counts(probs: Sequence[Sequence[float]], n_per_pair: int) -> CountTable:
    """Round ``n_per_pair * p`` for each pair's outcome probabilities."""
    rows = []
    for p in probs:
        rows.append(tuple(int(round(n_per_pair * float(x))) for x in p))
    return CountTable(*rows)
