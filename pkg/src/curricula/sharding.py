"""Optimal 1-D classification of difficulty scores into k ordered shards.

The classifier minimizes the sum of within-class squared deviations from
class means (SDCM) over contiguous partitions of the sorted values, via the
classic O(k*n^2) dynamic program on prefix sums. The DP runs on the distinct
values weighted by multiplicity, which is equivalent to running on the full
multiset: for the SDCM objective an optimal partition never needs to split a
run of equal values (moving tied values across a break is concave in the
count, so an endpoint is always at least as good), and keeping runs intact
is what makes the break bounds strictly ascending and the assignment rule
("ties fall in the lower shard") deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus
from .difficulty import DifficultyVector
from .errors import DegenerateShard, TooManyClasses


@dataclass(frozen=True)
class BreakSet:
    """Inclusive upper bounds of k classes, strictly ascending."""

    k: int
    upper_bounds: tuple[float, ...]

    def __post_init__(self):
        if len(self.upper_bounds) != self.k:
            raise ValueError("need exactly one upper bound per class")
        if any(b >= a for a, b in zip(self.upper_bounds[1:], self.upper_bounds)):
            raise ValueError("upper bounds must be strictly ascending")


@dataclass(frozen=True)
class ShardSet:
    """Partition of sample ids into k shards, difficulty ascending with index."""

    shards: tuple[tuple[int, ...], ...]
    breaks: BreakSet | None = None

    @property
    def k(self) -> int:
        return len(self.shards)

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.shards)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.shards)

    def shard_of(self) -> np.ndarray:
        """Dense id -> shard index lookup array."""
        out = np.empty(self.size, dtype=np.int64)
        for index, ids in enumerate(self.shards):
            out[list(ids)] = index
        return out


def _prefix_sums(values: np.ndarray, weights: np.ndarray):
    w = weights.astype(np.float64)
    cum_w = np.concatenate(([0.0], np.cumsum(w)))
    cum_v = np.concatenate(([0.0], np.cumsum(w * values)))
    cum_v2 = np.concatenate(([0.0], np.cumsum(w * values * values)))
    return cum_w, cum_v, cum_v2


def jenks_breaks(values, k: int) -> BreakSet:
    """Partition values into k classes minimizing within-class squared deviation.

    Ties between optimal partitions are broken toward the smallest first
    break, then lexicographically. Raises TooManyClasses when k exceeds the
    number of distinct values.
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 0:
        raise ValueError("cannot classify an empty value sequence")
    if not np.all(np.isfinite(vals)):
        raise ValueError("values must all be finite")
    if k < 1:
        raise ValueError("k must be positive")
    distinct, weights = np.unique(vals, return_counts=True)
    m = distinct.size
    if k > m:
        raise TooManyClasses(k, m)

    cum_w, cum_v, cum_v2 = _prefix_sums(distinct, weights)

    def sse_from(a: int, ends: np.ndarray) -> np.ndarray:
        # SSE of the class distinct[a..e] for each e in ends (inclusive).
        n = cum_w[ends + 1] - cum_w[a]
        s = cum_v[ends + 1] - cum_v[a]
        q = cum_v2[ends + 1] - cum_v2[a]
        return q - s * s / n

    # best[j][i]: minimal SDCM splitting the suffix distinct[i:] into j classes.
    best = np.full((k + 1, m + 1), np.inf)
    last = np.arange(m - 1, m)
    for i in range(m - 1, -1, -1):
        best[1][i] = sse_from(i, last)[0]
    for j in range(2, k + 1):
        for i in range(m - j, -1, -1):
            ends = np.arange(i, m - j + 1)
            costs = sse_from(i, ends) + best[j - 1][ends + 1]
            best[j][i] = costs.min()

    # Reconstruct front-to-back; argmin takes the first (smallest) optimal end.
    bounds: list[float] = []
    start = 0
    for j in range(k, 1, -1):
        ends = np.arange(start, m - j + 1)
        costs = sse_from(start, ends) + best[j - 1][ends + 1]
        pick = int(ends[np.argmin(costs)])
        bounds.append(float(distinct[pick]))
        start = pick + 1
    bounds.append(float(distinct[m - 1]))
    return BreakSet(k=k, upper_bounds=tuple(bounds))


def classify(values, breaks: BreakSet) -> np.ndarray:
    """Class index per value: the lowest class whose upper bound >= value."""
    vals = np.asarray(values, dtype=np.float64)
    bounds = np.asarray(breaks.upper_bounds, dtype=np.float64)
    if vals.size and vals.max() > bounds[-1]:
        raise ValueError("breaks do not cover the value range")
    return np.searchsorted(bounds, vals, side="left")


def sdcm(values, breaks: BreakSet) -> float:
    """Sum of within-class squared deviations from class means."""
    vals = np.asarray(values, dtype=np.float64)
    idx = classify(vals, breaks)
    total = 0.0
    for c in range(breaks.k):
        members = vals[idx == c]
        if members.size:
            total += float(((members - members.mean()) ** 2).sum())
    return total


def gvf(values, breaks: BreakSet) -> float:
    """Goodness of variance fit, 1 - SDCM/SDAM, clipped into [0, 1].

    SDAM is the squared deviation from the global mean; a zero SDAM (all
    values equal) is defined as a perfect fit of 1.
    """
    vals = np.asarray(values, dtype=np.float64)
    sdam = float(((vals - vals.mean()) ** 2).sum())
    if sdam == 0.0:
        return 1.0
    return min(1.0, max(0.0, 1.0 - sdcm(vals, breaks) / sdam))


def shards_from_values(values, k: int = 5) -> ShardSet:
    """Jenks-classify raw scores and group sample ids by class."""
    breaks = jenks_breaks(values, k)
    idx = classify(values, breaks)
    shards = tuple(tuple(int(i) for i in np.flatnonzero(idx == c)) for c in range(k))
    for index, ids in enumerate(shards):
        if not ids:
            raise DegenerateShard(index)
    return ShardSet(shards=shards, breaks=breaks)


def assign_shards(corpus: Corpus, scores: DifficultyVector, k: int = 5) -> ShardSet:
    """Partition the corpus into k difficulty-ordered shards."""
    if len(scores) != len(corpus):
        raise ValueError(
            f"scores cover {len(scores)} samples but corpus has {len(corpus)}"
        )
    return shards_from_values(scores.values, k)


def random_shards(size: int, k: int, seed: int = 0) -> ShardSet:
    """Split ids 0..size-1 into k random near-equal shards (no-curriculum baseline)."""
    if k < 1:
        raise ValueError("k must be positive")
    if size < k:
        raise ValueError(f"cannot split {size} samples into {k} non-empty shards")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(size)
    parts = np.array_split(perm, k)
    return ShardSet(shards=tuple(tuple(int(i) for i in np.sort(part)) for part in parts))
