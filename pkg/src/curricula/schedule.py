"""Curriculum schedules: shard visibility per phase and the induced sampling law.

Shard indices run 0 (easiest) to k-1 (hardest). A phase is the period
between two curriculum updates; visibility is a multiset because the boost
schedule duplicates the hardest shard once every shard has been seen.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .sharding import ShardSet


class ScheduleKind(str, Enum):
    DEFAULT = "default"
    REVERSE = "reverse"
    BOOST = "boost"
    REDUCE = "reduce"
    NOSHUFFLE = "noshuffle"


def visible_shards(
    kind: ScheduleKind, phase: int, k: int, reduce_max_removed: int = 2
) -> tuple[int, ...]:
    """Multiset of shard indices available for training at ``phase``.

    default/noshuffle grow from the easiest shard up; reverse grows from the
    hardest down; boost duplicates the hardest shard once all k have been
    seen; reduce drops shards one per phase starting from the easiest and
    restores them all after ``reduce_max_removed`` removals, repeating that
    cycle. All kinds saturate at full visibility for phase >= k (reduce keeps
    cycling). If a removal step would empty the visible set it restores all
    shards instead.
    """
    if phase < 1:
        raise ValueError("phase starts at 1")
    if k < 1:
        raise ValueError("k must be positive")
    grown = min(phase, k)
    if kind in (ScheduleKind.DEFAULT, ScheduleKind.NOSHUFFLE):
        return tuple(range(grown))
    if kind is ScheduleKind.REVERSE:
        return tuple(range(k - grown, k))
    if kind is ScheduleKind.BOOST:
        if phase <= k or k == 1:
            return tuple(range(grown))
        return tuple(range(k)) + (k - 1,)
    if kind is ScheduleKind.REDUCE:
        if phase <= k:
            return tuple(range(grown))
        position = (phase - k - 1) % (reduce_max_removed + 1)
        removed = position + 1 if position < reduce_max_removed else 0
        if removed >= k:
            removed = 0
        return tuple(range(removed, k))
    raise ValueError(f"unknown schedule kind {kind!r}")


@dataclass(frozen=True)
class CurriculumState:
    """Snapshot of the curriculum at one phase."""

    kind: ScheduleKind
    k: int
    phase: int
    visible: tuple[int, ...]
    removed_count: int = 0
    prev_last_shard: int | None = None
    rng_seed: int = 0
    full_visibility: bool = False  # baseline mode: every shard from phase 1
    reduce_max_removed: int = 2


def initial_state(
    kind: ScheduleKind,
    k: int,
    seed: int = 0,
    full_visibility: bool = False,
    reduce_max_removed: int = 2,
) -> CurriculumState:
    visible = (
        tuple(range(k)) if full_visibility else visible_shards(kind, 1, k, reduce_max_removed)
    )
    return CurriculumState(
        kind=kind,
        k=k,
        phase=1,
        visible=visible,
        removed_count=k - len(set(visible)),
        prev_last_shard=None,
        rng_seed=seed,
        full_visibility=full_visibility,
        reduce_max_removed=reduce_max_removed,
    )


def advance_phase(state: CurriculumState, prev_last_shard: int | None = None) -> CurriculumState:
    """Step to the next phase, recomputing visibility and reduce bookkeeping.

    ``prev_last_shard`` is the last shard the consumer actually drew from in
    the finished phase; when omitted, the value already in the state carries
    over.
    """
    phase = state.phase + 1
    if state.full_visibility:
        visible = tuple(range(state.k))
    else:
        visible = visible_shards(state.kind, phase, state.k, state.reduce_max_removed)
    carried = prev_last_shard if prev_last_shard is not None else state.prev_last_shard
    return replace(
        state,
        phase=phase,
        visible=visible,
        removed_count=state.k - len(set(visible)),
        prev_last_shard=carried,
    )


@dataclass(frozen=True)
class PhaseDistribution:
    """Per-shard selection probabilities and the implied per-sample weights."""

    per_shard: np.ndarray  # (k,) probability mass on each shard, 0 if invisible
    per_sample_by_shard: np.ndarray  # (k,) probability of any one member sample

    def __post_init__(self):
        for name in ("per_shard", "per_sample_by_shard"):
            arr = np.asarray(getattr(self, name), dtype=np.float64).copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def per_sample(self, shards: ShardSet) -> np.ndarray:
        """Expand to one probability per sample id."""
        out = np.empty(shards.size, dtype=np.float64)
        for index, ids in enumerate(shards.shards):
            out[list(ids)] = self.per_sample_by_shard[index]
        return out


def phase_distribution(state: CurriculumState, shard_sizes) -> PhaseDistribution:
    """Selection distribution induced by the visible multiset.

    Each visible sample is equally likely: a shard's mass is its multiplicity
    times its size over the visible multiset's total sample count, so at
    phases where every shard is visible exactly once the per-sample law is
    uniform 1/S.
    """
    sizes = np.asarray(shard_sizes, dtype=np.int64)
    if sizes.shape != (state.k,):
        raise ValueError(f"expected {state.k} shard sizes, got {sizes.shape}")
    multiplicity = np.zeros(state.k, dtype=np.int64)
    for shard in state.visible:
        multiplicity[shard] += 1
    total = int((multiplicity * sizes).sum())
    per_shard = multiplicity * sizes / total
    per_sample_by_shard = multiplicity / total
    return PhaseDistribution(per_shard=per_shard, per_sample_by_shard=per_sample_by_shard)


def order_shards(state: CurriculumState, rng: np.random.Generator) -> tuple[int, ...]:
    """Visit order of the visible multiset for one pass.

    noshuffle always visits in ascending difficulty. Every other kind draws a
    uniform permutation, redrawing while the first shard equals the last
    shard of the previous phase whenever an alternative exists.
    """
    visible = state.visible
    if not visible:
        raise ValueError("visible shard multiset is empty")
    if state.kind is ScheduleKind.NOSHUFFLE:
        return tuple(sorted(visible))
    arr = np.asarray(visible, dtype=np.int64)
    perm = arr[rng.permutation(arr.size)]
    if state.prev_last_shard is not None and len(set(visible)) > 1:
        while perm[0] == state.prev_last_shard:
            perm = arr[rng.permutation(arr.size)]
    return tuple(int(s) for s in perm)
