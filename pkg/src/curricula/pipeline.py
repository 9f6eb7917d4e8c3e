"""Deterministic batch streams: bucketing, word-budget batching, phase
accounting, checkpointing, and early stopping against a pluggable learner.

All randomness flows from one root seed. Each (phase, pass) gets its own
child generator via ``SeedSequence(seed, spawn_key=(phase, pass_index))``, so
the stream is reproducible no matter when batches are consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterator, Protocol

import numpy as np

from .corpus import Corpus
from .errors import ConfigError, LearnerFailure
from .schedule import (
    CurriculumState,
    ScheduleKind,
    advance_phase,
    initial_state,
    order_shards,
)
from .sharding import ShardSet

BASELINE = "baseline"  # pseudo-schedule: every shard visible from phase 1
SCHEDULE_NAMES = tuple(kind.value for kind in ScheduleKind) + (BASELINE,)


@dataclass(frozen=True)
class TrainerConfig:
    """Knobs for the batch pipeline; defaults follow the reference setup."""

    schedule: str = "default"
    k: int = 5
    word_budget: int = 4096
    update_freq: int = 1000
    checkpoint_freq: int = 1000
    patience: int = 32
    bucket_width: int = 10
    seed: int = 0
    max_batches: int | None = None
    reduce_max_removed: int = 2

    def __post_init__(self):
        if self.schedule not in SCHEDULE_NAMES:
            raise ConfigError(
                f"unknown schedule {self.schedule!r}; expected one of {', '.join(SCHEDULE_NAMES)}"
            )
        for name in ("k", "word_budget", "update_freq", "checkpoint_freq", "patience",
                     "bucket_width", "reduce_max_removed"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.max_batches is not None and self.max_batches < 1:
            raise ConfigError("max_batches must be positive when set")

    @property
    def is_baseline(self) -> bool:
        return self.schedule == BASELINE

    @property
    def schedule_kind(self) -> ScheduleKind:
        return ScheduleKind.DEFAULT if self.is_baseline else ScheduleKind(self.schedule)


@dataclass(frozen=True)
class Bucket:
    """Within-shard group of samples with bucketing length in [lo, hi)."""

    shard: int
    lo: int
    hi: int
    ids: tuple[int, ...]


@dataclass(frozen=True)
class Batch:
    """Word-count-budgeted group of samples from one bucket of one shard."""

    batch_id: int
    phase: int
    shard: int
    sample_ids: tuple[int, ...]
    word_count: int


@dataclass(frozen=True)
class CheckpointEvent:
    index: int
    batches_seen: int


@dataclass(frozen=True)
class PhaseAdvanceEvent:
    phase: int


@dataclass(frozen=True)
class EndEvent:
    total_batches: int


Event = Batch | CheckpointEvent | PhaseAdvanceEvent | EndEvent


def bucket_by_length(ids, corpus: Corpus, bucket_width: int, shard_index: int = 0) -> list[Bucket]:
    """Group sample ids into fixed-width length buckets [0,w), [w,2w), ...

    The bucketing length of a pair is max(src, tgt) token count. Empty
    buckets are omitted; member order within a bucket preserves input order.
    """
    if bucket_width < 1:
        raise ValueError("bucket_width must be >= 1")
    groups: dict[int, list[int]] = {}
    for i in ids:
        pair = corpus[i]
        length = max(len(pair.src_tokens), len(pair.tgt_tokens))
        groups.setdefault(length // bucket_width, []).append(int(i))
    return [
        Bucket(shard=shard_index, lo=key * bucket_width, hi=(key + 1) * bucket_width,
               ids=tuple(members))
        for key, members in sorted(groups.items())
    ]


def pass_rng(seed: int, phase: int, pass_index: int) -> np.random.Generator:
    """Child generator for one (phase, pass); the whole stream's only RNG source."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(phase, pass_index)))


def _sample_arrays(corpus: Corpus) -> tuple[np.ndarray, np.ndarray]:
    word_counts = np.empty(len(corpus), dtype=np.int64)
    bucket_lens = np.empty(len(corpus), dtype=np.int64)
    for pair in corpus:
        word_counts[pair.id] = len(pair.src_tokens) + len(pair.tgt_tokens)
        bucket_lens[pair.id] = max(len(pair.src_tokens), len(pair.tgt_tokens))
    return word_counts, bucket_lens


def _greedy_fill(members: np.ndarray, word_counts: np.ndarray, budget: int):
    """Split bucket members into consecutive batches under the word budget.

    A batch closes when the next sample would exceed the budget; a single
    sample above the budget is emitted alone.
    """
    current: list[int] = []
    current_wc = 0
    for i in members:
        wc = int(word_counts[i])
        if current and current_wc + wc > budget:
            yield current, current_wc
            current, current_wc = [], 0
        current.append(int(i))
        current_wc += wc
    if current:
        yield current, current_wc


def _phase_stream(
    state: CurriculumState,
    shard_set: ShardSet,
    word_counts: np.ndarray,
    bucket_lens: np.ndarray,
    config: TrainerConfig,
    start_batch_id: int,
) -> Iterator[Batch]:
    """Yield exactly ``update_freq`` batches for the state's phase.

    Each pass redraws the shard visit order and the within-shard shuffles;
    passes repeat until the phase quota is met, so phases whose visible data
    is smaller than the quota simply cycle.
    """
    emitted = 0
    pass_index = 0
    prev_last = state.prev_last_shard
    batch_id = start_batch_id
    while True:
        rng = pass_rng(config.seed, state.phase, pass_index)
        order = order_shards(replace(state, prev_last_shard=prev_last), rng)
        for shard in order:
            members = np.array(shard_set.shards[shard], dtype=np.int64)
            rng.shuffle(members)
            keys = bucket_lens[members] // config.bucket_width
            for key in np.unique(keys):
                in_bucket = members[keys == key]
                for ids, wc in _greedy_fill(in_bucket, word_counts, config.word_budget):
                    yield Batch(
                        batch_id=batch_id,
                        phase=state.phase,
                        shard=int(shard),
                        sample_ids=tuple(ids),
                        word_count=wc,
                    )
                    batch_id += 1
                    emitted += 1
                    prev_last = int(shard)
                    if emitted >= config.update_freq:
                        return
        pass_index += 1


def emit_phase_batches(
    state: CurriculumState,
    shard_set: ShardSet,
    corpus: Corpus,
    config: TrainerConfig,
    start_batch_id: int = 0,
) -> Iterator[Batch]:
    """Standalone single-phase batch stream (see ``_phase_stream``)."""
    word_counts, bucket_lens = _sample_arrays(corpus)
    yield from _phase_stream(state, shard_set, word_counts, bucket_lens, config, start_batch_id)


def make_state(config: TrainerConfig) -> CurriculumState:
    return initial_state(
        config.schedule_kind,
        config.k,
        seed=config.seed,
        full_visibility=config.is_baseline,
        reduce_max_removed=config.reduce_max_removed,
    )


def event_stream(corpus: Corpus, shard_set: ShardSet, config: TrainerConfig) -> Iterator[Event]:
    """The full batch stream with control events interleaved.

    Checkpoint events fire every ``checkpoint_freq`` batches and phase
    advances every ``update_freq`` batches; when both coincide the checkpoint
    comes first. An end event closes the stream when ``max_batches`` is
    reached; without a cap the stream is unbounded and the consumer decides
    when to stop.
    """
    if shard_set.k != config.k:
        raise ConfigError(f"shard set has k={shard_set.k} but config.k={config.k}")
    if shard_set.size != len(corpus):
        raise ConfigError("shard set does not cover the corpus")
    word_counts, bucket_lens = _sample_arrays(corpus)
    state = make_state(config)
    total = 0
    batch_id = 0
    checkpoint = 0
    while True:
        last_shard = state.prev_last_shard
        for batch in _phase_stream(state, shard_set, word_counts, bucket_lens, config, batch_id):
            yield batch
            last_shard = batch.shard
            batch_id += 1
            total += 1
            if total % config.checkpoint_freq == 0:
                checkpoint += 1
                yield CheckpointEvent(index=checkpoint, batches_seen=total)
            if config.max_batches is not None and total >= config.max_batches:
                yield EndEvent(total_batches=total)
                return
        state = advance_phase(state, last_shard)
        yield PhaseAdvanceEvent(phase=state.phase)


class Learner(Protocol):
    """What the training loop needs from a model."""

    def consume_batch(self, batch: Batch) -> None: ...

    def evaluate(self) -> float: ...


INITIAL_METRIC = 100.0


class MockLearner:
    """Deterministic stand-in learner for exercising the convergence loop.

    The metric is a fixed decreasing function of the number of distinct
    samples consumed: ``INITIAL_METRIC / (1 + rate * d)`` with ``rate``
    derived from the seed, and ``d`` capped at ``plateau_after`` when set.
    Before any batch it returns exactly ``INITIAL_METRIC``; the same sample
    set in any order yields the same metric.
    """

    def __init__(self, seed: int = 0, plateau_after: int | None = None):
        self._seen: set[int] = set()
        self._rate = float(np.random.default_rng(seed).uniform(0.5, 1.5))
        self._plateau = plateau_after

    def consume_batch(self, batch: Batch) -> None:
        self._seen.update(batch.sample_ids)

    def evaluate(self) -> float:
        distinct = len(self._seen)
        if self._plateau is not None:
            distinct = min(distinct, self._plateau)
        return INITIAL_METRIC / (1.0 + self._rate * distinct)


@dataclass(frozen=True)
class BatchRecord:
    batch_id: int
    phase: int
    shard: int
    word_count: int


@dataclass(frozen=True)
class CheckpointRecord:
    index: int
    batches_seen: int
    metric: float


@dataclass
class TrainingLog:
    """Everything a run produced: per-batch and per-checkpoint records plus
    the convergence summary."""

    batches: list[BatchRecord]
    checkpoints: list[CheckpointRecord]
    converged: bool
    best_checkpoint: int | None
    best_metric: float | None
    total_batches: int

    def write_curve_csv(self, path: str | Path) -> None:
        lines = ["checkpoint,batches,metric"]
        lines += [f"{c.index},{c.batches_seen},{c.metric!r}" for c in self.checkpoints]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    def to_dict(self) -> dict:
        return {
            "converged": self.converged,
            "best_checkpoint": self.best_checkpoint,
            "best_metric": self.best_metric,
            "total_batches": self.total_batches,
            "checkpoints": [
                {"checkpoint": c.index, "batches": c.batches_seen, "metric": c.metric}
                for c in self.checkpoints
            ],
            "batches": [
                {"batch_id": b.batch_id, "phase": b.phase, "shard": b.shard,
                 "word_count": b.word_count}
                for b in self.batches
            ],
        }


def run(
    corpus: Corpus,
    shard_set: ShardSet,
    config: TrainerConfig,
    learner: Learner,
    on_event: Callable[[Event], None] | None = None,
) -> TrainingLog:
    """Drive the event stream into a learner until convergence or the cap.

    The learner consumes every batch; ``evaluate()`` runs at each checkpoint
    (lower is better) and the run stops once the metric has not improved for
    ``patience`` consecutive checkpoints. ``on_event`` sees every event,
    including a final end event when the run stops early.
    """
    records: list[BatchRecord] = []
    checkpoints: list[CheckpointRecord] = []
    best = float("inf")
    best_checkpoint: int | None = None
    since_improvement = 0
    converged = False
    total = 0
    ended = False
    for event in event_stream(corpus, shard_set, config):
        if isinstance(event, EndEvent):
            ended = True
        if on_event is not None:
            on_event(event)
        if isinstance(event, Batch):
            try:
                learner.consume_batch(event)
            except Exception as exc:
                raise LearnerFailure(event.batch_id) from exc
            records.append(BatchRecord(event.batch_id, event.phase, event.shard,
                                       event.word_count))
            total = event.batch_id + 1
        elif isinstance(event, CheckpointEvent):
            try:
                metric = float(learner.evaluate())
            except Exception as exc:
                raise LearnerFailure(total - 1) from exc
            checkpoints.append(CheckpointRecord(event.index, event.batches_seen, metric))
            if metric < best:
                best = metric
                best_checkpoint = event.index
                since_improvement = 0
            else:
                since_improvement += 1
            if since_improvement >= config.patience:
                converged = True
                break
        elif isinstance(event, EndEvent):
            break
    if on_event is not None and not ended:
        on_event(EndEvent(total_batches=total))
    return TrainingLog(
        batches=records,
        checkpoints=checkpoints,
        converged=converged,
        best_checkpoint=best_checkpoint,
        best_metric=None if best_checkpoint is None else best,
        total_batches=total,
    )
