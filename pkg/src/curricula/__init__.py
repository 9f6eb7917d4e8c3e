"""Curriculum batch scheduling for parallel corpora.

Scores samples by difficulty, groups them into shards with optimal 1-D
classification, and emits deterministic mini-batch streams under phase-based
curriculum schedules, independent of any model framework.
"""

from .corpus import Corpus, FreqTable, SamplePair, Side, build_freq_table, load_bitext
from .difficulty import (
    Criterion,
    CriterionKind,
    DifficultyVector,
    compute_criterion,
    load_one_best_scores,
    read_score_file,
    score_sentence_length,
    score_word_freq_rank,
    write_score_file,
)
from .errors import (
    ConfigError,
    DegenerateShard,
    EmptyLine,
    InvalidEncoding,
    LearnerFailure,
    LineCountMismatch,
    OutOfRange,
    ParseError,
    SchedulerError,
    TooManyClasses,
    UnknownWord,
)
from .pipeline import (
    BASELINE,
    INITIAL_METRIC,
    Batch,
    BatchRecord,
    Bucket,
    CheckpointEvent,
    CheckpointRecord,
    EndEvent,
    Learner,
    MockLearner,
    PhaseAdvanceEvent,
    TrainerConfig,
    TrainingLog,
    bucket_by_length,
    emit_phase_batches,
    event_stream,
    make_state,
    pass_rng,
    run,
)
from .schedule import (
    CurriculumState,
    PhaseDistribution,
    ScheduleKind,
    advance_phase,
    initial_state,
    order_shards,
    phase_distribution,
    visible_shards,
)
from .sharding import (
    BreakSet,
    ShardSet,
    assign_shards,
    classify,
    gvf,
    jenks_breaks,
    random_shards,
    sdcm,
    shards_from_values,
)

__version__ = "0.1.0"
