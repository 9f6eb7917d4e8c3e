"""Scalar difficulty criteria over sentence pairs; higher value means harder.

Four criteria are supported: sentence length, max and average word frequency
rank (per side or pooled over both sides, each word looked up in its own
language's table), and an externally supplied one-best translation
probability mapped through -log(p) so that confident predictions score easy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .corpus import Corpus, FreqTable, Side, build_freq_table, read_lines
from .errors import ConfigError, LineCountMismatch, OutOfRange, ParseError


class CriterionKind(str, Enum):
    SENT_LEN = "sent_len"
    MAX_WFR = "max_wfr"
    AVG_WFR = "avg_wfr"
    ONE_BEST = "one_best"


@dataclass(frozen=True)
class Criterion:
    """A named difficulty criterion. ``one_best`` always scores the whole pair."""

    kind: CriterionKind
    side: Side = Side.BOTH

    def __post_init__(self):
        if self.kind is CriterionKind.ONE_BEST and self.side is not Side.BOTH:
            object.__setattr__(self, "side", Side.BOTH)

    @classmethod
    def parse(cls, spec: str) -> "Criterion":
        """Parse a ``kind:side`` spec such as ``avg_wfr:both`` or ``one_best``."""
        kind_part, sep, side_part = spec.strip().partition(":")
        try:
            kind = CriterionKind(kind_part)
        except ValueError:
            raise ConfigError(
                f"unknown criterion {kind_part!r}; expected one of "
                f"{', '.join(k.value for k in CriterionKind)}"
            ) from None
        if not sep:
            return cls(kind)
        try:
            side = Side(side_part)
        except ValueError:
            raise ConfigError(f"unknown side {side_part!r}; expected src, tgt, or both") from None
        return cls(kind, side)

    @property
    def label(self) -> str:
        if self.kind is CriterionKind.ONE_BEST:
            return self.kind.value
        return f"{self.kind.value}:{self.side.value}"


@dataclass(frozen=True)
class DifficultyVector:
    """Per-sample difficulty scores, index-aligned with corpus ids."""

    criterion: Criterion
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("difficulty values must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise ValueError("difficulty values must all be finite")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.shape[0])


def score_sentence_length(corpus: Corpus, side: Side) -> DifficultyVector:
    """Token count per pair on ``side``; BOTH is the sum of the two sides."""
    values = [float(pair.length(side)) for pair in corpus]
    return DifficultyVector(Criterion(CriterionKind.SENT_LEN, side), np.array(values))


def score_word_freq_rank(
    corpus: Corpus,
    side: Side,
    mode: str,
    src_table: FreqTable | None = None,
    tgt_table: FreqTable | None = None,
) -> DifficultyVector:
    """Max or average word frequency rank over the tokens in scope.

    ``mode`` is "max" (rank of the least frequent word) or "avg". For
    side=BOTH the token multisets of both sides are pooled, each token
    looked up in its own language's table. Tables must come from the same
    corpus; a missing word raises UnknownWord and signals a mismatch.
    """
    if mode not in ("max", "avg"):
        raise ValueError(f"mode must be 'max' or 'avg', got {mode!r}")
    if side in (Side.SRC, Side.BOTH) and src_table is None:
        raise ValueError("src_table is required for side=src or side=both")
    if side in (Side.TGT, Side.BOTH) and tgt_table is None:
        raise ValueError("tgt_table is required for side=tgt or side=both")

    values = []
    for pair in corpus:
        ranks: list[int] = []
        if side in (Side.SRC, Side.BOTH):
            ranks.extend(src_table.rank(tok) for tok in pair.src_tokens)
        if side in (Side.TGT, Side.BOTH):
            ranks.extend(tgt_table.rank(tok) for tok in pair.tgt_tokens)
        if mode == "max":
            values.append(float(max(ranks)))
        else:
            values.append(sum(ranks) / len(ranks))
    kind = CriterionKind.MAX_WFR if mode == "max" else CriterionKind.AVG_WFR
    return DifficultyVector(Criterion(kind, side), np.array(values))


def load_one_best_scores(path: str | Path, corpus: Corpus) -> DifficultyVector:
    """Ingest per-sample translation probabilities and map them to -log(p).

    The file must have exactly one decimal in (0, 1] per corpus line. High
    model confidence maps to low difficulty; p=1 scores exactly 0.
    """
    lines = read_lines(path)
    if len(lines) != len(corpus):
        raise LineCountMismatch(len(corpus), len(lines), str(path))
    values = np.empty(len(lines), dtype=np.float64)
    for i, line in enumerate(lines):
        text = line.strip()
        try:
            p = float(text)
        except ValueError:
            raise ParseError(i, text, str(path)) from None
        if not math.isfinite(p) or p <= 0.0 or p > 1.0:
            raise OutOfRange(i, p, str(path))
        values[i] = -math.log(p)
    return DifficultyVector(Criterion(CriterionKind.ONE_BEST), values)


def compute_criterion(
    corpus: Corpus,
    criterion: Criterion,
    one_best_path: str | Path | None = None,
    src_table: FreqTable | None = None,
    tgt_table: FreqTable | None = None,
) -> DifficultyVector:
    """Dispatch to the right scorer, building frequency tables on demand."""
    kind = criterion.kind
    if kind is CriterionKind.ONE_BEST:
        if one_best_path is None:
            raise ConfigError("criterion 'one_best' requires a score file path")
        return load_one_best_scores(one_best_path, corpus)
    if kind is CriterionKind.SENT_LEN:
        return score_sentence_length(corpus, criterion.side)
    if criterion.side in (Side.SRC, Side.BOTH) and src_table is None:
        src_table = build_freq_table(corpus, Side.SRC)
    if criterion.side in (Side.TGT, Side.BOTH) and tgt_table is None:
        tgt_table = build_freq_table(corpus, Side.TGT)
    mode = "max" if kind is CriterionKind.MAX_WFR else "avg"
    return score_word_freq_rank(corpus, criterion.side, mode, src_table, tgt_table)


def write_score_file(values: np.ndarray, path: str | Path) -> None:
    """Persist scores one decimal per line, line i = sample id i."""
    out = "\n".join(repr(float(v)) for v in np.asarray(values, dtype=np.float64))
    Path(path).write_text(out + "\n", encoding="utf-8")


def read_score_file(path: str | Path, expected_len: int | None = None) -> np.ndarray:
    """Read a raw difficulty vector (one decimal per line), no transform."""
    lines = read_lines(path)
    if expected_len is not None and len(lines) != expected_len:
        raise LineCountMismatch(expected_len, len(lines), str(path))
    values = np.empty(len(lines), dtype=np.float64)
    for i, line in enumerate(lines):
        text = line.strip()
        try:
            values[i] = float(text)
        except ValueError:
            raise ParseError(i, text, str(path)) from None
        if not math.isfinite(values[i]):
            raise ParseError(i, text, str(path))
    return values
