"""Parallel-corpus loading and per-language word frequency statistics.

A corpus is two plain-text files, one sentence per line, line i on each side
forming sample i. Tokenization is whitespace splitting; any subword
segmentation is an upstream preprocessing step.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator

from .errors import EmptyLine, InvalidEncoding, LineCountMismatch, UnknownWord


class Side(str, Enum):
    """Which side(s) of a sentence pair an operation applies to."""

    SRC = "src"
    TGT = "tgt"
    BOTH = "both"


@dataclass(frozen=True)
class SamplePair:
    """One aligned sentence pair; ``id`` is the 0-based line number."""

    id: int
    src_tokens: tuple[str, ...]
    tgt_tokens: tuple[str, ...]

    def length(self, side: Side) -> int:
        """Token count on ``side``; BOTH sums the two sides."""
        if side is Side.SRC:
            return len(self.src_tokens)
        if side is Side.TGT:
            return len(self.tgt_tokens)
        return len(self.src_tokens) + len(self.tgt_tokens)


class Corpus:
    """Immutable sequence of sentence pairs with dense ids 0..S-1."""

    def __init__(self, pairs: Iterator[SamplePair] | list[SamplePair] | tuple[SamplePair, ...]):
        self._pairs = tuple(pairs)
        for i, pair in enumerate(self._pairs):
            if pair.id != i:
                raise ValueError(f"pair at position {i} has id {pair.id}; ids must be dense")

    @property
    def size(self) -> int:
        return len(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[SamplePair]:
        return iter(self._pairs)

    def __getitem__(self, sample_id: int) -> SamplePair:
        return self._pairs[sample_id]

    def __repr__(self) -> str:
        return f"Corpus(size={self.size})"


@dataclass(frozen=True)
class FreqTable:
    """Word occurrence counts and competition ranks for one corpus side.

    Ranks use competition ("1224") ranking on descending count: rank(w) is
    1 plus the number of distinct words with strictly greater count, so ties
    share the smallest rank of their group and the most frequent word has
    rank 1.
    """

    side: Side
    counts: dict[str, int]
    ranks: dict[str, int]

    def rank(self, word: str) -> int:
        try:
            return self.ranks[word]
        except KeyError:
            raise UnknownWord(word, self.side.value) from None


def read_lines(path: str | Path) -> list[str]:
    """Read a UTF-8 text file into lines; accepts LF or CRLF endings."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError:
        raise InvalidEncoding(str(path)) from None
    text = text.replace("\r\n", "\n")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def load_bitext(src_path: str | Path, tgt_path: str | Path) -> Corpus:
    """Load two line-aligned sentence files into a Corpus.

    Raises LineCountMismatch if the files differ in length, EmptyLine if any
    line tokenizes to nothing (ids must stay line-stable for external score
    files), and InvalidEncoding for non-UTF-8 input.
    """
    src_lines = read_lines(src_path)
    tgt_lines = read_lines(tgt_path)
    if len(src_lines) != len(tgt_lines):
        raise LineCountMismatch(len(src_lines), len(tgt_lines), str(tgt_path))
    pairs = []
    for i, (src_line, tgt_line) in enumerate(zip(src_lines, tgt_lines)):
        src_tokens = tuple(src_line.split())
        tgt_tokens = tuple(tgt_line.split())
        if not src_tokens:
            raise EmptyLine(i, str(src_path))
        if not tgt_tokens:
            raise EmptyLine(i, str(tgt_path))
        pairs.append(SamplePair(id=i, src_tokens=src_tokens, tgt_tokens=tgt_tokens))
    return Corpus(pairs)


def build_freq_table(corpus: Corpus, side: Side) -> FreqTable:
    """Count token occurrences on one side and assign competition ranks."""
    if side is Side.BOTH:
        raise ValueError("frequency tables are per side; build one for src and one for tgt")
    if len(corpus) == 0:
        raise ValueError("cannot build a frequency table for an empty corpus")
    counts: Counter[str] = Counter()
    for pair in corpus:
        counts.update(pair.src_tokens if side is Side.SRC else pair.tgt_tokens)
    ranks: dict[str, int] = {}
    prev_count: int | None = None
    rank = 0
    for position, (word, count) in enumerate(
        sorted(counts.items(), key=lambda item: -item[1]), start=1
    ):
        if count != prev_count:
            rank = position
            prev_count = count
        ranks[word] = rank
    return FreqTable(side=side, counts=dict(counts), ranks=ranks)
