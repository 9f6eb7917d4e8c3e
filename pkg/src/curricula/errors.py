"""Exception hierarchy shared by corpus loading, scoring, sharding, and training."""

from __future__ import annotations


class SchedulerError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SchedulerError):
    """Run configuration is invalid or incomplete."""


class LineCountMismatch(SchedulerError):
    """Two id-aligned inputs disagree on line count."""

    def __init__(self, expected: int, actual: int, path: str | None = None):
        self.expected = expected
        self.actual = actual
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"expected {expected} lines, found {actual}{where}")


class EmptyLine(SchedulerError):
    """A corpus line tokenized to zero tokens; ids must stay line-stable."""

    def __init__(self, sample_id: int, path: str | None = None):
        self.sample_id = sample_id
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"empty line at sample id {sample_id}{where}")


class InvalidEncoding(SchedulerError):
    """Input file is not valid UTF-8."""

    def __init__(self, path: str):
        self.path = path
        super().__init__(f"not valid UTF-8: {path}")


class UnknownWord(SchedulerError):
    """A token has no entry in the frequency table it was looked up in."""

    def __init__(self, word: str, side: str):
        self.word = word
        self.side = side
        super().__init__(f"word {word!r} not in {side} frequency table")


class ParseError(SchedulerError):
    """A score-file line is not a decimal number. ``line`` is the 0-based sample id."""

    def __init__(self, line: int, text: str = "", path: str | None = None):
        self.line = line
        self.text = text
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"cannot parse score {text!r} at line {line}{where}")


class OutOfRange(SchedulerError):
    """A probability is outside (0, 1]. ``line`` is the 0-based sample id."""

    def __init__(self, line: int, value: float, path: str | None = None):
        self.line = line
        self.value = value
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"probability {value!r} at line {line}{where} not in (0, 1]")


class TooManyClasses(SchedulerError):
    """Requested more classes than there are distinct values."""

    def __init__(self, k: int, distinct: int):
        self.k = k
        self.distinct = distinct
        super().__init__(f"cannot split {distinct} distinct values into {k} classes")


class DegenerateShard(SchedulerError):
    """A shard came out empty; indicates broken break bounds."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"shard {index} is empty")


class LearnerFailure(SchedulerError):
    """The learner raised while consuming a batch or evaluating."""

    def __init__(self, batch_id: int):
        self.batch_id = batch_id
        super().__init__(f"learner failed at batch {batch_id}")
