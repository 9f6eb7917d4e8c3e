"""JSONL wire format for the batch stream.

One record per line, UTF-8. Batch records carry the sample ids plus the
token arrays so a consumer needs no corpus access; control records are
distinguished by an ``event`` key ("checkpoint", "phase_advance", "end").
"""

from __future__ import annotations

import json
from typing import Iterator

from .corpus import Corpus
from .pipeline import Batch, CheckpointEvent, EndEvent, Event, PhaseAdvanceEvent


def event_to_record(event: Event, corpus: Corpus) -> dict:
    if isinstance(event, Batch):
        return {
            "batch_id": event.batch_id,
            "phase": event.phase,
            "shard": event.shard,
            "sample_ids": list(event.sample_ids),
            "src": [list(corpus[i].src_tokens) for i in event.sample_ids],
            "tgt": [list(corpus[i].tgt_tokens) for i in event.sample_ids],
            "word_count": event.word_count,
        }
    if isinstance(event, CheckpointEvent):
        return {"event": "checkpoint", "checkpoint": event.index, "batches": event.batches_seen}
    if isinstance(event, PhaseAdvanceEvent):
        return {"event": "phase_advance", "phase": event.phase}
    if isinstance(event, EndEvent):
        return {"event": "end", "total_batches": event.total_batches}
    raise TypeError(f"not a stream event: {event!r}")


def to_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))


def stream_lines(events, corpus: Corpus) -> Iterator[str]:
    for event in events:
        yield to_line(event_to_record(event, corpus))


def parse_line(line: str) -> dict:
    return json.loads(line)
