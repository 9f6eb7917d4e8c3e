"""Command-line front end: score -> shard -> plan / simulate / stream.

Every command is a pure function of (inputs, config, seed); outputs land in
a run directory named by a hash of the effective config, which is persisted
alongside them so any run can be reproduced from its artifacts alone.

Exit codes: 0 success or converged, 2 usage error, 3 data error, 4 batch cap
reached before convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus, load_bitext
from .difficulty import Criterion, compute_criterion, read_score_file, write_score_file
from .errors import ConfigError, SchedulerError, TooManyClasses
from .pipeline import (
    SCHEDULE_NAMES,
    Batch,
    MockLearner,
    TrainerConfig,
    pass_rng,
    event_stream,
    make_state,
    run,
)
from .protocol import event_to_record, to_line
from .schedule import advance_phase, order_shards, phase_distribution
from .sharding import ShardSet, gvf, random_shards, shards_from_values

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_CAP = 4


@dataclass
class RunConfig:
    """Effective configuration of one command invocation."""

    src: str | None = None
    tgt: str | None = None
    scores: str | None = None
    criterion: str | None = None
    shard_report: str | None = None
    k: int = 5
    schedule: str = "default"
    seed: int = 1234
    word_budget: int = 4096
    update_freq: int = 1000
    checkpoint_freq: int = 1000
    patience: int = 32
    max_batches: int | None = None
    bucket_width: int = 10
    reduce_removed: int = 2
    horizon: int = 10
    mock_plateau: int | None = None
    out: str | None = None

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def config_hash(self) -> str:
        payload = {k: v for k, v in self.to_dict().items() if k != "out"}
        digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8"))
        return digest.hexdigest()[:12]

    def trainer_config(self) -> TrainerConfig:
        return TrainerConfig(
            schedule=self.schedule,
            k=self.k,
            word_budget=self.word_budget,
            update_freq=self.update_freq,
            checkpoint_freq=self.checkpoint_freq,
            patience=self.patience,
            bucket_width=self.bucket_width,
            seed=self.seed,
            max_batches=self.max_batches,
            reduce_max_removed=self.reduce_removed,
        )


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config-file values, and command-line flags (strongest)."""
    merged = RunConfig().to_dict()
    if args.config is not None:
        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in file_values.items():
            if key not in merged:
                raise ConfigError(f"unknown config key {key!r}")
            merged[key] = value
    for key in merged:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = cli_value
    config = RunConfig(**merged)
    if config.schedule not in SCHEDULE_NAMES:
        raise ConfigError(
            f"unknown schedule {config.schedule!r}; expected one of {', '.join(SCHEDULE_NAMES)}"
        )
    if config.k < 1:
        raise ConfigError("k must be positive")
    return config


def _run_dir(config: RunConfig, command: str, default_out: str | None = "runs") -> Path | None:
    base = config.out if config.out is not None else default_out
    if base is None:
        return None
    run_dir = Path(base) / f"{command}-{config.config_hash()}"
    run_dir.mkdir(parents=True, exist_ok=True)
    return run_dir


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _load_corpus(config: RunConfig) -> Corpus:
    if not config.src or not config.tgt:
        raise ConfigError("this command needs --src and --tgt")
    return load_bitext(config.src, config.tgt)


def _resolve_values(config: RunConfig, corpus: Corpus) -> tuple[np.ndarray, str]:
    """Difficulty values for sharding: from a criterion or a raw score file."""
    if config.criterion:
        criterion = Criterion.parse(config.criterion)
        vector = compute_criterion(corpus, criterion, one_best_path=config.scores)
        return vector.values, criterion.label
    if config.scores:
        return read_score_file(config.scores, expected_len=len(corpus)), "external"
    raise ConfigError("need --criterion or --scores to rank samples")


def _build_shards(config: RunConfig, corpus: Corpus) -> tuple[ShardSet, str]:
    if config.schedule == "baseline":
        return random_shards(len(corpus), config.k, seed=config.seed), "random"
    values, label = _resolve_values(config, corpus)
    return shards_from_values(values, config.k), label


def cmd_score(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    if not config.criterion:
        raise ConfigError("--criterion is required (comma-separate several)")
    run_dir = _run_dir(config, "score")
    summary: dict[str, dict] = {}
    for spec in config.criterion.split(","):
        criterion = Criterion.parse(spec)
        vector = compute_criterion(corpus, criterion, one_best_path=config.scores)
        filename = criterion.label.replace(":", "_") + ".txt"
        write_score_file(vector.values, run_dir / filename)
        summary[criterion.label] = {
            "file": filename,
            "count": len(vector),
            "min": float(vector.values.min()),
            "max": float(vector.values.max()),
            "mean": float(vector.values.mean()),
        }
    _write_json(run_dir / "summary.json", {"criteria": summary})
    _write_json(run_dir / "config.json", config.to_dict())
    print(run_dir)
    for label, stats in summary.items():
        print(f"{label}: n={stats['count']} min={stats['min']:g} "
              f"max={stats['max']:g} mean={stats['mean']:g}")
    return EXIT_OK


def cmd_shard(config: RunConfig) -> int:
    if not config.scores and not config.criterion:
        raise ConfigError("need --scores (a score file) or --criterion plus --src/--tgt")
    label = config.criterion or "external"
    if config.criterion and config.src and config.tgt:
        corpus = _load_corpus(config)
        values, label = _resolve_values(config, corpus)
    else:
        if not config.scores:
            raise ConfigError("--criterion without --src/--tgt needs a --scores file")
        values = read_score_file(config.scores)
    try:
        shard_set = shards_from_values(values, config.k)
    except TooManyClasses as exc:
        exc.args = (f"criterion {label}: {exc.args[0]}",)
        raise
    breaks = shard_set.breaks
    run_dir = _run_dir(config, "shard")
    assignment = shard_set.shard_of()
    (run_dir / "assignments.txt").write_text(
        "\n".join(str(int(i)) for i in assignment) + "\n", encoding="utf-8"
    )
    report = {
        "criterion": label,
        "k": config.k,
        "upper_bounds": list(breaks.upper_bounds),
        "shard_sizes": list(shard_set.sizes),
        "gvf": gvf(values, breaks),
    }
    _write_json(run_dir / "report.json", report)
    _write_json(run_dir / "config.json", config.to_dict())
    print(run_dir)
    print(f"k={config.k} sizes={list(shard_set.sizes)} gvf={report['gvf']:.4f}")
    return EXIT_OK


def cmd_plan(config: RunConfig) -> int:
    if not config.shard_report:
        raise ConfigError("--shard-report (report.json from the shard command) is required")
    try:
        report = json.loads(Path(config.shard_report).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read shard report: {exc}") from exc
    sizes = report["shard_sizes"]
    k = int(report["k"])
    trainer = dataclasses.replace(config, k=k).trainer_config()
    state = make_state(trainer)
    lines = []
    for phase in range(1, config.horizon + 1):
        rng = pass_rng(trainer.seed, phase, 0)
        order = order_shards(state, rng)
        dist = phase_distribution(state, sizes)
        record = {
            "phase": phase,
            "visible": list(state.visible),
            "order": list(order),
            "per_shard_q": {str(s): float(dist.per_shard[s]) for s in range(k)},
        }
        lines.append(to_line(record))
        state = advance_phase(state, order[-1])
    for line in lines:
        print(line)
    run_dir = _run_dir(config, "plan")
    (run_dir / "plan.jsonl").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_json(run_dir / "config.json", config.to_dict())
    return EXIT_OK


def cmd_simulate(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    shard_set, _ = _build_shards(config, corpus)
    trainer = config.trainer_config()
    learner = MockLearner(seed=config.seed, plateau_after=config.mock_plateau)
    run_dir = _run_dir(config, "simulate")
    stream_path = run_dir / "stream.jsonl"
    with open(stream_path, "w", encoding="utf-8") as stream_file:
        log = run(
            corpus,
            shard_set,
            trainer,
            learner,
            on_event=lambda ev: stream_file.write(to_line(event_to_record(ev, corpus)) + "\n"),
        )
    log.write_curve_csv(run_dir / "curve.csv")
    _write_json(run_dir / "log.json", log.to_dict())
    _write_json(run_dir / "config.json", config.to_dict())
    print(run_dir)
    print(
        f"converged={log.converged} total_batches={log.total_batches} "
        f"best_checkpoint={log.best_checkpoint}"
    )
    return EXIT_OK if log.converged else EXIT_CAP


def cmd_stream(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    shard_set, _ = _build_shards(config, corpus)
    trainer = config.trainer_config()
    events = event_stream(corpus, shard_set, trainer)
    batches = 0
    if config.out is not None:
        run_dir = _run_dir(config, "stream")
        with open(run_dir / "stream.jsonl", "w", encoding="utf-8") as out:
            for event in events:
                out.write(to_line(event_to_record(event, corpus)) + "\n")
                if isinstance(event, Batch):
                    batches += 1
        _write_json(run_dir / "config.json", config.to_dict())
        print(run_dir, file=sys.stderr)
        return EXIT_OK
    try:
        for event in events:
            sys.stdout.write(to_line(event_to_record(event, corpus)) + "\n")
            if isinstance(event, Batch):
                batches += 1
        sys.stdout.flush()
    except BrokenPipeError:
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        print(f"stream closed by consumer after {batches} batches", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curricula",
        description="Difficulty-scored sharding and curriculum batch scheduling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "score": "compute difficulty score files per criterion",
        "shard": "classify scores into k shards and report the breaks",
        "plan": "dry-run a schedule phase by phase (JSONL)",
        "simulate": "run the full loop against the built-in mock learner",
        "stream": "emit the batch-stream protocol to stdout or a file",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--src", help="source-side text file, one sentence per line")
        p.add_argument("--tgt", help="target-side text file, one sentence per line")
        p.add_argument("--scores", help="score file: one-best probabilities or a raw vector")
        p.add_argument("--criterion", help="criterion spec like sent_len:src or one_best")
        p.add_argument("--shard-report", dest="shard_report",
                       help="report.json produced by the shard command")
        p.add_argument("--k", type=int, help="number of shards (default 5)")
        p.add_argument("--schedule", choices=SCHEDULE_NAMES, help="curriculum schedule")
        p.add_argument("--seed", type=int, help="root RNG seed (default 1234)")
        p.add_argument("--word-budget", dest="word_budget", type=int,
                       help="max src+tgt tokens per batch (default 4096)")
        p.add_argument("--update-freq", dest="update_freq", type=int,
                       help="batches per curriculum phase (default 1000)")
        p.add_argument("--checkpoint-freq", dest="checkpoint_freq", type=int,
                       help="batches per checkpoint (default 1000)")
        p.add_argument("--patience", type=int,
                       help="checkpoints without improvement before stopping (default 32)")
        p.add_argument("--max-batches", dest="max_batches", type=int,
                       help="hard cap on emitted batches")
        p.add_argument("--bucket-width", dest="bucket_width", type=int,
                       help="length-bucket width (default 10)")
        p.add_argument("--reduce-removed", dest="reduce_removed", type=int,
                       help="shards removed before restoring in the reduce cycle (default 2)")
        p.add_argument("--horizon", type=int, help="phases to plan (default 10)")
        p.add_argument("--mock-plateau", dest="mock_plateau", type=int,
                       help="freeze the mock learner after this many distinct samples")
        p.add_argument("--out", help="output base directory (default ./runs; stream: stdout)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "score": cmd_score,
        "shard": cmd_shard,
        "plan": cmd_plan,
        "simulate": cmd_simulate,
        "stream": cmd_stream,
    }
    try:
        config = build_config(args)
        return handlers[args.command](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchedulerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
