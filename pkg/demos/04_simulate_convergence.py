"""Run the full training loop against the mock learner and compare schedules.

Each schedule trains until the validation-style metric stops improving for
the patience window; the printed table mirrors a "time in batches until
convergence" comparison, with the no-curriculum baseline included.
"""

from pathlib import Path

from curricula import (
    Criterion,
    MockLearner,
    TrainerConfig,
    assign_shards,
    compute_criterion,
    load_bitext,
    random_shards,
    run,
)

DATA = Path(__file__).resolve().parent.parent / "data"
SCHEDULES = ("default", "reverse", "boost", "reduce", "noshuffle", "baseline")


def main() -> None:
    corpus = load_bitext(DATA / "toy.src", DATA / "toy.tgt")
    scores = compute_criterion(corpus, Criterion.parse("avg_wfr:both"))

    print(f"{'schedule':<10} {'batches':>8} {'checkpoints':>12} {'best':>5} {'metric':>8}")
    for schedule in SCHEDULES:
        if schedule == "baseline":
            shards = random_shards(corpus.size, 5, seed=1)
        else:
            shards = assign_shards(corpus, scores, k=5)
        config = TrainerConfig(schedule=schedule, k=5, word_budget=512,
                               update_freq=20, checkpoint_freq=20, patience=5, seed=1)
        log = run(corpus, shards, config, MockLearner(seed=1))
        print(f"{schedule:<10} {log.total_batches:>8} {len(log.checkpoints):>12} "
              f"{log.best_checkpoint:>5} {log.best_metric:>8.4f}")


if __name__ == "__main__":
    main()
