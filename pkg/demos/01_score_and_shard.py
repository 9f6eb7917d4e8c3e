"""Walk through difficulty scoring and shard assignment on the toy corpus.

Loads the bundled bitext, computes every built-in difficulty criterion,
then classifies one of them into 5 shards and prints the break table.
"""

from pathlib import Path

import numpy as np

from curricula import (
    Criterion,
    assign_shards,
    compute_criterion,
    gvf,
    load_bitext,
)

DATA = Path(__file__).resolve().parent.parent / "data"


def main() -> None:
    corpus = load_bitext(DATA / "toy.src", DATA / "toy.tgt")
    print(f"loaded {corpus.size} sentence pairs")

    print("\ncriterion            min     max    mean")
    for spec in ("sent_len:src", "sent_len:tgt", "sent_len:both",
                 "max_wfr:src", "max_wfr:both", "avg_wfr:both", "one_best"):
        vector = compute_criterion(corpus, Criterion.parse(spec),
                                   one_best_path=DATA / "toy.onebest")
        v = vector.values
        print(f"{spec:<18} {v.min():7.2f} {v.max():7.2f} {v.mean():7.2f}")

    print("\nsharding sent_len:both into 5 difficulty classes:")
    scores = compute_criterion(corpus, Criterion.parse("sent_len:both"))
    shard_set = assign_shards(corpus, scores, k=5)
    breaks = shard_set.breaks
    print(f"{'shard':>5} {'upper bound':>12} {'size':>6}")
    for s, (bound, size) in enumerate(zip(breaks.upper_bounds, shard_set.sizes)):
        print(f"{s:>5} {bound:>12.1f} {size:>6}")
    print(f"goodness of variance fit: {gvf(scores.values, breaks):.4f}")

    # shard means must be ascending: harder shards hold longer sentences
    means = [np.mean([scores.values[i] for i in ids]) for ids in shard_set.shards]
    print("mean difficulty per shard:", " ".join(f"{m:.1f}" for m in means))


if __name__ == "__main__":
    main()
