"""Visualize the five curriculum schedules as phase-by-phase shard tables.

Shows which shards are visible at each phase (0 = easiest), the sampling
probability they carry, and an example shuffled visit order.
"""

import numpy as np

from curricula import (
    ScheduleKind,
    advance_phase,
    initial_state,
    order_shards,
    phase_distribution,
)

K = 5
SIZES = [120, 250, 310, 200, 120]  # pretend shard sizes
PHASES = 9


def render(visible, k):
    cells = []
    for s in range(k):
        count = visible.count(s)
        cells.append({0: " . ", 1: f"[{s}]"}.get(count, f"{s}x{count}"))
    return " ".join(cells)


def main() -> None:
    for kind in ScheduleKind:
        print(f"\n=== {kind.value} ===")
        state = initial_state(kind, K, seed=11)
        rng = np.random.default_rng(11)
        print(f"{'phase':>5}  {'visible shards':<22} {'order':<18} q(hardest)")
        for phase in range(1, PHASES + 1):
            order = order_shards(state, rng)
            dist = phase_distribution(state, SIZES)
            print(f"{phase:>5}  {render(list(state.visible), K):<22} "
                  f"{'-'.join(map(str, order)):<18} {dist.per_shard[K - 1]:.3f}")
            state = advance_phase(state, prev_last_shard=order[-1])


if __name__ == "__main__":
    main()
