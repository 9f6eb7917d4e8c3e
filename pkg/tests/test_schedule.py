import numpy as np
import pytest

from curricula.schedule import (
    CurriculumState,
    ScheduleKind,
    advance_phase,
    initial_state,
    order_shards,
    phase_distribution,
    visible_shards,
)
from curricula.sharding import random_shards

K5_TABLES = {
    ScheduleKind.DEFAULT: [
        (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 3, 4),
        (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4),
    ],
    ScheduleKind.NOSHUFFLE: [
        (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 3, 4),
        (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4),
    ],
    ScheduleKind.REVERSE: [
        (4,), (3, 4), (2, 3, 4), (1, 2, 3, 4), (0, 1, 2, 3, 4),
        (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4), (0, 1, 2, 3, 4),
    ],
    ScheduleKind.BOOST: [
        (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 3, 4),
        (0, 1, 2, 3, 4, 4), (0, 1, 2, 3, 4, 4), (0, 1, 2, 3, 4, 4),
        (0, 1, 2, 3, 4, 4), (0, 1, 2, 3, 4, 4),
    ],
    ScheduleKind.REDUCE: [
        (0,), (0, 1), (0, 1, 2), (0, 1, 2, 3), (0, 1, 2, 3, 4),
        (1, 2, 3, 4), (2, 3, 4), (0, 1, 2, 3, 4), (1, 2, 3, 4), (2, 3, 4),
    ],
}


@pytest.mark.parametrize("kind", list(ScheduleKind))
def test_visibility_tables_k5(kind):
    got = [visible_shards(kind, t, 5) for t in range(1, 11)]
    assert got == K5_TABLES[kind]


def test_visibility_spot_checks():
    assert visible_shards(ScheduleKind.DEFAULT, 3, 5) == (0, 1, 2)
    assert visible_shards(ScheduleKind.BOOST, 6, 5) == (0, 1, 2, 3, 4, 4)
    assert visible_shards(ScheduleKind.REDUCE, 6, 5) == (1, 2, 3, 4)
    assert visible_shards(ScheduleKind.REDUCE, 7, 5) == (2, 3, 4)
    assert visible_shards(ScheduleKind.REDUCE, 8, 5) == (0, 1, 2, 3, 4)
    assert visible_shards(ScheduleKind.REVERSE, 2, 5) == (3, 4)


@pytest.mark.parametrize("kind", list(ScheduleKind))
def test_k1_always_single_shard(kind):
    for phase in range(1, 8):
        assert visible_shards(kind, phase, 1) == (0,)


def test_reverse_is_reflected_default():
    for k in (1, 2, 3, 5, 7):
        for phase in range(1, 2 * k + 3):
            default = visible_shards(ScheduleKind.DEFAULT, phase, k)
            reverse = visible_shards(ScheduleKind.REVERSE, phase, k)
            assert sorted(k - 1 - s for s in default) == list(reverse)


def test_saturation_after_k_phases():
    for kind in (ScheduleKind.DEFAULT, ScheduleKind.NOSHUFFLE, ScheduleKind.REVERSE):
        for phase in range(5, 50):
            assert visible_shards(kind, phase, 5) == (0, 1, 2, 3, 4)


def test_reduce_never_empty_small_k():
    for k in (1, 2):
        for phase in range(1, 20):
            assert len(visible_shards(ScheduleKind.REDUCE, phase, k)) > 0


def test_reduce_removal_knob():
    # removal cap 3: cycle drops 1, 2, 3 shards then restores all
    table = [visible_shards(ScheduleKind.REDUCE, t, 5, reduce_max_removed=3)
             for t in range(6, 10)]
    assert table == [(1, 2, 3, 4), (2, 3, 4), (3, 4), (0, 1, 2, 3, 4)]


def test_advance_phase_examples():
    state = initial_state(ScheduleKind.DEFAULT, 5, seed=1)
    for _ in range(4):
        state = advance_phase(state)
    assert state.phase == 5
    assert state.visible == (0, 1, 2, 3, 4)
    next_state = advance_phase(state)
    assert next_state.phase == 6 and next_state.visible == (0, 1, 2, 3, 4)

    reduce_state = initial_state(ScheduleKind.REDUCE, 5)
    for _ in range(4):
        reduce_state = advance_phase(reduce_state)
    after = advance_phase(reduce_state)
    assert after.visible == (1, 2, 3, 4) and after.removed_count == 1

    boost_state = initial_state(ScheduleKind.BOOST, 5)
    for _ in range(4):
        boost_state = advance_phase(boost_state)
    assert advance_phase(boost_state).visible == (0, 1, 2, 3, 4, 4)


def test_advance_phase_carries_prev_last():
    state = initial_state(ScheduleKind.DEFAULT, 5)
    state = advance_phase(state, prev_last_shard=0)
    assert state.prev_last_shard == 0
    state = advance_phase(state)
    assert state.prev_last_shard == 0
    state = advance_phase(state, prev_last_shard=2)
    assert state.prev_last_shard == 2


def test_distribution_single_visible_shard():
    state = initial_state(ScheduleKind.DEFAULT, 3)
    sizes = [7, 5, 8]
    dist = phase_distribution(state, sizes)
    assert dist.per_shard[0] == 1.0
    assert dist.per_shard[1] == 0.0
    assert dist.per_sample_by_shard[0] == 1.0 / 7
    shards = random_shards(20, 3, seed=1)
    per_sample = phase_distribution(state, shards.sizes).per_sample(shards)
    members = set(shards.shards[0])
    for i in range(20):
        expected = 1.0 / len(members) if i in members else 0.0
        assert per_sample[i] == expected


def test_distribution_uniform_at_full_visibility():
    shards = random_shards(100, 5, seed=2)
    state = initial_state(ScheduleKind.DEFAULT, 5)
    for _ in range(6):
        state = advance_phase(state)
    dist = phase_distribution(state, shards.sizes)
    per_sample = dist.per_sample(shards)
    assert np.all(per_sample == 1.0 / 100)


def test_distribution_boost_duplicate_weighting():
    state = CurriculumState(kind=ScheduleKind.BOOST, k=2, phase=3, visible=(0, 1, 1))
    dist = phase_distribution(state, [10, 10])
    assert dist.per_shard[0] == 10 / 30
    assert dist.per_shard[1] == 20 / 30


@pytest.mark.parametrize("kind", list(ScheduleKind))
def test_distribution_sums_to_one_and_zero_on_invisible(kind):
    shards = random_shards(777, 5, seed=3)
    state = initial_state(kind, 5)
    for _ in range(12):
        dist = phase_distribution(state, shards.sizes)
        per_sample = dist.per_sample(shards)
        assert abs(per_sample.sum() - 1.0) <= 1e-12
        assert np.all(per_sample >= 0.0)
        visible = set(state.visible)
        for s in range(5):
            if s not in visible:
                assert dist.per_shard[s] == 0.0
                assert all(per_sample[i] == 0.0 for i in shards.shards[s])
        state = advance_phase(state)


def test_order_noshuffle_is_ascending():
    state = initial_state(ScheduleKind.NOSHUFFLE, 5)
    for _ in range(6):
        rng = np.random.default_rng(0)
        assert order_shards(state, rng) == tuple(sorted(state.visible))
        state = advance_phase(state, prev_last_shard=4)


def test_order_single_shard_waives_constraint():
    state = CurriculumState(kind=ScheduleKind.DEFAULT, k=1, phase=1, visible=(0,),
                            prev_last_shard=0)
    assert order_shards(state, np.random.default_rng(1)) == (0,)


def test_order_rejection_rule_monte_carlo():
    state = CurriculumState(kind=ScheduleKind.DEFAULT, k=2, phase=2, visible=(0, 1),
                            prev_last_shard=1)
    rng = np.random.default_rng(321)
    for _ in range(10_000):
        assert order_shards(state, rng)[0] != 1


def test_order_is_permutation_of_visible_multiset():
    rng = np.random.default_rng(17)
    state = CurriculumState(kind=ScheduleKind.BOOST, k=5, phase=7,
                            visible=(0, 1, 2, 3, 4, 4), prev_last_shard=2)
    for _ in range(200):
        order = order_shards(state, rng)
        assert sorted(order) == [0, 1, 2, 3, 4, 4]


def test_adjacency_over_many_transitions():
    rng = np.random.default_rng(7)
    for kind in (ScheduleKind.DEFAULT, ScheduleKind.REVERSE, ScheduleKind.BOOST,
                 ScheduleKind.REDUCE):
        state = initial_state(kind, 5)
        prev_last = None
        for _ in range(300):
            order = order_shards(state, rng)
            if prev_last is not None and len(set(state.visible)) > 1:
                assert order[0] != prev_last
            prev_last = order[-1]
            state = advance_phase(state, prev_last_shard=prev_last)
