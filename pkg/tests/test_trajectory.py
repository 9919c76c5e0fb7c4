import math
import random

import pytest

from rskbox.limit_curves import h
from rskbox.random_model import SeededStream
from rskbox.tableau import EMPTY, BoxPosition, DuplicateEntryError, Tableau, rsk
from rskbox.trajectory import (
    Trajectory,
    TrajectoryConfig,
    convergence_experiment,
    draw_sequence,
    first_column_probe,
    new_box_position,
    relabeling_chain,
    scaled_deviation,
    step_index,
    sup_deviations,
    track_trajectory,
    trajectory_from_sequence,
)


def brute_position(xs, n, w, j):
    P, _ = rsk(list(xs[:n]) + [w] + list(xs[n:j]))
    return P.locate(w)


def test_config_validation():
    for bad in (dict(n=0), dict(n=5, w=0.0), dict(n=5, w=1.2), dict(n=5, T_max=0.5),
                dict(n=5, sample_stride=0)):
        with pytest.raises(ValueError):
            TrajectoryConfig(**bad)


def test_step_index_handles_grid_rounding():
    assert step_index(2.9000000000000004, 100) == 290
    assert step_index(1.1, 100) == 110
    assert step_index(0.29 * 10, 100) == 290


def test_trajectory_matches_brute_force_rsk():
    cfg = TrajectoryConfig(n=20, w=0.6, T_max=3.0, seed=4)
    xs = draw_sequence(cfg)
    traj = track_trajectory(cfg)
    assert traj.steps == list(range(20, 61))
    for j, pos in zip(traj.steps, traj.positions):
        assert pos == brute_position(xs, 20, 0.6, j)


def test_w_starts_at_end_of_first_row():
    cfg = TrajectoryConfig(n=50, w=0.5, T_max=1.0, seed=1)
    xs = draw_sequence(cfg)
    traj = track_trajectory(cfg)
    below = sum(1 for x in xs[:50] if x < 0.5)
    lis = rsk([x for x in xs[:50] if x < 0.5])[0].shape()
    assert traj.positions[0].row == 1
    assert traj.positions[0].column == (lis[0] + 1 if below else 1)


def test_stride_and_extra_steps():
    traj = track_trajectory(TrajectoryConfig(n=10, T_max=2.0, seed=0, sample_stride=4),
                            extra_steps=[13])
    assert traj.steps == [10, 13, 14, 18, 20]


def test_filtering_equivalence_many_configs():
    rng = random.Random(12)
    for _ in range(100):
        cfg = TrajectoryConfig(n=rng.randint(1, 50), w=rng.uniform(0.05, 1.0), T_max=3.0,
                               seed=rng.randrange(2**32))
        a = track_trajectory(cfg)
        b = track_trajectory(cfg, filtered=False)
        assert a.steps == b.steps and a.positions == b.positions


def test_relabeling_chain_many_configs():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 50)
        w = rng.uniform(0.05, 1.0)
        xs = SeededStream(rng.randrange(2**32)).draw(3 * n, exclude=(w,)).tolist()
        chain = relabeling_chain(xs, n, w)
        expected = brute_position(xs, n, w, len(xs))
        for name, pos in chain.items():
            assert pos == expected, name


def test_relabeling_chain_edge_counts():
    # no kept values at all, and all values kept before w
    assert set(relabeling_chain([0.9, 0.8, 0.95], 1, 0.5).values()) == {BoxPosition(1, 1)}
    chain = relabeling_chain([0.1, 0.2, 0.3], 3, 0.5)
    assert set(chain.values()) == {BoxPosition(1, 4)}


def test_new_box_position_examples():
    assert new_box_position(EMPTY, 0.3) == (1, 1)
    P = rsk([0.5, 0.2, 0.7, 0.1])[0]
    assert new_box_position(P, 0.9) == (1, P.shape()[0] + 1)
    _, route = P.insert(0.3)
    assert new_box_position(P, 0.3) == route[-1]
    with pytest.raises(DuplicateEntryError):
        new_box_position(P, 0.7)


def test_new_box_position_monotone_random_tableaux():
    rng = random.Random(5)
    for _ in range(50):
        P = rsk([rng.random() for _ in range(200)])[0]
        xs = sorted(rng.random() for _ in range(20))
        cells = [new_box_position(P, x) for x in xs]
        for a, b in zip(cells, cells[1:]):
            assert a.column <= b.column and a.row >= b.row


class _OnCurve(Trajectory):
    def scaled(self, j):
        return tuple(h(j / self.n))


def test_deviation_zero_on_curve():
    traj = _OnCurve(n=10, w=0.5, steps=list(range(10, 31)), positions=[None] * 21)
    stat = scaled_deviation(traj, [1.0, 1.5, 2.0, 3.0])
    assert stat.sup_dev == 0.0
    assert all(d == 0.0 for _, d in stat.pointwise)


def test_deviation_at_T1_uses_h1():
    traj = Trajectory(n=4, w=1.0, steps=[4], positions=[BoxPosition(1, 3)])
    stat = scaled_deviation(traj, [1.0])
    assert stat.sup_dev == pytest.approx(math.hypot(1.5 - 2.0, 0.5 - 0.0))
    assert stat.argmax_T == 1.0


def test_deviation_rejects_unrecorded_range():
    traj = track_trajectory(TrajectoryConfig(n=10, T_max=2.0, seed=0))
    with pytest.raises(ValueError):
        scaled_deviation(traj, [2.5])
    sparse = track_trajectory(TrajectoryConfig(n=10, T_max=2.0, seed=0, sample_stride=7))
    with pytest.raises(ValueError):
        scaled_deviation(sparse, [1.5])


def test_sup_is_max_of_pointwise():
    traj = track_trajectory(TrajectoryConfig(n=100, T_max=3.0, seed=8))
    stat = scaled_deviation(traj, [1 + k / 10 for k in range(21)])
    assert stat.sup_dev == max(d for _, d in stat.pointwise)
    assert all(d >= 0 for _, d in stat.pointwise)


def test_convergence_single_trial_reproducible():
    a = convergence_experiment([100], 1, master_seed=3)
    b = convergence_experiment([100], 1, master_seed=3)
    assert a == b and len(a) == 1
    with pytest.raises(ValueError):
        convergence_experiment([400, 100], 1)


def test_pointwise_column_is_subset_of_sup():
    rows = convergence_experiment([50], 20, master_seed=2)
    assert rows[0].median_pointwise <= rows[0].median_sup
    assert rows[0].exceed_pointwise <= rows[0].exceed_frac


def test_parallel_matches_sequential():
    grid = [1 + k / 10 for k in range(21)]
    seq = sup_deviations(60, 6, 0.5, 3.0, grid, 1)
    par = sup_deviations(60, 6, 0.5, 3.0, grid, 1, workers=2)
    assert seq == par


def test_first_column_probe_degenerate_and_reproducible():
    res = first_column_probe(10, 0.5, 0.01, 20, 1)
    assert res.steps == 10
    expected = 0
    from rskbox.random_model import child_seed

    for t in range(20):
        xs = SeededStream(child_seed(1, t)).draw(10, exclude=(0.5,)).tolist()
        expected += brute_position(xs, 10, 0.5, 10).column == 1
    assert res.fraction == expected / 20

    a = first_column_probe(30, 0.5, 1.0, 100, 7)
    assert 0.0 <= a.fraction <= 1.0
    assert a == first_column_probe(30, 0.5, 1.0, 100, 7)


def test_first_column_probe_monotonicity_logged(capsys):
    fracs = [first_column_probe(15, 0.5, T, 40, 3).fraction for T in (0.5, 1.0, 2.0)]
    # no claim is made about this quantity; report only
    print("first-column fractions for T in (0.5, 1, 2):", fracs)
    assert all(0 <= f <= 1 for f in fracs)


def test_trajectory_from_sequence_full_path_with_larger_values():
    xs = [0.9, 0.2, 0.95, 0.1, 0.7]
    traj = trajectory_from_sequence(xs, 2, 0.5, range(2, 6), filtered=False)
    for j, pos in zip(traj.steps, traj.positions):
        assert pos == brute_position(xs, 2, 0.5, j)


def test_performance_single_trajectory():
    import time

    t0 = time.perf_counter()
    track_trajectory(TrajectoryConfig(n=1600, w=0.5, T_max=3.0, seed=0))
    assert time.perf_counter() - t0 < 1.0
