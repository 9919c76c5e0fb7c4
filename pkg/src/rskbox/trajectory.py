"""Monte Carlo tracking of the box holding a marked value w.

The input is ``X_1, ..., X_n, w, X_{n+1}, ..., X_m`` with ``X_j`` uniform on
(0, 1).  Values above ``w`` never move the box of ``w``, so by default the
simulation only inserts the values below ``w``; ``filtered=False`` runs the
full sequence and exists to check that the two agree.

Scaled positions are ``(column, row) / sqrt(w n)``, the orientation of
:func:`rskbox.limit_curves.h`.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .limit_curves import g, h
from .random_model import (
    SeededStream,
    child_seed,
    filter_below,
    order_statistics,
    rank_permutation,
)
from .tableau import (
    BoxPosition,
    DuplicateEntryError,
    Tableau,
    bump_in_place,
    extend_permutation,
    inverse_permutation,
    new_cell,
    rsk,
)

NORM = "euclidean"


@dataclass(frozen=True)
class TrajectoryConfig:
    n: int
    w: float = 0.5
    T_max: float = 3.0
    seed: int = 0
    sample_stride: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0.0 < self.w <= 1.0:
            raise ValueError(f"w must lie in (0, 1], got {self.w}")
        if not self.T_max >= 1.0:
            raise ValueError(f"T_max must be at least 1, got {self.T_max}")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be at least 1")

    @property
    def m(self) -> int:
        return step_index(self.T_max, self.n)


@dataclass
class Trajectory:
    n: int
    w: float
    steps: list = field(default_factory=list)
    positions: list = field(default_factory=list)

    def position_at(self, j: int) -> BoxPosition:
        k = np.searchsorted(self.steps, j)
        if k == len(self.steps) or self.steps[k] != j:
            raise ValueError(f"step {j} was not recorded")
        return self.positions[k]

    def scaled(self, j: int) -> tuple[float, float]:
        p = self.position_at(j)
        s = math.sqrt(self.w * self.n)
        return (p.column / s, p.row / s)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class DeviationStat:
    sup_dev: float
    argmax_T: float
    pointwise: tuple


def step_index(T: float, n: int) -> int:
    """``floor(T n)``, robust to the representation error of grid values of T."""
    return math.floor(round(T * n, 9))


def grid_points(T_max: float, size: int = 21) -> list[float]:
    return np.linspace(1.0, T_max, size).tolist()


def _moved(pos: BoxPosition, route: list) -> BoxPosition:
    r = pos.row
    if len(route) > r and route[r - 1] == pos:
        return route[r]
    return pos


def trajectory_from_sequence(
    xs: Sequence[float], n: int, w: float, record: Iterable[int], filtered: bool = True
) -> Trajectory:
    """Positions of ``w`` at the requested steps ``j`` (``n <= j <= len(xs)``).

    Step ``j`` means ``w`` plus the first ``j`` values of ``xs`` have been inserted.
    """
    m = len(xs)
    wanted = sorted({j for j in record if n <= j <= m})
    rows: list[list] = []
    for x in xs[:n]:
        if not filtered or x < w:
            bump_in_place(rows, x)
    pos = bump_in_place(rows, w)[0]
    traj = Trajectory(n, w)
    k = 0
    if wanted and wanted[0] == n:
        traj.steps.append(n)
        traj.positions.append(pos)
        k = 1
    last = wanted[-1] if wanted else n
    for j in range(n + 1, last + 1):
        x = xs[j - 1]
        if not filtered or x < w:
            pos = _moved(pos, bump_in_place(rows, x))
        if j == wanted[k]:
            traj.steps.append(j)
            traj.positions.append(pos)
            k += 1
    return traj


def draw_sequence(cfg: TrajectoryConfig) -> list[float]:
    return SeededStream(cfg.seed).draw(cfg.m, exclude=(cfg.w,)).tolist()


def track_trajectory(
    cfg: TrajectoryConfig, extra_steps: Iterable[int] = (), filtered: bool = True
) -> Trajectory:
    """Record ``Pos_n(j)`` every ``sample_stride`` steps from ``j = n`` to ``m``.

    ``j = n`` is the state right after ``w`` was inserted (T = 1).  The final
    step and any ``extra_steps`` are always recorded.
    """
    m = cfg.m
    record = set(range(cfg.n, m + 1, cfg.sample_stride)) | {m} | set(extra_steps)
    return trajectory_from_sequence(draw_sequence(cfg), cfg.n, cfg.w, record, filtered)


def scaled_deviation(traj: Trajectory, grid: Sequence[float]) -> DeviationStat:
    """Euclidean distance between scaled recorded positions and H on ``grid``."""
    top = traj.steps[-1] if traj.steps else traj.n
    pointwise = []
    for T in grid:
        j = step_index(T, traj.n)
        if T < 1.0 or j > top:
            raise ValueError(f"T={T} is outside the recorded range [1, {top / traj.n}]")
        sx, sy = traj.scaled(j)
        hp = h(T)
        pointwise.append((T, math.hypot(sx - hp.x, sy - hp.y)))
    if not pointwise:
        return DeviationStat(0.0, float("nan"), ())
    T_best, sup = max(pointwise, key=lambda p: p[1])
    return DeviationStat(sup, T_best, tuple(pointwise))


def new_box_position(P, x) -> BoxPosition:
    """Cell created by inserting ``x`` into ``P`` (a :class:`Tableau` or list of rows)."""
    if isinstance(P, Tableau):
        if x in P.entries:
            raise DuplicateEntryError(f"{x!r} is already an entry")
        return new_cell(P.rows, x)
    return new_cell(P, x)


# -- Monte Carlo experiments --


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    trials: int
    median_sup: float
    p90_sup: float
    exceed_frac: float
    pointwise_T: float
    median_pointwise: float
    exceed_pointwise: float


def _sup_trial(args) -> tuple[float, float]:
    n, w, T_max, grid, seed, pointwise_T = args
    cfg = TrajectoryConfig(n=n, w=w, T_max=T_max, seed=seed, sample_stride=10**9)
    steps = [step_index(T, n) for T in grid] + [step_index(pointwise_T, n)]
    traj = track_trajectory(cfg, extra_steps=steps)
    stat = scaled_deviation(traj, grid)
    return stat.sup_dev, scaled_deviation(traj, [pointwise_T]).sup_dev


def sup_deviations(
    n: int, trials: int, w: float, T_max: float, grid: Sequence[float], master_seed: int,
    pointwise_T: float = 2.0, workers: int | None = None,
) -> list[tuple[float, float]]:
    """(sup deviation, deviation at ``pointwise_T``) per trial, ordered by trial index."""
    tasks = [
        (n, w, T_max, list(grid), child_seed(master_seed, n, t), pointwise_T)
        for t in range(trials)
    ]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sup_trial, tasks, chunksize=max(1, trials // (4 * workers))))
    return [_sup_trial(t) for t in tasks]


def convergence_experiment(
    n_list: Sequence[int],
    trials: int,
    w: float = 0.5,
    T_max: float = 3.0,
    grid_size: int = 21,
    master_seed: int = 0,
    eps: float = 0.5,
    pointwise_T: float = 2.0,
    workers: int | None = None,
) -> list[ConvergenceRow]:
    if not n_list or list(n_list) != sorted(n_list):
        raise ValueError("n_list must be nonempty and ascending")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 1.0 <= pointwise_T <= T_max:
        raise ValueError("pointwise_T must lie in [1, T_max]")
    grid = grid_points(T_max, grid_size)
    rows = []
    for n in n_list:
        res = np.array(sup_deviations(n, trials, w, T_max, grid, master_seed, pointwise_T, workers))
        sups, pts = res[:, 0], res[:, 1]
        rows.append(ConvergenceRow(
            n=int(n),
            trials=trials,
            median_sup=float(np.median(sups)),
            p90_sup=float(np.percentile(sups, 90)),
            exceed_frac=float(np.mean(sups > eps)),
            pointwise_T=float(pointwise_T),
            median_pointwise=float(np.median(pts)),
            exceed_pointwise=float(np.mean(pts > eps)),
        ))
    return rows


def new_box_deviations(
    n: int, x_values: Sequence[float], trials: int, master_seed: int
) -> dict[float, list[float]]:
    """Distances ``|new_box(P_n, x) / sqrt(n) - G(x)|`` per trial, for each ``x``."""
    targets = {x: g(x) for x in x_values}
    out: dict[float, list[float]] = {x: [] for x in x_values}
    s = math.sqrt(n)
    for t in range(trials):
        xs = SeededStream(child_seed(master_seed, n, t)).draw(n, exclude=tuple(x_values))
        rows: list[list] = []
        for x in xs.tolist():
            bump_in_place(rows, x)
        for x in x_values:
            cell = new_cell(rows, x)
            gx = targets[x]
            out[x].append(math.hypot(cell.column / s - gx.x, cell.row / s - gx.y))
    return out


@dataclass(frozen=True)
class ProbeResult:
    fraction: float
    steps: int
    trials: int


def first_column_probe(n: int, w: float, T: float, trials: int, seed: int) -> ProbeResult:
    """Fraction of trials with ``w`` in column 1 after ``floor(T n^2)`` values.

    Steps below ``n`` are clamped to ``n`` (the state right after ``w``).
    No expected value is known for this quantity.
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be positive")
    if not 0.0 < w <= 1.0:
        raise ValueError(f"w must lie in (0, 1], got {w}")
    m = max(n, math.floor(T * n * n))
    hits = 0
    for t in range(trials):
        xs = SeededStream(child_seed(seed, t)).draw(m, exclude=(w,)).tolist()
        traj = trajectory_from_sequence(xs, n, w, [m])
        hits += traj.positions[-1].column == 1
    return ProbeResult(hits / trials, m, trials)


# -- the relabeling chain used to reduce trajectories to new-box positions --


def relabeling_chain(xs: Sequence[float], n: int, w: float) -> dict[str, BoxPosition]:
    """Position of the marked box computed along each step of the reduction.

    Keys, in order: ``full`` (unfiltered input), ``filtered`` (values below w),
    ``permutation`` (the rank permutation extended by ``m'+1``), ``recording``
    (cell of ``m'+1`` in the recording tableau of the inverse),
    ``half_integer`` (last entry replaced by ``n'+1/2``), ``order_statistics``
    (relabelled by the order statistics), ``rescaled`` (divided by w) and
    ``new_box`` (new cell for ``A_n`` in the tableau of the rescaled values).
    Every value should be the same cell.
    """
    xs = list(xs)
    m = len(xs)
    out: dict[str, BoxPosition] = {}
    out["full"] = trajectory_from_sequence(xs, n, w, [m], filtered=False).positions[-1]

    rep = filter_below(xs, w, n)
    kept, n1, m1 = list(rep.kept), rep.n_prime, rep.m_prime
    P, _ = rsk(kept[:n1] + [w] + kept[n1:])
    out["filtered"] = P.locate(w)

    z = order_statistics(kept)
    pi = rank_permutation(kept)
    if [z(p) for p in pi] != kept:
        raise AssertionError("order statistics composed with ranks do not rebuild the sample")
    ext = extend_permutation(pi, n1)
    P_ext, _ = rsk(ext)
    out["permutation"] = P_ext.locate(m1 + 1)

    ext_inv = inverse_permutation(ext)
    _, Q_ext_inv = rsk(ext_inv)
    out["recording"] = Q_ext_inv.locate(m1 + 1)

    pi_inv = inverse_permutation(pi) if pi else ()
    half = n1 + 0.5
    _, Q_half = rsk(list(pi_inv) + [half])
    out["half_integer"] = Q_half.locate(m1 + 1)

    def zz(j):
        # z(0) := 0 and z(m'+1) := w bracket the half-integer midpoint
        return 0.0 if j == 0 else (w if j == m1 + 1 else z(j))

    a_val = (zz(n1) + zz(n1 + 1)) / 2.0
    relabelled = [z(p) for p in pi_inv] + [a_val]
    _, Q_z = rsk(relabelled)
    out["order_statistics"] = Q_z.locate(m1 + 1)

    ys = [v / w for v in relabelled[:-1]]
    a_n = a_val / w
    _, Q_y = rsk(ys + [a_n])
    out["rescaled"] = Q_y.locate(m1 + 1)

    P_y, _ = rsk(ys)
    out["new_box"] = new_box_position(P_y, a_n)
    return out
