"""Command-line entry point: ``rskbox <subcommand> [flags]``.

With ``--out PATH`` the CSV goes to PATH and its manifest to
``PATH.manifest.json``; ``rskbox replay MANIFEST --out NEW`` reruns it.
Without ``--out`` the CSV is printed to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import asymptotics as asy
from . import output
from .limit_curves import g, h, u, v
from .tableau import rsk
from .trajectory import (
    NORM,
    TrajectoryConfig,
    convergence_experiment,
    first_column_probe,
    grid_points,
    scaled_deviation,
    track_trajectory,
)

SEED_ENV = "RSKBOX_SEED"


def _w(text: str) -> float:
    val = float(text)
    if not 0.0 < val <= 1.0:
        raise argparse.ArgumentTypeError(f"w must lie in (0, 1], got {text}")
    return val


def _t_at_least_one(text: str) -> float:
    val = float(text)
    if not val >= 1.0:
        raise argparse.ArgumentTypeError(f"T must be at least 1, got {text}")
    return val


def _positive_int(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return val


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(x < 1 for x in vals):
        raise argparse.ArgumentTypeError("expected a nonempty list of positive integers")
    return vals


def _float_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _number_list(text: str) -> list:
    vals = _float_list(text)
    if all(x.is_integer() for x in vals) and "." not in text:
        return [int(x) for x in vals]
    return vals


def _default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rskbox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rsk", help="RSK tableaux of a sequence")
    p.add_argument("--seq", type=_number_list, required=True, help="comma-separated distinct values")
    p.add_argument("--json", action="store_true", help="print JSON tableaux")
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    p = sub.add_parser("curve", help="sample G on [xmin, xmax] or H on [tmin, tmax]")
    p.add_argument("--what", choices=["G", "H"], default="G")
    p.add_argument("--xmin", type=float, default=0.0)
    p.add_argument("--xmax", type=float, default=1.0)
    p.add_argument("--tmin", type=_t_at_least_one, default=1.0)
    p.add_argument("--tmax", type=_t_at_least_one, default=3.0)
    p.add_argument("--points", type=_positive_int, default=101)
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    p = sub.add_parser("trajectory", help="track the box of w for one seeded input")
    p.add_argument("--n", type=_positive_int, required=True, help="values inserted before w")
    p.add_argument("--w", type=_w, default=0.5, help="tracked value in (0, 1]")
    p.add_argument("--tmax", type=_t_at_least_one, default=3.0)
    p.add_argument("--seed", type=int, default=None, help="master seed (default $RSKBOX_SEED, else 0)")
    p.add_argument("--stride", type=_positive_int, default=1, help="record every k-th step")
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    p = sub.add_parser("converge", help="sup-deviation statistics over many trials")
    p.add_argument("--nlist", type=_int_list, default=[100, 400, 1600], help="increasing n values")
    p.add_argument("--trials", type=_positive_int, default=50)
    p.add_argument("--w", type=_w, default=0.5)
    p.add_argument("--tmax", type=_t_at_least_one, default=3.0)
    p.add_argument("--eps", type=float, default=0.5, help="exceedance threshold")
    p.add_argument("--grid-size", type=_positive_int, default=21, help="T grid points on [1, tmax]")
    p.add_argument("--pointwise-t", type=_t_at_least_one, default=2.0)
    p.add_argument("--seed", type=int, default=None, help="master seed (default $RSKBOX_SEED, else 0)")
    p.add_argument("--workers", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    p = sub.add_parser("asympt", help="error report of the large-T expansions of H")
    p.add_argument("--tlist", type=_float_list, default=[25.0, 50.0, 100.0, 200.0, 400.0])
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    sub.add_parser("verify", help="run the fast self-checks")

    p = sub.add_parser("probe-column", help="fraction of runs with w in column 1 after T n^2 steps")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--w", type=_w, default=0.5)
    p.add_argument("--T", type=float, default=1.0, help="run for max(n, floor(T n^2)) steps")
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=None, help="master seed (default $RSKBOX_SEED, else 0)")
    p.add_argument("--out", help="write here (plus a manifest) instead of stdout")

    p = sub.add_parser("replay", help="rerun the command recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", required=True)
    return parser


def _canonical_argv(args: argparse.Namespace) -> list[str]:
    """Explicit argv reproducing ``args`` (seed resolved, --out dropped)."""
    argv = [args.command]
    for key, val in sorted(vars(args).items()):
        if key in ("command", "out", "json") or val is None:
            continue
        flag = "--" + key.replace("_", "-")
        if isinstance(val, list):
            val = ",".join(output.fmt(x) for x in val)
        argv += [flag, output.fmt(val)]
    return argv


def _params(args: argparse.Namespace) -> dict:
    return {k: val for k, val in vars(args).items() if k not in ("command", "out")}


def _emit(args, content: str, **extra) -> None:
    if args.out:
        manifest = output.build_manifest(args.command, _params(args), _canonical_argv(args), **extra)
        output.write_with_manifest(args.out, content, manifest)
    else:
        sys.stdout.write(content)


def cmd_rsk(args) -> None:
    P, Q = rsk(args.seq)
    if args.out:
        doc = json.dumps({"P": {"rows": [list(r) for r in P.rows]},
                          "Q": {"rows": [list(r) for r in Q.rows]}}) + "\n"
        _emit(args, doc)
    elif args.json:
        print(json.dumps({"P": {"rows": [list(r) for r in P.rows]},
                          "Q": {"rows": [list(r) for r in Q.rows]}}))
    else:
        print(f"P={P}")
        print(f"Q={Q}")


def cmd_curve(args) -> None:
    if args.what == "G":
        if not 0.0 <= args.xmin <= args.xmax <= 1.0:
            raise ValueError("need 0 <= xmin <= xmax <= 1")
        xs = np.linspace(args.xmin, args.xmax, args.points).tolist()
        rows = []
        for x in xs:
            p = g(x)
            rows.append((x, u(x), v(x), p.x, p.y))
        content = output.render_csv(["x", "u", "v", "Gx", "Gy"], rows)
    else:
        if args.tmin > args.tmax:
            raise ValueError("need tmin <= tmax")
        ts = np.linspace(args.tmin, args.tmax, args.points).tolist()
        content = output.render_csv(["T", "Hx", "Hy"], ((T, *h(T)) for T in ts))
    _emit(args, content)


def cmd_trajectory(args) -> None:
    cfg = TrajectoryConfig(n=args.n, w=args.w, T_max=args.tmax, seed=args.seed,
                           sample_stride=args.stride)
    traj = track_trajectory(cfg)
    rows = []
    for j, pos in zip(traj.steps, traj.positions):
        T = j / cfg.n
        sx, sy = traj.scaled(j)
        hp = h(T)
        dev = scaled_deviation(traj, [T]).sup_dev
        rows.append((j, T, pos.row, pos.column, sx, sy, hp.x, hp.y, dev))
    header = ["j", "T", "row", "col", "scaled_x", "scaled_y", "Hx", "Hy", "dev"]
    _emit(args, output.render_csv(header, rows), norm=NORM)


def cmd_converge(args) -> None:
    rows = convergence_experiment(
        args.nlist, args.trials, w=args.w, T_max=args.tmax, grid_size=args.grid_size,
        master_seed=args.seed, eps=args.eps, pointwise_T=args.pointwise_t, workers=args.workers,
    )
    _emit(args, output.records_csv(rows), norm=NORM, grid=grid_points(args.tmax, args.grid_size))


def cmd_asympt(args) -> None:
    _emit(args, output.records_csv(asy.series_error_report(args.tlist)))


def cmd_verify(args) -> int:
    from .verify import run_all

    failed = 0
    for name, ok, detail in run_all():
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed += not ok
    return 1 if failed else 0


def cmd_probe_column(args) -> None:
    res = first_column_probe(args.n, args.w, args.T, args.trials, args.seed)
    content = output.render_csv(
        ["n", "w", "T", "steps", "trials", "fraction"],
        [(args.n, args.w, args.T, res.steps, res.trials, res.fraction)],
    )
    _emit(args, content)


def cmd_replay(args) -> int:
    manifest = output.load_manifest(args.manifest)
    return main(list(manifest["argv"]) + ["--out", args.out])


COMMANDS = {
    "rsk": cmd_rsk,
    "curve": cmd_curve,
    "trajectory": cmd_trajectory,
    "converge": cmd_converge,
    "asympt": cmd_asympt,
    "verify": cmd_verify,
    "probe-column": cmd_probe_column,
    "replay": cmd_replay,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", "absent") is None:
        args.seed = _default_seed()
    try:
        status = COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, LookupError, OSError) as exc:
        print(f"rskbox {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
