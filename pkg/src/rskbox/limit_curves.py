"""Semicircle CDF, the Logan-Shepp-Vershik-Kerov curve and the limit curves G, H.

Points returned by :func:`g` and :func:`h` are ``(column, row)`` scaled
coordinates: ``g(1) == (2, 0)`` is the end of the first row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class CurvePoint(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class InversionConfig:
    abs_tolerance: float = 1e-12
    max_iterations: int = 200

    def __post_init__(self):
        if not self.abs_tolerance > 0:
            raise ValueError("abs_tolerance must be positive")


DEFAULT_INVERSION = InversionConfig()


class ConvergenceError(RuntimeError):
    pass


def _check_y(y: float) -> None:
    if not -2.0 <= y <= 2.0:
        raise ValueError(f"argument must lie in [-2, 2], got {y}")


def f_sc(y: float) -> float:
    """Wigner semicircle CDF on [-2, 2]."""
    _check_y(y)
    return 0.5 + (y * math.sqrt(4.0 - y * y) / 4.0 + math.asin(y / 2.0)) / math.pi


def semicircle_density(y: float) -> float:
    _check_y(y)
    return math.sqrt(4.0 - y * y) / (2.0 * math.pi)


def omega_star(y: float) -> float:
    _check_y(y)
    return 2.0 / math.pi * (math.sqrt(4.0 - y * y) + y * math.asin(y / 2.0))


def u(x: float, cfg: InversionConfig = DEFAULT_INVERSION) -> float:
    """Inverse of :func:`f_sc` by Newton steps safeguarded with bisection."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return -2.0
    if x == 1.0:
        return 2.0
    lo, hi = -2.0, 2.0
    y = 0.0
    # run until the step stalls; abs_tolerance is only checked on exit
    for _ in range(cfg.max_iterations):
        err = f_sc(y) - x
        if err == 0.0:
            return y
        if err > 0:
            hi = y
        else:
            lo = y
        d = semicircle_density(y)
        step = y - err / d if d > 0 else lo - 1.0
        new = step if lo < step < hi else 0.5 * (lo + hi)
        if abs(new - y) <= 2 * math.ulp(y) or hi - lo <= 4 * math.ulp(1.0):
            y = new if abs(f_sc(new) - x) < abs(err) else y
            break
        y = new
    err = f_sc(y) - x
    if abs(err) <= cfg.abs_tolerance:
        return y
    raise ConvergenceError(
        f"u({x!r}) did not converge: residual {err:.3e} after {cfg.max_iterations} "
        f"iterations, bracket [{lo!r}, {hi!r}]"
    )


def v(x: float, cfg: InversionConfig = DEFAULT_INVERSION) -> float:
    return omega_star(u(x, cfg))


def g(x: float, cfg: InversionConfig = DEFAULT_INVERSION) -> CurvePoint:
    """Limit of the scaled new-box position when inserting ``x``."""
    uu = u(x, cfg)
    vv = omega_star(uu)
    return CurvePoint((vv + uu) / 2.0, (vv - uu) / 2.0)


def h(T: float, cfg: InversionConfig = DEFAULT_INVERSION) -> CurvePoint:
    """Limit trajectory of the marked box, ``sqrt(T) * g(1/T)``."""
    if not T >= 1.0:
        raise ValueError(f"T must be at least 1, got {T}")
    p = g(1.0 / T, cfg)
    s = math.sqrt(T)
    return CurvePoint(s * p.x, s * p.y)


def prec(p, q) -> bool:
    """``p[0] <= q[0] and p[1] >= q[1]``."""
    return p[0] <= q[0] and p[1] >= q[1]
