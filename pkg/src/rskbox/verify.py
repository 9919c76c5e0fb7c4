"""Fast self-checks behind the ``verify`` subcommand."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np

from . import asymptotics as asy
from .limit_curves import f_sc, g, h, prec, u
from .tableau import inverse_permutation, rsk
from .trajectory import relabeling_chain


def check_curves() -> tuple[bool, str]:
    grid = np.linspace(0.0, 1.0, 1000).tolist()
    resid = max(abs(f_sc(u(x)) - x) for x in grid)
    pts = [g(x) for x in grid]
    mono = all(prec(a, b) for a, b in zip(pts, pts[1:]))
    ends = (
        math.dist(g(0.0), (0.0, 2.0)) <= 1e-9
        and math.dist(g(1.0), (2.0, 0.0)) <= 1e-9
        and math.dist(g(0.5), (2 / math.pi, 2 / math.pi)) <= 1e-9
    )
    return resid <= 1e-12 and mono and ends, f"max residual {resid:.2e}"


def check_series() -> tuple[bool, str]:
    pairs = [
        (asy.derive_f_inverse_series(), asy.F_INVERSE_SERIES),
        (asy.derive_fsc_inverse_series(), asy.FSC_INVERSE_SERIES),
        (asy.derive_v_plus_u_series(), asy.V_PLUS_U_SERIES),
        (asy.derive_v_minus_u_series(), asy.V_MINUS_U_SERIES),
        (asy.derive_h1_series(), asy.H1_SERIES),
        (asy.derive_h2_series(), asy.H2_SERIES),
    ]
    ok = all(a.same_as(b) for a, b in pairs)
    return ok, f"{sum(a.same_as(b) for a, b in pairs)}/{len(pairs)} tables rebuilt exactly"


def check_asymptote() -> tuple[bool, str]:
    T = 1e4
    p = h(T)
    a, b = p.x * math.sqrt(T) - 1, p.y / (2 * math.sqrt(T)) - 1
    return abs(a) <= 1e-2 and abs(b) <= 1e-2, f"relative gaps {a:.2e}, {b:.2e}"


def check_rsk(max_n: int = 5) -> tuple[bool, str]:
    count = 0
    for n in range(max_n + 1):
        for p in itertools.permutations(range(1, n + 1)):
            P, Q = rsk(p)
            P2, Q2 = rsk(inverse_permutation(p))
            if P.shape() != Q.shape() or P != Q2 or Q != P2:
                return False, f"failed on {p}"
            count += 1
    return True, f"{count} permutations"


def check_relabeling(configs: int = 10, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(configs):
        n = rng.randint(1, 30)
        w = rng.uniform(0.05, 1.0)
        xs = [rng.random() for _ in range(3 * n)]
        if len(set(relabeling_chain(xs, n, w).values())) != 1:
            return False, f"chain broke at n={n}, w={w}"
    return True, f"{configs} configs"


CHECKS = {
    "curves": check_curves,
    "series": check_series,
    "asymptote": check_asymptote,
    "rsk": check_rsk,
    "relabeling": check_relabeling,
}


def run_all() -> list[tuple[str, bool, str]]:
    return [(name, *fn()) for name, fn in CHECKS.items()]
