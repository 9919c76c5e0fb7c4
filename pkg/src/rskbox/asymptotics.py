"""Fractional-power expansions of u, v + u, v - u and of H for large T.

Coefficients are kept exact: each term is ``rational * kappa**p * pi**q *
var**e`` with ``kappa = 3*pi/2`` and ``p``, ``e`` rational.  The printed
tables below are also rebuilt from the two Taylor series at the bottom of the
stack (``f`` and ``Omega(t**2 - 2) + t**2 - 2``) by exact power-series
arithmetic, and the test-suite checks that both routes agree term by term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .limit_curves import f_sc, h, omega_star, u

KAPPA = 1.5 * math.pi
F = Fraction


@dataclass(frozen=True)
class Term:
    exponent: Fraction
    rational: Fraction
    kappa_power: Fraction = F(0)
    pi_power: int = 0

    @property
    def coefficient(self) -> float:
        return float(self.rational) * KAPPA ** float(self.kappa_power) * math.pi**self.pi_power

    def normalized(self) -> tuple[Fraction, Fraction, Fraction]:
        """``(exponent, rational, kappa_power)`` with pi rewritten as ``(2/3) kappa``."""
        q = self.pi_power
        return (self.exponent, self.rational * F(2, 3) ** q, self.kappa_power + q)


@dataclass(frozen=True)
class SeriesExpansion:
    terms: tuple
    truncation_order: Fraction
    variable: str

    def __post_init__(self):
        exps = [t.exponent for t in self.terms]
        if any(a >= b for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        if exps and not self.truncation_order > exps[-1]:
            raise ValueError("truncation order must exceed every listed exponent")
        if self.variable not in ("x", "y", "t", "inv_T"):
            raise ValueError(f"unknown variable tag {self.variable!r}")

    def __call__(self, z: float) -> float:
        total = 0.0
        for t in self.terms:
            if t.exponent == 0:
                total += t.coefficient
            elif z == 0.0:
                if t.exponent < 0:
                    raise ZeroDivisionError("negative exponent at zero")
            else:
                total += t.coefficient * math.exp(float(t.exponent) * math.log(z))
        return total

    def pairs(self) -> list[tuple[Fraction, float]]:
        return [(t.exponent, t.coefficient) for t in self.terms]

    def normalized(self) -> dict:
        out: dict = {}
        for t in self.terms:
            e, r, p = t.normalized()
            if r:
                out[(e, p)] = out.get((e, p), F(0)) + r
        return {k: c for k, c in out.items() if c}

    def same_as(self, other: "SeriesExpansion") -> bool:
        return (
            self.truncation_order == other.truncation_order
            and self.variable == other.variable
            and self.normalized() == other.normalized()
        )


def _series(variable, trunc, *terms) -> SeriesExpansion:
    return SeriesExpansion(
        tuple(Term(F(e), F(r), F(k), pi) for e, r, k, pi in terms), F(trunc), variable
    )


# Published coefficient tables.  Term layout: (exponent, rational, kappa power, pi power).
F_SERIES = _series("x", 7, (1, 1, 0, 0), (3, F(-1, 40), 0, 0), (5, F(-39, 22400), 0, 0))
F_INVERSE_SERIES = _series("y", 7, (1, 1, 0, 0), (3, F(1, 40), 0, 0), (5, F(81, 22400), 0, 0))
OMEGA_SHIFT_SERIES = _series(
    "t", 9, (3, F(4, 3), 0, -1), (5, F(1, 30), 0, -1), (7, F(3, 1120), 0, -1)
)
FSC_INVERSE_SERIES = _series(
    "x", F(8, 3),
    (0, -2, 0, 0),
    (F(2, 3), 1, F(2, 3), 0),
    (F(4, 3), F(1, 20), F(4, 3), 0),
    (2, F(11, 1400), 2, 0),
)
V_PLUS_U_SERIES = _series(
    "x", 3,
    (1, 2, 0, 0),
    (F(5, 3), F(1, 5), F(2, 3), 0),
    (F(7, 3), F(1, 28), F(4, 3), 0),
)
V_MINUS_U_SERIES = _series(
    "x", F(8, 3),
    (0, 4, 0, 0),
    (F(2, 3), -2, F(2, 3), 0),
    (1, 2, 0, 0),
    (F(4, 3), F(-1, 10), F(4, 3), 0),
    (F(5, 3), F(1, 5), F(2, 3), 0),
    (2, F(-11, 700), 2, 0),
    (F(7, 3), F(1, 28), F(4, 3), 0),
)
H1_SERIES = _series(
    "inv_T", F(15, 6),
    (F(1, 2), 1, 0, 0),
    (F(7, 6), F(1, 10), F(2, 3), 0),
    (F(11, 6), F(1, 56), F(4, 3), 0),
)
H2_SERIES = _series(
    "inv_T", F(13, 6),
    (F(-1, 2), 2, 0, 0),
    (F(1, 6), -1, F(2, 3), 0),
    (F(1, 2), 1, 0, 0),
    (F(5, 6), F(-1, 20), F(4, 3), 0),
    (F(7, 6), F(1, 10), F(2, 3), 0),
    (F(3, 2), F(-11, 1400), 2, 0),
    (F(11, 6), F(1, 56), F(4, 3), 0),
)


def f_series() -> SeriesExpansion:
    return F_SERIES


def f_inverse_series() -> SeriesExpansion:
    """Printed inverse series, checked against a Lagrange inversion of ``f_series``."""
    derived = derive_f_inverse_series()
    if not derived.same_as(F_INVERSE_SERIES):
        raise ArithmeticError("compositional inverse of f does not match the stored table")
    return F_INVERSE_SERIES


# -- truncated power series on integer exponents; coefficient lists indexed by power --


def ps_mul(a: Sequence, b: Sequence, order: int) -> list:
    """Product truncated to powers < ``order``."""
    zero = a[0] * 0 if a else 0
    out = [zero] * order
    for i, ai in enumerate(a[:order]):
        if ai:
            for j, bj in enumerate(b[: order - i]):
                out[i + j] += ai * bj
    return out


def ps_pow(a: Sequence, k: int, order: int) -> list:
    out = [a[0] * 0 + 1] + [a[0] * 0] * (order - 1)
    for _ in range(k):
        out = ps_mul(out, a, order)
    return out


def ps_reciprocal(a: Sequence, order: int) -> list:
    if not a[0]:
        raise ZeroDivisionError("series has no constant term")
    b = [1 / a[0]]
    for n in range(1, order):
        s = sum(a[i] * b[n - i] for i in range(1, min(n, len(a) - 1) + 1))
        b.append(-s / a[0])
    return b


def ps_compose(outer: Sequence, inner: Sequence, order: int) -> list:
    """``outer(inner(y))`` truncated to powers < ``order``; needs ``inner[0] == 0``."""
    if inner[0]:
        raise ValueError("inner series must vanish at zero")
    zero = inner[1] * 0
    out = [zero] * order
    power = [zero + 1] + [zero] * (order - 1)
    for c in outer[:order]:
        if c:
            out = [o + c * p for o, p in zip(out, power)]
        power = ps_mul(power, inner, order)
    return out


def lagrange_inverse(f: Sequence, order: int) -> list:
    """Compositional inverse via ``[y^k] g = (1/k) [y^(k-1)] (y / f(y))^k``.

    ``f`` must have ``f[0] == 0`` and ``f[1] != 0``.
    """
    if f[0] or not f[1]:
        raise ValueError("need f(0) = 0 and f'(0) != 0")
    quotient = list(f[1:]) + [f[0] * 0] * (order - len(f) + 1)
    phi = ps_reciprocal(quotient[:order], order)
    g = [f[1] * 0]
    for k in range(1, order):
        g.append(ps_pow(phi, k, order)[k - 1] / k)
    return g


def _coeffs(series: SeriesExpansion, order: int) -> list:
    """Integer-exponent rational coefficients of a pure-rational series."""
    out = [F(0)] * order
    for t in series.terms:
        if t.exponent.denominator != 1 or t.kappa_power or t.pi_power:
            raise ValueError("series is not an integer-power rational series")
        if t.exponent < order:
            out[int(t.exponent)] = t.rational
    return out


def derive_f_inverse_series() -> SeriesExpansion:
    order = int(F_SERIES.truncation_order)
    g = lagrange_inverse(_coeffs(F_SERIES, order), order)
    terms = tuple(Term(F(k), c) for k, c in enumerate(g) if c)
    return SeriesExpansion(terms, F(order), "y")


def _in_x(ycoeffs: Iterable, trunc, kappa_shift: int = 0, rational_scale=F(1)) -> SeriesExpansion:
    # y = (kappa x)^(1/3), so y^k -> kappa^(k/3) x^(k/3)
    terms = tuple(
        Term(F(k, 3), c * rational_scale, F(k, 3) + kappa_shift)
        for k, c in enumerate(ycoeffs)
        if c
    )
    return SeriesExpansion(terms, F(trunc), "x")


def derive_fsc_inverse_series() -> SeriesExpansion:
    """``u(x) = f^{-1}((kappa x)^(1/3))^2 - 2`` expanded in ``x^(1/3)``."""
    order = 8
    t = _coeffs(F_INVERSE_SERIES, order)
    sq = ps_mul(t, t, order)
    sq[0] -= 2
    return _in_x(sq, F(order, 3))


def derive_v_plus_u_series() -> SeriesExpansion:
    """``Omega(t^2 - 2) + t^2 - 2`` at ``t = f^{-1}((kappa x)^(1/3))``."""
    order = int(OMEGA_SHIFT_SERIES.truncation_order)
    outer = [F(0)] * order
    for term in OMEGA_SHIFT_SERIES.terms:
        if term.pi_power != -1 or term.kappa_power:
            raise ValueError("expected coefficients of the form rational / pi")
        outer[int(term.exponent)] = term.rational
    t = _coeffs(F_INVERSE_SERIES, order)
    comp = ps_compose(outer, t, order)
    # 1/pi = (3/2) / kappa
    return _in_x(comp, F(order, 3), kappa_shift=-1, rational_scale=F(3, 2))


def _combine(a: SeriesExpansion, b: SeriesExpansion, b_scale, variable="x") -> SeriesExpansion:
    trunc = min(a.truncation_order, b.truncation_order)
    acc: dict = {}
    for series, scale in ((a, F(1)), (b, F(b_scale))):
        for t in series.terms:
            if t.exponent < trunc:
                e, r, p = t.normalized()
                acc[(e, p)] = acc.get((e, p), F(0)) + scale * r
    keys = sorted(k for k, c in acc.items() if c)
    if len({e for e, _ in keys}) != len(keys):
        raise ValueError("cannot merge terms with equal exponents and different kappa powers")
    return SeriesExpansion(tuple(Term(e, acc[(e, p)], p) for e, p in keys), trunc, variable)


def derive_v_minus_u_series() -> SeriesExpansion:
    return _combine(derive_v_plus_u_series(), derive_fsc_inverse_series(), -2)


def _to_inv_T(series: SeriesExpansion) -> SeriesExpansion:
    # sqrt(T)/2 * s(1/T) = (1/2) A^(-1/2) s(A) with A = 1/T
    half = F(1, 2)
    terms = tuple(
        Term(t.exponent - half, t.rational * half, t.kappa_power, t.pi_power) for t in series.terms
    )
    return SeriesExpansion(terms, series.truncation_order - half, "inv_T")


def derive_h1_series() -> SeriesExpansion:
    return _to_inv_T(derive_v_plus_u_series())


def derive_h2_series() -> SeriesExpansion:
    return _to_inv_T(derive_v_minus_u_series())


# -- numeric entry points --


def f_aux(x: float) -> float:
    """``cbrt(kappa * F_sc(x^2 - 2))`` on [0, 2]."""
    if not 0.0 <= x <= 2.0:
        raise ValueError(f"x must lie in [0, 2], got {x}")
    return (KAPPA * f_sc(max(-2.0, x * x - 2.0))) ** (1.0 / 3.0)


def fsc_inverse_series(x: float) -> float:
    return FSC_INVERSE_SERIES(x)


def v_plus_u_series(x: float) -> float:
    return V_PLUS_U_SERIES(x)


def v_minus_u_series(x: float) -> float:
    return V_MINUS_U_SERIES(x)


def h1_asym(T: float) -> float:
    return H1_SERIES(1.0 / T)


def h2_asym(T: float) -> float:
    return H2_SERIES(1.0 / T)


def v_plus_u(x: float) -> float:
    uu = u(x)
    return omega_star(uu) + uu


def v_minus_u(x: float) -> float:
    uu = u(x)
    return omega_star(uu) - uu


@dataclass(frozen=True)
class ErrorRow:
    T: float
    h1_numeric: float
    h1_series: float
    h1_abs_err: float
    h1_scaled_err: float
    h2_numeric: float
    h2_series: float
    h2_abs_err: float
    h2_scaled_err: float


MIN_T = 4.0


def series_error_report(grid: Iterable[float]) -> list[ErrorRow]:
    """Numeric H against its expansions; scaled errors are ``err * T**order``."""
    grid = list(grid)
    if any(T < MIN_T for T in grid):
        raise ValueError(f"every T must be at least {MIN_T}")
    o1 = float(H1_SERIES.truncation_order)
    o2 = float(H2_SERIES.truncation_order)
    rows = []
    for T in grid:
        p = h(T)
        s1, s2 = h1_asym(T), h2_asym(T)
        e1, e2 = abs(p.x - s1), abs(p.y - s2)
        rows.append(ErrorRow(T, p.x, s1, e1, e1 * T**o1, p.y, s2, e2, e2 * T**o2))
    return rows


def error_ratios(exact, approx, points: Sequence[float]) -> list[float]:
    """Successive ratios ``|err(p[i+1])| / |err(p[i])|`` along ``points``."""
    errs = [abs(exact(p) - approx(p)) for p in points]
    return [b / a for a, b in zip(errs, errs[1:])]
