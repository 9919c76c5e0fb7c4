from fractions import Fraction as F

import math

import pytest

from rskbox import asymptotics as asy
from rskbox.limit_curves import h, omega_star, u

KAPPA = 1.5 * math.pi


def test_f_aux_values():
    assert asy.f_aux(0.0) == 0.0
    assert asy.f_aux(2.0) == pytest.approx(KAPPA ** (1 / 3), rel=1e-15)
    assert asy.f_aux(2.0) == pytest.approx(1.6765391932, abs=1e-9)
    assert abs(asy.f_aux(0.1) - asy.F_SERIES(0.1)) <= 1e-9
    with pytest.raises(ValueError):
        asy.f_aux(2.1)


def test_f_aux_increasing():
    xs = [k / 500 for k in range(1001)]
    vals = [asy.f_aux(x) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_stored_coefficients_are_the_published_rationals():
    assert [(t.exponent, t.rational) for t in asy.f_series().terms] == [
        (1, 1), (3, F(-1, 40)), (5, F(-39, 22400))
    ]
    assert [(t.exponent, t.rational) for t in asy.f_inverse_series().terms] == [
        (1, 1), (3, F(1, 40)), (5, F(81, 22400))
    ]
    assert [t.rational for t in asy.OMEGA_SHIFT_SERIES.terms] == [F(4, 3), F(1, 30), F(3, 1120)]
    assert [t.rational for t in asy.FSC_INVERSE_SERIES.terms] == [-2, 1, F(1, 20), F(11, 1400)]
    assert [t.rational for t in asy.H1_SERIES.terms] == [1, F(1, 10), F(1, 56)]
    assert [t.rational for t in asy.H2_SERIES.terms] == [
        2, -1, 1, F(-1, 20), F(1, 10), F(-11, 1400), F(1, 56)
    ]


def test_lagrange_inverse_exact():
    derived = asy.derive_f_inverse_series()
    assert derived.same_as(asy.F_INVERSE_SERIES)
    f = [F(0)] * 7
    for t in asy.F_SERIES.terms:
        f[int(t.exponent)] = t.rational
    g = asy.lagrange_inverse(f, 7)
    assert asy.ps_compose(f, g, 7) == [0, 1, 0, 0, 0, 0, 0]


def test_float_composition_of_printed_series_is_identity():
    f = [0.0, 1.0, 0.0, -1 / 40, 0.0, -39 / 22400, 0.0]
    g = [0.0, 1.0, 0.0, 1 / 40, 0.0, 81 / 22400, 0.0]
    comp = asy.ps_compose(f, g, 7)
    assert comp[1] == 1.0
    assert abs(comp[3]) <= 1e-14 and abs(comp[5]) <= 1e-14


def test_lagrange_inverse_of_known_function():
    # inverse of y -> y / (1 - y) is y -> y / (1 + y)
    f = [F(0)] + [F(1)] * 6
    assert asy.lagrange_inverse(f, 7) == [0, 1, -1, 1, -1, 1, -1]


@pytest.mark.parametrize(
    "derive, table",
    [
        (asy.derive_fsc_inverse_series, asy.FSC_INVERSE_SERIES),
        (asy.derive_v_plus_u_series, asy.V_PLUS_U_SERIES),
        (asy.derive_v_minus_u_series, asy.V_MINUS_U_SERIES),
        (asy.derive_h1_series, asy.H1_SERIES),
        (asy.derive_h2_series, asy.H2_SERIES),
    ],
)
def test_tables_rebuilt_from_base_series(derive, table):
    assert derive().same_as(table)


def test_omega_shift_series_against_direct_evaluation():
    # residual after the t^7 term is O(t^9)
    errs = []
    for t in (0.4, 0.2, 0.1):
        direct = omega_star(t * t - 2) + t * t - 2
        errs.append(abs(direct - asy.OMEGA_SHIFT_SERIES(t)))
    for a, b in zip(errs, errs[1:]):
        assert 2.0**-9 / 2 <= b / a <= 2.0**-9 * 2


def test_series_invariants_enforced():
    with pytest.raises(ValueError):
        asy.SeriesExpansion((asy.Term(F(2), F(1)), asy.Term(F(1), F(1))), F(3), "x")
    with pytest.raises(ValueError):
        asy.SeriesExpansion((asy.Term(F(2), F(1)),), F(2), "x")


def test_fsc_inverse_series_examples():
    assert asy.fsc_inverse_series(0.0) == -2.0
    x = 0.01
    assert abs(asy.fsc_inverse_series(x) - u(x)) <= 5 * x ** (8 / 3)
    a, b = asy.fsc_inverse_series(0.1), u(0.1)
    assert f"{a:.3g}" == f"{b:.3g}"


@pytest.mark.parametrize(
    "exact, approx, points, order",
    [
        (u, asy.fsc_inverse_series, [0.04, 0.02, 0.01, 0.005], 8 / 3),
        (asy.v_plus_u, asy.v_plus_u_series, [0.1, 0.05, 0.025, 0.0125], 3),
        (asy.v_minus_u, asy.v_minus_u_series, [0.04, 0.02, 0.01, 0.005], 8 / 3),
        (lambda T: h(T).x, asy.h1_asym, [1 / 25, 1 / 50, 1 / 100, 1 / 200], 15 / 6),
        (lambda T: h(T).y, asy.h2_asym, [1 / 25, 1 / 50, 1 / 100, 1 / 200], 13 / 6),
    ],
)
def test_error_order_per_halving(exact, approx, points, order):
    if approx in (asy.h1_asym, asy.h2_asym):
        ratios = asy.error_ratios(exact, approx, [1 / p for p in points])
    else:
        ratios = asy.error_ratios(exact, approx, points)
    target = 2.0**-order
    assert len(ratios) >= 3
    for r in ratios:
        assert target / 2 <= r <= target * 2


def test_v_plus_u_cross_module():
    for x in (0.1, 0.05, 0.025):
        assert abs(asy.v_plus_u(x) - asy.v_plus_u_series(x)) <= 0.5 * x**3


def test_h_asym_limits():
    for T in (1e4, 1e6, 1e8):
        assert asy.h1_asym(T) * math.sqrt(T) == pytest.approx(1, abs=5 * T ** (-2 / 3))
        assert asy.h2_asym(T) / (2 * math.sqrt(T)) == pytest.approx(1, abs=2 * T ** (-2 / 3))


def test_h_asym_at_T_100():
    T = 100.0
    assert abs(asy.h1_asym(T) - h(T).x) <= 10 * T ** (-15 / 6)
    assert abs(asy.h2_asym(T) - h(T).y) <= 10 * T ** (-13 / 6)


def test_h1_at_ten_thousand():
    T = 1e4
    correction = 0.1 * KAPPA ** (2 / 3) * T ** (-7 / 6)
    assert correction == pytest.approx(0.2811 * 10 ** (-14 / 3), rel=1e-3)
    # the first correction is about 6e-4 of the leading 1/sqrt(T)
    assert asy.h1_asym(T) == pytest.approx(0.01, rel=1e-3)
    assert abs(asy.h1_asym(T) - 0.01 - correction) < 1e-8


def test_error_report():
    rows = asy.series_error_report([25, 50, 100, 200])
    assert len(rows) == 4
    for a, b in zip(rows, rows[1:]):
        assert 0.1 <= b.h1_abs_err / a.h1_abs_err <= 0.3
    assert all(r.h1_scaled_err < 1 and r.h2_scaled_err < 1 for r in rows)
    assert asy.series_error_report([]) == []
    with pytest.raises(ValueError):
        asy.series_error_report([1.0])
