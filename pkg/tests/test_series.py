"""Truncated p-series and affine-cone z-series, with the theta/gamma family."""

import pytest
from gmpy2 import mpq

from ruijsenaars.errors import NonUnitSeries
from ruijsenaars.laurent import LaurentPoly
from ruijsenaars.numerics import elliptic_gamma_numeric, theta_numeric
from ruijsenaars.pseries import (PSeriesLaurent, pochhammer_p_expansion,
                                 ps_inv, ps_mul, theta_p_expansion)
from ruijsenaars.scalars import rat
from ruijsenaars.zseries import (ZSeries, delta_coords, dstat, exp_zseries,
                                 gamma_zseries, height, interval_coords,
                                 iter_cone, log_pochhammer_pq, rotate,
                                 theta_zseries, x_exponents)

Q = rat("3/10")


# ---------------------------------------------------------------------------
# scalar p-series and Laurent-valued p-series


def test_ps_inv_roundtrip():
    a = [rat(1), rat(2, 3), rat(-5), rat(7, 11)]
    assert ps_mul(a, ps_inv(a, 3), 3) == [mpq(1), mpq(0), mpq(0), mpq(0)]


def test_theta_p_expansion_first_layers():
    w = LaurentPoly.variable(2, 0)  # theta(x_0; p)
    th = theta_p_expansion(2, 3, w)
    x = lambda k: LaurentPoly.variable(2, 0, k)
    one = LaurentPoly.constant(2, 1)
    assert th.coeffs[0] == one - x(1)
    # (1-w)(1-pw)(1-p/w) at order p: -(w + 1/w)(1-w) = -w - 1/w + w^2 + 1
    assert th.coeffs[1] == one - x(1) - x(-1) + x(2)


def test_pochhammer_p_expansion():
    w = LaurentPoly.variable(2, 1)
    pw = pochhammer_p_expansion(2, 2, w)  # (pw;p)_infty mod p^3
    assert pw.coeffs[0] == LaurentPoly.constant(2, 1)
    assert pw.coeffs[1] == -w
    assert pw.coeffs[2] == -w  # -p^2 w from the m=2 factor


def test_pserieslaurent_inverse():
    w = LaurentPoly.variable(2, 0)
    a = PSeriesLaurent.one(2, 3) + PSeriesLaurent(
        2, 3, [LaurentPoly.zero(2), w, LaurentPoly.zero(2), LaurentPoly.zero(2)])
    assert a * a.inverse() == PSeriesLaurent.one(2, 3)
    bad = PSeriesLaurent.constant(2, 3, w)
    with pytest.raises(NonUnitSeries):
        bad.inverse()


def test_pserieslaurent_mul_truncates():
    w = LaurentPoly.variable(2, 0)
    a = PSeriesLaurent(2, 1, [w, w])
    b = a * a
    assert b.K == 1
    assert b.coeffs[0] == w * w
    assert b.coeffs[1] == (w * w).scale(2)


# ---------------------------------------------------------------------------
# affine cone combinatorics


def test_cone_coords():
    assert height((2, 0, 1)) == 3
    assert rotate((1, 2, 3)) == (3, 1, 2)
    assert delta_coords(3) == (1, 1, 1)
    assert interval_coords(3, 0, 1) == (0, 1, 0)
    assert interval_coords(3, 0, 2) == (0, 1, 1)
    assert interval_coords(3, 1, 2) == (0, 0, 1)
    # x-language: z^beta = p^{k_0} x^{e}, e_v = k_v - k_{v+1 mod n}
    assert x_exponents((0, 1, 0)) == (-1, 1, 0)
    assert x_exponents((1, 1, 1)) == (0, 0, 0)
    assert sum(x_exponents((3, 1, 2))) == 0


def test_dstat():
    assert dstat((0, 0)) == 0
    assert dstat((0, 1)) == 1
    assert dstat((1, 1)) == 0  # delta multiples carry no ascent
    assert dstat((0, 2, 1)) == 2


def test_iter_cone_height_order_and_cap():
    cone = list(iter_cone(2, 3))
    assert cone[0] == (0, 0)
    hs = [sum(b) for b in cone]
    assert hs == sorted(hs)
    assert len(set(cone)) == len(cone)
    capped = list(iter_cone(2, 3, k0cap=0))
    assert all(b[0] == 0 for b in capped)
    assert capped == [b for b in cone if b[0] == 0]


# ---------------------------------------------------------------------------
# z-series arithmetic


def z1(n=2, H=6, c=1):
    return ZSeries.monomial(n, H, (0,) * (n - 1) + (1,), c)


def test_zseries_mul_inverse():
    a = ZSeries.one(2, 6) - z1(c=rat(1, 2)) + ZSeries.monomial(2, 6, (1, 1), rat(3))
    assert a * a.inverse() == ZSeries.one(2, 6)
    with pytest.raises(NonUnitSeries):
        (a - ZSeries.one(2, 6)).inverse()


def test_zseries_drops_inadmissible():
    # a monomial beyond the height cutoff is dropped on construction
    assert ZSeries.monomial(2, 2, (2, 1)).terms == {}
    assert ZSeries.monomial(2, 2, (0, 1), 0).terms == {}


def test_theta_zseries_matches_numeric():
    th = theta_zseries(2, 16, rat(1, 3), interval_coords(2, 0, 1))
    xs, p = (1.0, 0.2), 0.05
    assert abs(th.evaluate(xs, p) - theta_numeric(0.2 / 3, p)) < 1e-7


def test_gamma_zseries_matches_numeric():
    g = gamma_zseries(2, 16, rat(1, 3), interval_coords(2, 0, 1), Q)
    xs, p = (1.0, 0.2), 0.05
    assert abs(g.evaluate(xs, p) - elliptic_gamma_numeric(0.2 / 3, p, 0.3)) < 1e-8


def test_gamma_shift_identity_exact():
    # Gamma(q w) = theta(w;p) Gamma(w) as an identity of truncated z-series
    mono = interval_coords(2, 0, 1)
    c = rat(1, 3)
    lhs = gamma_zseries(2, 10, Q * c, mono, Q)
    rhs = theta_zseries(2, 10, c, mono) * gamma_zseries(2, 10, c, mono, Q)
    assert lhs == rhs


def test_gamma_reflection_identity_exact():
    # Gamma(w) Gamma(pq/w) = 1: pq/w lives on the complementary interval
    mono = interval_coords(2, 0, 1)
    comp = tuple(1 - m for m in mono)
    c = rat(1, 3)
    g = gamma_zseries(2, 16, c, mono, Q)
    g2 = gamma_zseries(2, 16, Q / c, comp, Q)
    assert g * g2 == ZSeries.one(2, 16)


def test_exp_log_pochhammer():
    mono = interval_coords(2, 0, 1)
    lg = log_pochhammer_pq(2, 10, rat(1, 5), mono, Q)
    f = exp_zseries(lg)
    # numeric check of (w;p,q)_infty = Gamma-free double product
    xs, p = (1.0, 0.25), 0.05
    w = 0.25 / 5
    direct = 1.0
    pi = 1.0
    for _ in range(40):
        qj = 1.0
        for _ in range(60):
            direct *= 1 - w * pi * qj
            qj *= 0.3
        pi *= p
    assert abs(f.evaluate(xs, p) - direct) < 1e-6


def test_zseries_json_roundtrip():
    a = ZSeries.one(2, 6) - z1(c=rat(2, 7))
    assert ZSeries.from_json(2, a.to_json()) == a
