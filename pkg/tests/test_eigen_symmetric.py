"""Triangular eigen-solver and the perturbative elliptic deformation."""

import pytest
from fractions import Fraction
from gmpy2 import mpq

from oracles import macdonald_oracle, pad
from ruijsenaars.eigen_symmetric import (MacdonaldBasis,
                                         check_eigen_equations, d_eigenvalue,
                                         elliptic_macdonald,
                                         leading_coeff_formula,
                                         macdonald_polynomial,
                                         spectral_eigenvalue)
from ruijsenaars.errors import EigenvalueCollision
from ruijsenaars.scalars import rat
from ruijsenaars.symfunc import MBasis

Q = rat("3/10")
T = rat("1/2")


def test_known_expansion(ctx2):
    # P_(2,0) = m_(2,0) + (1+q)(1-t)/(1-qt) m_(1,1)
    P = macdonald_polynomial(ctx2, (2, 0))
    assert P.coeff((2, 0)) == 1
    assert P.coeff((1, 1)) == (1 + Q) * (1 - T) / (1 - Q * T)
    assert P.coeff((1, 1)) == mpq(13, 17)
    # single-weight cases are pure monomials
    assert macdonald_polynomial(ctx2, (1, 1)) == MBasis.monomial((1, 1))
    assert macdonald_polynomial(ctx2, (1, 0)) == MBasis.monomial((1, 0))


def test_matches_independent_oracle(ctx2):
    qf, tf = Fraction(3, 10), Fraction(1, 2)
    for lam in [(2,), (2, 1), (3, 1)]:
        n = 2
        want = macdonald_oracle(lam, qf, tf, n)
        got = macdonald_polynomial(ctx2, pad(lam, n))
        assert {pad(nu, n): c for nu, c in want.items()} == \
            {w: Fraction(c.numerator, c.denominator)
             for w, c in got.coeffs.items()}


def test_eigenvalue_property(ctx2, ctx3):
    for ctx, lam in ((ctx2, (2, 0)), (ctx2, (3, 1)), (ctx3, (2, 1, 0))):
        P = macdonald_polynomial(ctx, lam)
        for r in range(1, ctx.n + 1):
            assert ctx.macdonald_apply(r, P) == \
                P.scale(spectral_eigenvalue(ctx, lam, r))


def test_negative_weights_via_global_shift(ctx2):
    # P_{mu + (k,..,k)} = (x_0...x_{n-1})^k P_mu
    base = macdonald_polynomial(ctx2, (2, 0))
    shifted = macdonald_polynomial(ctx2, (1, -1))
    assert shifted == base.shift_all(-1)


def test_collision_detection_and_retry(ctx2):
    # c = 0 collapses every d_mu(c) to 1
    with pytest.raises(EigenvalueCollision):
        MacdonaldBasis(ctx2, (2, 0), rat(0))
    # the public entry point retries over its candidate list
    assert macdonald_polynomial(ctx2, (2, 0)).coeff((1, 1)) == mpq(13, 17)


def test_d_eigenvalues_distinct_at_generic_c(ctx2):
    c = rat(7, 11)
    vals = [d_eigenvalue(ctx2, w, c) for w in ((2, 0), (1, 1))]
    assert vals[0] != vals[1]


def test_basis_expand_roundtrip(ctx2):
    basis = MacdonaldBasis(ctx2, (3, 0), rat(7, 11))
    f = basis.P[(3, 0)].scale(rat(2)) + basis.P[(2, 1)].scale(rat(-1, 3))
    assert basis.expand(f) == {(3, 0): mpq(2), (2, 1): mpq(-1, 3)}


# ---------------------------------------------------------------------------
# elliptic deformation


def test_elliptic_gauge_and_p0_layer(ctx2):
    em = elliptic_macdonald(ctx2, (1, 0), 2)
    assert em.layers[0] == macdonald_polynomial(ctx2, (1, 0))
    # gauge: no m_lam admixture beyond p^0
    for k in (1, 2):
        assert em.layers[k].coeff((1, 0)) == 0
    assert em.layers[1].coeff((2, -1)) == em.leading_coeff(1)
    assert not em.layers[1].is_zero()


def test_elliptic_eigen_equations_small(ctx2):
    em = elliptic_macdonald(ctx2, (2, 0), 2)
    rep = check_eigen_equations(ctx2, em)
    assert rep == {"ok": True, "failures": []}


def test_leading_coeff_closed_form(ctx2, ctx3):
    for ctx, lam in ((ctx2, (1, 0)), (ctx2, (1, 1)), (ctx3, (2, 0, 0))):
        em = elliptic_macdonald(ctx, lam, 2)
        for k in (1, 2):
            assert em.leading_coeff(k) == leading_coeff_formula(ctx, lam, k)


def test_top_order_eigenvalue_series(ctx2, ctx3):
    # eps^{(n)}(p) = t^{binom(n,2)} q^{|lam|}, with no p-corrections
    for ctx, lam in ((ctx2, (2, 0)), (ctx3, (1, 1, 0))):
        em = elliptic_macdonald(ctx, lam, 2)
        top = em.eps[ctx.n]
        b = ctx.n * (ctx.n - 1) // 2
        assert top[0] == ctx.t ** b * ctx.q ** sum(lam)
        assert all(v == 0 for v in top[1:])


def test_eigenvalue_series_p0_matches_trigonometric(ctx2):
    em = elliptic_macdonald(ctx2, (1, 1), 2)
    for r in (1, 2):
        assert em.eps[r][0] == spectral_eigenvalue(ctx2, (1, 1), r)


def test_global_shift_rule_elliptic(ctx2):
    # P_{lam+(1,1)}(x;p) = x_0 x_1 P_lam(x;p) and eps^{(r)} scales by q^r
    em0 = elliptic_macdonald(ctx2, (1, 0), 2)
    em1 = elliptic_macdonald(ctx2, (2, 1), 2)
    for k in range(3):
        assert em1.layers[k] == em0.layers[k].shift_all(1)
    for r in (1, 2):
        assert em1.eps[r] == [Q ** r * v for v in em0.eps[r]]


def test_c_independence(ctx2):
    em_a = elliptic_macdonald(ctx2, (1, 0), 2, c=rat(7, 11))
    em_b = elliptic_macdonald(ctx2, (1, 0), 2, c=rat(5, 13))
    assert em_a.layers == em_b.layers
    assert em_a.eps == em_b.eps


def test_json_output(ctx2):
    em = elliptic_macdonald(ctx2, (1, 0), 1)
    doc = em.to_json()
    assert doc["lambda"] == [1, 0]
    assert doc["p_order"] == 1
    assert len(doc["layers"]) == 2
    assert set(doc["eigenvalues"]) == {"1", "2"}
