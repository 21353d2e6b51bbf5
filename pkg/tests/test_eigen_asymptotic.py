"""Height recursion for the asymptotically free eigenfunctions."""

import pytest

from ruijsenaars.eigen_asymptotic import (check_joint_eigen,
                                          gamma_reflection_factor,
                                          reflection_check, rotation_check,
                                          specialize_to_symmetric,
                                          stationary_ruijsenaars)
from ruijsenaars.eigen_symmetric import elliptic_macdonald
from ruijsenaars.errors import GenericityViolation
from ruijsenaars.scalars import rat
from ruijsenaars.symfunc import elementary_symmetric
from ruijsenaars.zseries import delta_coords, iter_cone, rotate

Q = rat("3/10")
T = rat("1/2")
S2 = (rat(2, 7), rat(3, 5))
S3 = (rat(2, 7), rat(3, 5), rat(5, 9))


def test_normalization_and_zero_layer(ctx2):
    fr = stationary_ruijsenaars(ctx2, S2, 6)
    assert fr.coeff((0, 0)) == 1
    # eps_0 coefficients are the elementary symmetric polynomials of s
    for r in range(3):
        assert fr.eps[0][r] == elementary_symmetric(r, S2)


def test_delta_multiples_vanish(ctx2, ctx3):
    for ctx, s in ((ctx2, S2), (ctx3, S3)):
        fr = stationary_ruijsenaars(ctx, s, 2 * ctx.n)
        d = delta_coords(ctx.n)
        for l in (1, 2):
            assert fr.coeff(tuple(l * v for v in d)) == 0


def test_joint_eigen_exact(ctx2, ctx3):
    for ctx, s in ((ctx2, S2), (ctx3, S3)):
        fr = stationary_ruijsenaars(ctx, s, 6)
        rep = check_joint_eigen(ctx, fr)
        assert rep["ok"], rep["failures"]


def test_internal_constant_invariance(ctx2):
    fa = stationary_ruijsenaars(ctx2, S2, 6, c=rat(7, 11))
    fb = stationary_ruijsenaars(ctx2, S2, 6, c=rat(5, 13))
    assert fa.f == fb.f
    assert fa.eps == fb.eps


def test_rejects_resonant_spectral_point(ctx2):
    with pytest.raises(GenericityViolation):
        stationary_ruijsenaars(ctx2, (rat(1, 2), rat(1, 2)), 4)


def test_trigonometric_slice_matches_full_run(ctx2):
    full = stationary_ruijsenaars(ctx2, S2, 6)
    trig = stationary_ruijsenaars(ctx2, S2, 6, k0cap=0)
    expect = {b: c for b, c in full.f.items() if b[0] == 0}
    assert trig.f == expect


def test_specializes_to_elliptic_macdonald(ctx2):
    lam = (1, 0)
    em = elliptic_macdonald(ctx2, lam, 2)
    fr = stationary_ruijsenaars(ctx2, ctx2.t_rho_q_lambda(lam), 6)
    rep = specialize_to_symmetric(ctx2, em, fr)
    assert rep["ok"], rep
    assert rep["coeffs_checked"] > 10


def test_specialization_guards_spectral_point(ctx2):
    em = elliptic_macdonald(ctx2, (1, 0), 1)
    fr = stationary_ruijsenaars(ctx2, S2, 4)
    with pytest.raises(GenericityViolation):
        specialize_to_symmetric(ctx2, em, fr)


def test_rotation_symmetry(ctx2, ctx3):
    assert rotation_check(ctx2, S2, 6)["ok"]
    assert rotation_check(ctx3, S3, 5)["ok"]


def test_rotation_transport_direct(ctx2):
    f1 = stationary_ruijsenaars(ctx2, S2, 6)
    f2 = stationary_ruijsenaars(ctx2, S2[1:] + S2[:1], 6)
    for beta in iter_cone(2, 6):
        assert f2.coeff(beta) == f1.coeff(rotate(beta))


def test_reflection_law(ctx2):
    rep = reflection_check(ctx2, S2, 6)
    assert rep["ok"], rep
    assert rep["x_independent"]
    assert rep["gamma_0_is_1"]
    assert rep["gamma_product_is_1"]
    assert rep["p_orders_resolved"] == 3
    # the measured first-order constant is reported, not asserted to be 1
    assert len(rep["gamma"]) == 4


def test_gamma_reflection_factor_unit(ctx2):
    R = gamma_reflection_factor(ctx2, 6)
    assert R.coeff((0, 0)) == 1


def test_decay_profile(ctx2):
    fr = stationary_ruijsenaars(ctx2, S2, 6)
    prof = fr.decay_profile()
    assert [row["height"] for row in prof] == sorted(row["height"] for row in prof)
    assert all(row["max_ratio"] >= 0 for row in prof)


def test_json_output(ctx2):
    fr = stationary_ruijsenaars(ctx2, S2, 4)
    doc = fr.to_json()
    assert doc["n"] == 2 and doc["height_cutoff"] == 4
    assert doc["f"][0] == {"beta": [0, 0], "coeff": "1/1"}
    assert all(len(e["u_coeffs"]) == 3 for e in doc["eigenvalues"])
