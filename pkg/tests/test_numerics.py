"""Floating-point layer: special functions, quadrature, and the transforms."""

import math

import numpy as np
import pytest

from ruijsenaars.errors import ConfigError, PoleProximity
from ruijsenaars.numerics import (b_lambda_trig, elliptic_gamma_numeric,
                                  eval_laurent_grid, eval_layers_p,
                                  gamma_p_layers, groundstate_pq_experiment,
                                  orthogonality_check, qpoch_inf_numeric,
                                  theta_numeric, theta_p_layers, torus_grid,
                                  trig_transform_check, weight_sym_numeric,
                                  weight_sym_p_layers)
from ruijsenaars.laurent import LaurentPoly
from ruijsenaars.scalars import rat

Q = rat("3/10")
T = rat("1/2")
P = 0.05


def random_annulus_points(rng, k, lo=0.5, hi=1.5):
    return [complex((lo + (hi - lo) * rng.random())
                    * np.exp(2j * math.pi * rng.random()))
            for _ in range(k)]


def test_qpoch_basic():
    # (a;q) with a = q telescopes against Euler's product at small q
    q = 0.3
    v = qpoch_inf_numeric(0.0, q)
    assert abs(v - 1.0) < 1e-15
    v = qpoch_inf_numeric(q, q)
    direct = np.prod([1 - q ** m for m in range(1, 60)])
    assert abs(v - direct) < 1e-14


def test_theta_inversion():
    # theta(z;p) = theta(p/z;p) and theta(1;p) = 0
    rng = np.random.default_rng(3)
    for z in random_annulus_points(rng, 10):
        assert abs(theta_numeric(z, P) - theta_numeric(P / z, P)) < 1e-12
    assert abs(theta_numeric(1.0 + 0j, P)) < 1e-14


def test_gamma_functional_equations():
    rng = np.random.default_rng(5)
    p, q = 0.11, 0.23
    for z in random_annulus_points(rng, 20):
        g = elliptic_gamma_numeric(z, p, q)
        assert abs(elliptic_gamma_numeric(q * z, p, q)
                   - theta_numeric(z, p) * g) < 1e-11 * abs(g)
        assert abs(elliptic_gamma_numeric(p * q / z, p, q) * g - 1) < 1e-11


def test_torus_grid_quadrature_exact_for_monomials():
    xs = torus_grid(2, 8)
    f = LaurentPoly.monomial(2, (3, -2), 1)
    assert abs(np.mean(eval_laurent_grid(f, xs))) < 1e-13
    one = LaurentPoly.constant(2, 1)
    assert abs(np.mean(eval_laurent_grid(one, xs)) - 1) < 1e-13


def test_gamma_p_layers_matches_direct():
    rng = np.random.default_rng(9)
    w = np.array(random_annulus_points(rng, 8))
    K = 6
    layers = gamma_p_layers(w, K, 0.3)
    got = eval_layers_p(layers, P)
    want = elliptic_gamma_numeric(w, P, 0.3)
    # truncation tail ~ (p/|z|)^{K+1}, so allow for |z| down to 0.5
    assert np.max(np.abs(got - want) / np.abs(want)) < 1e-6


def test_theta_p_layers_matches_direct():
    rng = np.random.default_rng(13)
    z = np.array(random_annulus_points(rng, 8))
    got = eval_layers_p(theta_p_layers(z, 6), P)
    want = theta_numeric(z, P)
    assert np.max(np.abs(got - want)) < 1e-6


def test_weight_layers_match_full_weight():
    xs = torus_grid(2, 6)
    layers = weight_sym_p_layers(xs, 6, 0.3, 0.5)
    got = eval_layers_p(layers, P)
    want = weight_sym_numeric(xs, P, 0.3, 0.5)
    assert np.max(np.abs(got - want)) < 1e-7 * np.max(np.abs(want))


def test_weight_guards_unit_t():
    xs = torus_grid(2, 4)
    with pytest.raises(PoleProximity):
        weight_sym_numeric(xs, P, 0.3, 1.0 + 1e-12)
    with pytest.raises(PoleProximity):
        weight_sym_p_layers(xs, 2, 0.3, -1.0)


def test_orthogonality_quick(ctx2):
    rep = orthogonality_check(ctx2, P, [(0, 0), (1, 0)], K=2, N=32)
    assert rep["max_rel_offdiag"] < 1e-12
    for pair in rep["pairs"]:
        assert pair["rel_offdiag_untruncated"] < 1e-3
    for lam, val in rep["diagonal"].items():
        assert abs(val) > 0


def test_b_lambda_values(ctx2):
    assert b_lambda_trig(ctx2, (0, 0)) == 1
    assert b_lambda_trig(ctx2, (1, 0)) == (1 - T) / (1 - Q)
    expect11 = (1 - T ** 2) * (1 - T) / ((1 - Q * T) * (1 - Q))
    assert b_lambda_trig(ctx2, (1, 1)) == expect11


def test_transform_quick(ctx2):
    rep = trig_transform_check(ctx2, (1, 0), N=32, H=25)
    assert rep["max_rel_err"] < 1e-5
    assert rep["r_independence_dev"] < 1e-6


def test_transform_lambda_11_cross_checks_b(ctx2):
    # independent numeric confirmation of the closed-form b_(1,1)
    rep = trig_transform_check(ctx2, (1, 1), N=48, H=30)
    assert rep["max_rel_err"] < 1e-6


def test_transform_rejects_bad_sigma(ctx2):
    with pytest.raises(ConfigError):
        trig_transform_check(ctx2, (1, 0), sigma=1.5)


def test_groundstate_experiment_runs():
    rep = groundstate_pq_experiment(rat(3, 10), rat(1, 4), rat(1, 2),
                                    n=2, K=4, n_points=2)
    assert rep["max_rel_dev"] >= 0
    assert len(rep["points"]) == 2
    assert all(np.isfinite(pt["rel_dev"]) for pt in rep["points"])
