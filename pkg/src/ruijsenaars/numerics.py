"""Floating-point verification layer: torus quadrature and integral transforms.

Everything here consumes exactly-solved series and evaluates them in complex
double precision; numpy is used for grid vectorization only.  Infinite
q/p-products are truncated geometrically to machine precision.
"""

from __future__ import annotations

import math
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import ConfigError, PoleProximity
from .operators import OperatorContext
from .scalars import to_complex

# ---------------------------------------------------------------------------
# basic special functions (scalar or numpy array arguments)


def _terms_needed(base: float, tol: float = 1e-17) -> int:
    if not 0 < base < 1:
        raise ConfigError("expansion base must be in (0,1), got %s" % base)
    return max(4, int(math.log(tol) / math.log(base)) + 2)


def qpoch_inf_numeric(a, q: complex, M: int = None):
    """(a;q)_infty = prod_{m>=0} (1 - a q^m), truncated at m < M."""
    if M is None:
        M = _terms_needed(abs(q))
    out = 1.0 + 0j if np.isscalar(a) else np.ones_like(a, dtype=complex)
    qm = 1.0 + 0j
    for _ in range(M):
        out = out * (1 - a * qm)
        qm *= q
    return out


def theta_numeric(z, p: complex, M: int = None):
    """theta(z;p) = (z;p)_infty (p/z;p)_infty."""
    return qpoch_inf_numeric(z, p, M) * qpoch_inf_numeric(p / z, p, M)


def elliptic_gamma_numeric(z, p: complex, q: complex, M: int = None):
    """Gamma(z;p,q) = prod_{i,j>=0} (1-p^{i+1}q^{j+1}/z)/(1-p^i q^j z)."""
    Mp = M if M is not None else _terms_needed(abs(p))
    Mq = M if M is not None else _terms_needed(abs(q))
    out = 1.0 + 0j if np.isscalar(z) else np.ones_like(z, dtype=complex)
    pi = 1.0 + 0j
    for _ in range(Mp):
        qj = 1.0 + 0j
        for _ in range(Mq):
            out = out * (1 - p * q * pi * qj / z) / (1 - pi * qj * z)
            qj *= q
        pi *= p
    return out


def weight_sym_numeric(xs: Sequence, p: complex, q: complex, t: complex,
                       pole_tol: float = 1e-9):
    """The symmetric elliptic weight w^sym(x;p), in the pole-avoiding form

        prod_{a<b} Gamma(t x_a/x_b) Gamma(t x_b/x_a)
                   * theta(x_a/x_b; p) * theta(x_b/x_a; q),

    valid because 1/(Gamma(z)Gamma(1/z)) = theta(z;p) theta(1/z;q).

    In this form the weight is regular on the whole torus (x_a = x_b is a
    zero, not a pole); the only way poles can touch the torus is |t| -> 1,
    which is what gets guarded."""
    n = len(xs)
    if abs(abs(complex(t)) - 1) < pole_tol:
        raise PoleProximity("|t| too close to 1: weight poles touch the torus")
    out = 1.0 + 0j if np.isscalar(xs[0]) else np.ones_like(xs[0], dtype=complex)
    for a in range(n):
        for b in range(a + 1, n):
            z = xs[a] / xs[b]
            out = out * elliptic_gamma_numeric(t * z, p, q) \
                      * elliptic_gamma_numeric(t / z, p, q) \
                      * theta_numeric(z, p) * theta_numeric(1 / z, q)
    return out


# ---------------------------------------------------------------------------
# torus quadrature


def torus_grid(n: int, N: int, offset: float = 0.5) -> List[np.ndarray]:
    """Product grid of N-th roots rotated by `offset` grid steps per axis,
    flattened to n arrays of length N^n.  Exact for Laurent monomials with
    per-variable degree below N."""
    angles = 2.0 * math.pi * (np.arange(N) + offset) / N
    circle = np.exp(1j * angles)
    grids = np.meshgrid(*([circle] * n), indexing="ij")
    return [g.reshape(-1) for g in grids]


def eval_laurent_grid(f, xs: List[np.ndarray]) -> np.ndarray:
    out = np.zeros_like(xs[0], dtype=complex)
    for e, c in f.terms.items():
        v = complex(c) * np.ones_like(xs[0], dtype=complex)
        for xi, ei in zip(xs, e):
            if ei:
                v = v * xi ** ei
        out += v
    return out


def eval_layers_grid(layers, xs: List[np.ndarray], p: complex) -> np.ndarray:
    """Evaluate sum_k p^k layer_k over a grid (layers in the m-basis)."""
    out = np.zeros_like(xs[0], dtype=complex)
    pk = 1.0 + 0j
    for layer in layers:
        out += pk * eval_laurent_grid(layer.to_laurent(), xs)
        pk *= p
    return out


def _pmul_factor_inplace(layers: np.ndarray, order: int, coef: np.ndarray):
    """Multiply a truncated poly-in-p (layers[k] = p^k coefficient arrays)
    by (1 + p^order * coef), in place."""
    K = layers.shape[0] - 1
    for k in range(K, order - 1, -1):
        layers[k] += layers[k - order] * coef


def _pmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    K = a.shape[0] - 1
    out = np.zeros_like(a)
    for i in range(K + 1):
        for j in range(K + 1 - i):
            out[i + j] += a[i] * b[j]
    return out


def _pinv(a: np.ndarray) -> np.ndarray:
    K = a.shape[0] - 1
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for k in range(1, K + 1):
        acc = np.zeros_like(a[0])
        for i in range(1, k + 1):
            acc += a[i] * out[k - i]
        out[k] = -acc * out[0]
    return out


def gamma_p_layers(w: np.ndarray, K: int, q: complex) -> np.ndarray:
    """Gamma(w;p,q) as a truncated power series in p with array coefficients:
    (pq/w;p,q)_infty / (w;p,q)_infty, each double product split by p-power."""
    Mq = _terms_needed(abs(q))
    shape = (K + 1,) + np.shape(w)
    num = np.zeros(shape, dtype=complex)
    num[0] = 1.0
    den = np.zeros(shape, dtype=complex)
    den[0] = qpoch_inf_numeric(w, q, Mq)
    for i in range(1, K + 1):
        qj = 1.0 + 0j
        for _ in range(Mq):
            _pmul_factor_inplace(num, i, -q * qj / w)
            _pmul_factor_inplace(den, i, -qj * w)
            qj *= q
    return _pmul(num, _pinv(den))


def theta_p_layers(z: np.ndarray, K: int) -> np.ndarray:
    """theta(z;p) as a truncated poly in p with array coefficients."""
    shape = (K + 1,) + np.shape(z)
    out = np.zeros(shape, dtype=complex)
    out[0] = 1.0 - z
    for m in range(1, K + 1):
        _pmul_factor_inplace(out, m, -z)
        _pmul_factor_inplace(out, m, -1.0 / z)
    return out


def weight_sym_p_layers(xs: Sequence, K: int, q: complex, t: complex,
                        pole_tol: float = 1e-9) -> np.ndarray:
    """p-expansion of w^sym(x;p) through order K over a grid, using the same
    pole-avoiding Gamma/theta form as weight_sym_numeric."""
    n = len(xs)
    if abs(abs(complex(t)) - 1) < pole_tol:
        raise PoleProximity("|t| too close to 1: weight poles touch the torus")
    shape = (K + 1,) + np.shape(xs[0])
    out = np.zeros(shape, dtype=complex)
    out[0] = 1.0
    for a in range(n):
        for b in range(a + 1, n):
            z = xs[a] / xs[b]
            out = _pmul(out, gamma_p_layers(t * z, K, q))
            out = _pmul(out, gamma_p_layers(t / z, K, q))
            out = _pmul(out, theta_p_layers(z, K))
            th_q = qpoch_inf_numeric(1.0 / z, q) * qpoch_inf_numeric(q * z, q)
            out *= th_q
    return out


def orthogonality_check(ctx: OperatorContext, p: complex, lams, K: int = 4,
                        N: int = 64) -> dict:
    """Gram matrix of the deformed polynomials on the torus against w^sym.

    <f,g> = integral over T^n of f(x^{-1}) g(x) w^sym(x;p) by the N^n-point
    product rule, with the whole integrand truncated consistently at p-order
    K (the order to which the eigenfunctions are resolved); every resolved
    p-layer of an off-diagonal pairing must vanish.  The same pairing
    evaluated with the untruncated weight is reported as a diagnostic — its
    off-diagonals shrink like p^{K+1} under refinement of K.
    """
    from .eigen_symmetric import elliptic_macdonald

    n = ctx.n
    q = complex(ctx.q)
    t = complex(ctx.t)
    lams = [tuple(l) for l in lams]
    xs = torus_grid(n, N)
    xs_inv = [1.0 / g for g in xs]
    wlayers = weight_sym_p_layers(xs, K, q, t)
    wfull = weight_sym_numeric(xs, p, q, t)
    layers = {}
    layers_inv = {}
    for lam in lams:
        em = elliptic_macdonald(ctx, lam, K)
        layers[lam] = np.stack(
            [eval_laurent_grid(l.to_laurent(), xs) for l in em.layers])
        layers_inv[lam] = np.stack(
            [eval_laurent_grid(l.to_laurent(), xs_inv) for l in em.layers])
    gram: Dict[Tuple, complex] = {}
    gram_full: Dict[Tuple, complex] = {}
    for lam in lams:
        for mu in lams:
            prod = _pmul(_pmul(layers_inv[lam], layers[mu]), wlayers)
            val = 0j
            pk = 1.0 + 0j
            for k in range(K + 1):
                val += pk * np.mean(prod[k])
                pk *= p
            gram[(lam, mu)] = val
            vfull = eval_layers_p(layers_inv[lam], p) \
                * eval_layers_p(layers[mu], p) * wfull
            gram_full[(lam, mu)] = complex(np.mean(vfull))
    worst = 0.0
    pairs = []
    for i, lam in enumerate(lams):
        for mu in lams[i + 1:]:
            scale = math.sqrt(abs(gram[(lam, lam)]) * abs(gram[(mu, mu)]))
            rel = abs(gram[(lam, mu)]) / scale
            rel_full = abs(gram_full[(lam, mu)]) / scale
            pairs.append({"lambda": lam, "mu": mu, "rel_offdiag": rel,
                          "rel_offdiag_untruncated": rel_full})
            worst = max(worst, rel)
    return {
        "gram": gram,
        "gram_untruncated": gram_full,
        "pairs": pairs,
        "max_rel_offdiag": worst,
        "diagonal": {lam: gram[(lam, lam)] for lam in lams},
    }


def eval_layers_p(stack: np.ndarray, p: complex) -> np.ndarray:
    out = np.zeros_like(stack[0])
    pk = 1.0 + 0j
    for layer in stack:
        out += pk * layer
        pk *= p
    return out


# ---------------------------------------------------------------------------
# trigonometric integral transform


def b_lambda_trig(ctx: OperatorContext, lam) -> object:
    """Cauchy-kernel coefficient b_lambda (exact):
    prod_{1<=i<=j<=n} (t^{j-i+1} q^{lam_i-lam_j};q)_{m_j}
                    / (t^{j-i} q^{lam_i-lam_j+1};q)_{m_j},
    with m_j = lam_j - lam_{j+1}, lam_{n+1} = 0."""
    from .scalars import pochhammer, rat

    q, t, n = ctx.q, ctx.t, ctx.n
    lam = list(lam) + [0]
    out = rat(1)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = lam[j - 1] - lam[j]
            if m == 0:
                continue
            num = pochhammer(t ** (j - i + 1) * q ** (lam[i - 1] - lam[j - 1]), q, m)
            den = pochhammer(t ** (j - i) * q ** (lam[i - 1] - lam[j - 1] + 1), q, m)
            out = out * num / den
    return out


def kernel_numeric(xs, ys, q: complex, t: complex):
    """Cauchy kernel K(x,y) = prod_{i,j} (t x_i/y_j;q)/(x_i/y_j;q)."""
    out = 1.0 + 0j if np.isscalar(ys[0]) else np.ones_like(ys[0], dtype=complex)
    for xi in xs:
        for yj in ys:
            z = xi / yj
            out = out * qpoch_inf_numeric(t * z, q) / qpoch_inf_numeric(z, q)
    return out


def weight_trig_numeric(ys, q: complex, t: complex):
    """w(y) = prod_{a<b} (1 - y_b/y_a) (q y_b/(t y_a);q) / (t y_b/y_a;q)."""
    out = 1.0 + 0j if np.isscalar(ys[0]) else np.ones_like(ys[0], dtype=complex)
    n = len(ys)
    for a in range(n):
        for b in range(a + 1, n):
            z = ys[b] / ys[a]
            out = out * (1 - z) * qpoch_inf_numeric(q * z / t, q) \
                / qpoch_inf_numeric(t * z, q)
    return out


def trig_transform_check(ctx: OperatorContext, lam, N: int = 64,
                         H: int = 40, sigma: float = 0.5,
                         r_values: Sequence[float] = (1.0, 1.3),
                         x_points: Sequence = None) -> dict:
    """Verify the kernel transform of the asymptotically free function:

        integral over C_{r,sigma} of K(x,y) w(y) y^{rev lam} f(y; rev s)
        equals b_lam P_lam(x),

    where s = t^rho q^lam and rev is coordinate reversal.  Also verifies
    independence of the radius r.
    """
    from .eigen_asymptotic import stationary_ruijsenaars
    from .eigen_symmetric import macdonald_polynomial

    n = ctx.n
    q = complex(ctx.q)
    t = complex(ctx.t)
    lam = tuple(lam)
    if sigma >= min(1.0, 1.0 / abs(t)):
        raise ConfigError("sigma must satisfy sigma < min(1, 1/|t|)")
    s_rev = tuple(reversed(ctx.t_rho_q_lambda(lam)))
    fr = stationary_ruijsenaars(ctx, s_rev, H, k0cap=0)
    f_terms = [(beta, complex(c)) for beta, c in fr.f.items()]
    lam_rev = tuple(reversed(lam))
    P = macdonald_polynomial(ctx, lam).to_laurent()
    b = complex(b_lambda_trig(ctx, lam))
    if x_points is None:
        rng = np.random.default_rng(7)
        rad = 0.5 * abs(q) * sigma ** (n - 1) * min(r_values)
        x_points = [
            tuple(rad * (0.3 + 0.7 * rng.random())
                  * np.exp(2j * math.pi * rng.random()) for _ in range(n))
            for _ in range(3)
        ]
    results = []
    per_r: Dict[float, List[complex]] = {}
    for r in r_values:
        angles = torus_grid(n, N)
        ys = [angles[j] * (sigma ** j * r) for j in range(n)]
        # f(y; s_rev) from the trigonometric (k_0 = 0) slice, in ratios
        zr = [ys[j + 1] / ys[j] for j in range(n - 1)]
        fvals = np.zeros_like(ys[0], dtype=complex)
        for beta, c in f_terms:
            v = c * np.ones_like(ys[0], dtype=complex)
            for j in range(1, n):
                if beta[j]:
                    v = v * zr[j - 1] ** beta[j]
            fvals += v
        ymon = np.ones_like(ys[0], dtype=complex)
        for j in range(n):
            if lam_rev[j]:
                ymon = ymon * ys[j] ** lam_rev[j]
        w = weight_trig_numeric(ys, q, t)
        base = w * ymon * fvals
        vals = []
        for x in x_points:
            Kv = kernel_numeric(x, ys, q, t)
            vals.append(complex(np.mean(Kv * base)))
        per_r[r] = vals
    max_rel_err = 0.0
    for i, x in enumerate(x_points):
        target = b * P.evaluate(x)
        got = per_r[r_values[0]][i]
        rel = abs(got - target) / max(abs(target), 1e-300)
        results.append({"x": [complex(v) for v in x], "rel_err": rel})
        max_rel_err = max(max_rel_err, rel)
    r_dev = 0.0
    for i in range(len(x_points)):
        vs = [per_r[r][i] for r in r_values]
        scale = max(max(abs(v) for v in vs), 1e-300)
        r_dev = max(r_dev, max(abs(v - vs[0]) for v in vs) / scale)
    return {
        "b_lambda": b,
        "max_rel_err": max_rel_err,
        "r_independence_dev": r_dev,
        "points": results,
    }


# ---------------------------------------------------------------------------
# informational experiment: p <-> q symmetry of the ground state


def groundstate_pq_experiment(q, p, t, n: int = 2, K: int = 6,
                              n_points: int = 4) -> dict:
    """Compare P_0(x;p | q,t) with P_0(x;q | p,t) numerically at random torus
    points (informational: measures the deviation, asserts nothing)."""
    from .eigen_symmetric import elliptic_macdonald

    ctx1 = OperatorContext(n, q, t)
    ctx2 = OperatorContext(n, p, t)
    em1 = elliptic_macdonald(ctx1, (0,) * n, K)
    em2 = elliptic_macdonald(ctx2, (0,) * n, K)
    rng = np.random.default_rng(11)
    pts = []
    pnum = complex(to_complex(p))
    qnum = complex(to_complex(q))
    for _ in range(n_points):
        x = tuple(np.exp(2j * math.pi * rng.random()) for _ in range(n))
        v1 = sum(pnum ** k * em1.layers[k].evaluate(x) for k in range(K + 1))
        v2 = sum(qnum ** k * em2.layers[k].evaluate(x) for k in range(K + 1))
        dev = abs(v1 - v2) / max(abs(v1), 1e-300)
        pts.append({"x": [complex(v) for v in x], "v_pq": v1, "v_qp": v2,
                    "rel_dev": dev})
    return {"points": pts, "max_rel_dev": max(pt["rel_dev"] for pt in pts)}
