"""Asymptotically free eigenfunctions on the affine root cone.

The series f(x;s;p) = sum_beta f_beta x^{-beta} over the positive affine cone
is produced by a height recursion: the coefficient at mu is fixed by the
modified-operator symbols b_beta evaluated at shifted spectral points, with
the stationary eigenvalue corrections eps_l(u) (polynomials in the generating
variable u, degree <= n) determined along the delta-multiples, where the
denominator of the naive recursion degenerates.
"""

from __future__ import annotations

import itertools
from typing import Dict, List

from .errors import EigenvalueCollision, GenericityViolation
from .operators import GENERIC_C_CANDIDATES, OperatorContext, SymbolTable, \
    eval_symbol_poly
from .scalars import rat, to_complex
from .symfunc import elementary_symmetric
from .zseries import AffineCoords, ZSeries, dstat, delta_coords, iter_cone, \
    rotate, x_exponents
from .zseries import exp_zseries, interval_coords, log_pochhammer_pq

UPoly = List[object]  # coefficients c_r of sum_r (-u)^r c_r


def upoly_zero(n: int) -> UPoly:
    return [rat(0)] * (n + 1)


def upoly_add_scaled(acc: UPoly, term: UPoly, w) -> None:
    for i, v in enumerate(term):
        if v:
            acc[i] = acc[i] + v * w


class AsymptoticEigenfunction:
    """f coefficients over the cone plus the eigenvalue u-polynomials.

    eps[l] holds the u-polynomial of the p^l eigenvalue layer: the
    coefficient of (-u)^r in eps[l] is the E^{(r)} eigenvalue layer
    eps^{(r)}_l.
    """

    def __init__(self, ctx, s, H, f, eps, c, k0cap):
        self.ctx = ctx
        self.s = tuple(s)
        self.H = H
        self.k0cap = k0cap
        self.f = f
        self.eps = eps
        self.c = c

    def coeff(self, beta: AffineCoords):
        return self.f.get(tuple(beta), 0)

    def eps_layer(self, r: int, l: int):
        """eps^{(r)}_l, zero beyond the resolved order."""
        if l >= len(self.eps):
            return 0
        return self.eps[l][r]

    def as_zseries(self) -> ZSeries:
        return ZSeries(self.ctx.n, self.H, dict(self.f), self.k0cap)

    def decay_profile(self) -> List[dict]:
        """Soft diagnostic: per height, the largest |f_beta| / |q|^{d(beta)}."""
        q = abs(to_complex(self.ctx.q))
        best: Dict[int, float] = {}
        for beta, c in self.f.items():
            h = sum(beta)
            ratio = abs(to_complex(c)) / q ** dstat(beta)
            if ratio > best.get(h, 0.0):
                best[h] = ratio
        return [{"height": h, "max_ratio": best[h]} for h in sorted(best)]

    def to_json(self):
        from .scalars import dump_scalar

        items = sorted(self.f.items(), key=lambda bc: (sum(bc[0]), bc[0]))
        return {
            "n": self.ctx.n,
            "s": [dump_scalar(v) for v in self.s],
            "height_cutoff": self.H,
            "f": [{"beta": list(b), "coeff": dump_scalar(c)} for b, c in items],
            "eigenvalues": [
                {"p_order": l, "u_coeffs": [dump_scalar(v) for v in poly]}
                for l, poly in enumerate(self.eps)
            ],
        }


def _decompositions(mu: AffineCoords):
    """All (beta, nu) with beta + nu = mu componentwise, beta != 0."""
    ranges = [range(m + 1) for m in mu]
    for beta in itertools.product(*ranges):
        if any(beta):
            yield beta, tuple(m - b for m, b in zip(mu, beta))


def stationary_ruijsenaars(ctx: OperatorContext, s, H: int, c=None,
                           k0cap: int = None,
                           table: SymbolTable = None) -> AsymptoticEigenfunction:
    """Solve the height recursion for f(x;s;p) up to height H."""
    n = ctx.n
    s = tuple(rat(v) for v in s)
    ctx.check_s_generic(s)
    if table is None:
        table = SymbolTable(ctx, H, k0cap)
    cap = table.k0cap
    support = set()
    for ser in table.series.values():
        support.update(ser.terms)
    support.discard((0,) * n)

    candidates = [rat(c)] if c is not None else [rat(v) for v in GENERIC_C_CANDIDATES]
    last_err = None
    for cc in candidates:
        try:
            return _run_recursion(ctx, s, H, cc, cap, table, support)
        except EigenvalueCollision as e:
            last_err = e
    raise last_err


def _run_recursion(ctx, s, H, cc, cap, table, support):
    n = ctx.n
    zero = (0,) * n
    delta = delta_coords(n)
    f: Dict[AffineCoords, object] = {zero: rat(1)}
    eps: List[UPoly] = [ [elementary_symmetric(r, s) for r in range(n + 1)] ]
    eps0_at_c = eval_symbol_poly(eps[0], cc)
    for mu in iter_cone(n, H, cap):
        if mu == zero:
            continue
        is_delta_multiple = len(set(mu)) == 1
        if is_delta_multiple:
            l = mu[0]
            poly = upoly_zero(n)
            for beta, nu in _decompositions(mu):
                if beta not in support:
                    continue
                fnu = f.get(nu, 0)
                if not fnu:
                    continue
                upoly_add_scaled(poly, table.eval_ucoeffs(beta, nu, s), fnu)
            while len(eps) <= l:
                eps.append(upoly_zero(n))
            eps[l] = poly
            f[mu] = rat(0)
            continue
        num = rat(0)
        for beta, nu in _decompositions(mu):
            if beta not in support:
                continue
            fnu = f.get(nu, 0)
            if not fnu:
                continue
            num = num - eval_symbol_poly(table.eval_ucoeffs(beta, nu, s), cc) * fnu
        k = 1
        while True:
            nu = tuple(m - k for m in mu)
            if min(nu) < 0:
                break
            fnu = f.get(nu, 0)
            if fnu and k < len(eps):
                num = num + eval_symbol_poly(eps[k], cc) * fnu
            k += 1
        den = eval_symbol_poly(table.eval_ucoeffs(zero, mu, s), cc) - eps0_at_c
        if den == 0:
            raise EigenvalueCollision(
                "degenerate denominator at mu=%s for c=%s" % (mu, cc))
        val = num / den
        if val:
            f[mu] = val
    return AsymptoticEigenfunction(ctx, s, H, f, eps, cc, cap)


def check_joint_eigen(ctx: OperatorContext, fr: AsymptoticEigenfunction,
                      table: SymbolTable = None) -> dict:
    """Exact verification of E^{(r)} f = eps^{(r)}(p) f for r = 1..n on the
    whole resolved cone.  Returns {"ok": ..., "failures": [...]}."""
    n = ctx.n
    if table is None:
        table = SymbolTable(ctx, fr.H, fr.k0cap)
    support = set()
    for ser in table.series.values():
        support.update(ser.terms)
    failures = []
    for mu in iter_cone(n, fr.H, fr.k0cap):
        lhs = upoly_zero(n)
        for beta, nu in _decompositions(mu):
            if beta not in support:
                continue
            fnu = fr.f.get(nu, 0)
            if fnu:
                upoly_add_scaled(lhs, table.eval_ucoeffs(beta, nu, fr.s), fnu)
        fmu = fr.f.get(mu, 0)
        if fmu:
            upoly_add_scaled(lhs, table.eval_ucoeffs((0,) * n, mu, fr.s), fmu)
        rhs = upoly_zero(n)
        k = 0
        while True:
            nu = tuple(m - k for m in mu)
            if min(nu) < 0:
                break
            fnu = fr.f.get(nu, 0)
            if fnu and k < len(fr.eps):
                upoly_add_scaled(rhs, fr.eps[k], fnu)
            k += 1
        for r in range(n + 1):
            if lhs[r] != rhs[r]:
                failures.append({"mu": mu, "r": r})
    return {"ok": not failures, "failures": failures}


def specialize_to_symmetric(ctx: OperatorContext, em,
                            fr: AsymptoticEigenfunction) -> dict:
    """Cross-check: P_lam(x;p) = x^lam f(x; t^rho q^lam; p) on all jointly
    resolved coefficients, plus eigenvalue series agreement."""
    lam = em.lam
    s_expected = ctx.t_rho_q_lambda(lam)
    if tuple(fr.s) != tuple(s_expected):
        raise GenericityViolation("f was not solved at s = t^rho q^lambda")
    lam_laurent = [em.layers[k].to_laurent() for k in range(em.K + 1)]
    failures = []
    checked = 0
    for beta in iter_cone(ctx.n, fr.H, fr.k0cap):
        k0 = beta[0]
        if k0 > em.K:
            continue
        target = tuple(l + e for l, e in zip(lam, x_exponents(beta)))
        expect = lam_laurent[k0].coeff(target)
        got = fr.f.get(beta, 0)
        checked += 1
        if expect != got:
            failures.append({"beta": beta, "expected": str(expect),
                             "got": str(got)})
    eig_failures = []
    for r in range(1, ctx.n + 1):
        for l in range(min(em.K, (fr.H // ctx.n) if ctx.n else 0) + 1):
            if l > em.K:
                break
            a = em.eps[r][l] if l < len(em.eps[r]) else 0
            b = fr.eps_layer(r, l)
            if a != b:
                eig_failures.append({"r": r, "p_order": l})
    return {"ok": not failures and not eig_failures,
            "coeffs_checked": checked,
            "coeff_failures": failures,
            "eigenvalue_failures": eig_failures}


def rotation_check(ctx: OperatorContext, s, H: int, c=None) -> dict:
    """f(x;s;p) is invariant under the cyclic rotation
    x -> (x_2..x_n, p x_1), s -> (s_2..s_n, s_1): coefficient transport
    f_beta(rot s) = f_{rot beta}(s), plus equality of eigenvalue series."""
    s = tuple(rat(v) for v in s)
    rot_s = s[1:] + s[:1]
    f1 = stationary_ruijsenaars(ctx, s, H, c=c)
    f2 = stationary_ruijsenaars(ctx, rot_s, H, c=c)
    failures = []
    for beta in iter_cone(ctx.n, H):
        if f2.f.get(beta, 0) != f1.f.get(rotate(beta), 0):
            failures.append({"beta": beta})
    eig_ok = len(f1.eps) == len(f2.eps) and all(
        a == b for a, b in zip(f1.eps, f2.eps))
    return {"ok": not failures and eig_ok,
            "coeff_failures": failures, "eigenvalues_equal": eig_ok}


def gamma_reflection_factor(ctx: OperatorContext, H: int) -> ZSeries:
    """prod_{a<b} Gamma(t x_b/x_a; p,q) / Gamma(q x_b/(t x_a); p,q)
    as a z-series (the kernel of the t -> q/t reflection)."""
    n, q, t = ctx.n, ctx.q, ctx.t
    lg = ZSeries(n, H)
    ones = delta_coords(n)
    for a in range(n):
        for b in range(a + 1, n):
            mono = interval_coords(n, a, b)
            comp = tuple(1 - m for m in mono)
            # log Gamma(c z^mono) = log (q/c z^comp;p,q) - log (c z^mono;p,q)
            for cval, sign in ((t, 1), (q / t, -1)):
                term = log_pochhammer_pq(n, H, q / cval, comp, q) \
                    - log_pochhammer_pq(n, H, cval, mono, q)
                lg = lg + term.scale(sign)
    return exp_zseries(lg)


def reflection_check(ctx: OperatorContext, s, H: int, c=None) -> dict:
    """Measure the reflection constant gamma(s;p):
    f(x;s;p | q, q/t) = gamma(s;p) * Gamma-factor * f(x;s;p | q, t).

    Returns the measured gamma series (must be x-independent), checks
    gamma_0 = 1 and gamma_t * gamma_{q/t} = 1 to the available p-order.
    """
    n, q, t = ctx.n, ctx.q, ctx.t
    ctx2 = OperatorContext(n, q, q / t, ctx.resonance_bound)
    s = tuple(rat(v) for v in s)
    f1 = stationary_ruijsenaars(ctx, s, H, c=c)
    f2 = stationary_ruijsenaars(ctx2, s, H, c=c)
    R = gamma_reflection_factor(ctx, H)
    R2 = gamma_reflection_factor(ctx2, H)
    quot = f2.as_zseries() * (R * f1.as_zseries()).inverse()
    quot_rev = f1.as_zseries() * (R2 * f2.as_zseries()).inverse()
    L = H // n
    gamma = [rat(0)] * (L + 1)
    gamma_rev = [rat(0)] * (L + 1)
    stray = []
    delta = delta_coords(n)
    for beta, cval in quot.terms.items():
        if len(set(beta)) == 1:
            gamma[beta[0]] = cval
        else:
            stray.append({"beta": beta, "coeff": str(cval)})
    for beta, cval in quot_rev.terms.items():
        if len(set(beta)) == 1:
            gamma_rev[beta[0]] = cval
    prod = [rat(0)] * (L + 1)
    for i in range(L + 1):
        for j in range(L + 1 - i):
            prod[i + j] = prod[i + j] + gamma[i] * gamma_rev[j]
    unit_ok = prod[0] == 1 and all(v == 0 for v in prod[1:])
    return {
        "ok": not stray and gamma[0] == 1 and unit_ok,
        "x_independent": not stray,
        "stray_terms": stray,
        "gamma": [str(v) for v in gamma],
        "gamma_0_is_1": gamma[0] == 1,
        "gamma_product_is_1": unit_ok,
        "p_orders_resolved": L,
    }
