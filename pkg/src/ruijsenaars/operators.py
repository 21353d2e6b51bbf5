"""Macdonald q-difference operators and their elliptic deformations.

Everything acts through the Weyl-denominator quotient form

    D^{(r)} f = ( sum_{|I|=r} T^I_t(Delta) * C_{I}(x;p) * T^I_q(f) ) / Delta,

where C_I is the elliptic dressing factor (C_I = 1 at p = 0).  The division
is exact; a nonzero remainder raises immediately and serves as a built-in
correctness oracle.  Variable indices are 0-based throughout.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Tuple

from .errors import GenericityViolation
from .laurent import LaurentPoly, weyl_denominator
from .pseries import PSeriesLaurent, pochhammer_p_expansion
from .scalars import rat
from .symfunc import MBasis
from .zseries import ZSeries, theta_zseries, interval_coords

Subset = Tuple[int, ...]

# generic constants tried in turn when an eigenvalue collision shows up
GENERIC_C_CANDIDATES = ("7/11", "5/13", "9/17", "11/19", "13/23")


def _check_not_qpower(value, q, bound: int, what: str):
    """Raise unless value != q^m for all |m| <= bound."""
    pos = 1
    neg = 1
    if value == 1:
        raise GenericityViolation("%s equals q^0" % what)
    for m in range(1, bound + 1):
        pos = pos * q
        neg = neg / q
        if value == pos or value == neg:
            raise GenericityViolation("%s equals q^%d or q^-%d" % (what, m, m))


class OperatorContext:
    """Holds n, the base parameters q, t, and caches for one session.

    Exact mode only: q and t are nonzero rationals with q not a root of
    unity concern handled by the resonance certificate t^k != q^m for
    1 <= k < n, |m| <= resonance_bound.
    """

    def __init__(self, n: int, q, t, resonance_bound: int = 200):
        if n < 2:
            raise GenericityViolation("need at least two variables")
        self.n = n
        self.q = rat(q)
        self.t = rat(t)
        self.resonance_bound = resonance_bound
        if self.q == 0 or self.t == 0:
            raise GenericityViolation("q and t must be nonzero")
        if abs(self.q) == 1:
            raise GenericityViolation("|q| = 1 is not allowed in exact mode")
        tk = rat(1)
        for k in range(1, n):
            tk = tk * self.t
            _check_not_qpower(tk, self.q, resonance_bound, "t^%d" % k)
        self.delta = weyl_denominator(n)
        self._subsets: List[Subset] = []
        for r in range(n + 1):
            self._subsets.extend(itertools.combinations(range(n), r))
        self._tdelta: Dict[Subset, LaurentPoly] = {}
        self._cseries: Dict[Tuple[Subset, int], PSeriesLaurent] = {}
        self._bseries: Dict[Tuple[Subset, int, int], ZSeries] = {}

    # ---- parameter helpers -------------------------------------------

    def rho(self) -> Tuple[int, ...]:
        return tuple(self.n - 1 - i for i in range(self.n))

    def t_rho_q_lambda(self, lam) -> Tuple[object, ...]:
        """The spectral point s = t^rho q^lambda."""
        return tuple(self.t ** (self.n - 1 - i) * self.q ** lam[i]
                     for i in range(self.n))

    def check_s_generic(self, s):
        for v in s:
            if v == 0:
                raise GenericityViolation("s entries must be nonzero")
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                _check_not_qpower(s[j] / s[i], self.q, self.resonance_bound,
                                  "s_%d/s_%d" % (j, i))

    def subsets(self, r: int = None) -> List[Subset]:
        if r is None:
            return self._subsets
        return [I for I in self._subsets if len(I) == r]

    # ---- trigonometric operator --------------------------------------

    def _t_shift_delta(self, I: Subset) -> LaurentPoly:
        got = self._tdelta.get(I)
        if got is None:
            got = self.delta.q_shift(I, self.t)
            self._tdelta[I] = got
        return got

    def macdonald_apply(self, r: int, f: MBasis) -> MBasis:
        """D^{(r)}_x f for the trigonometric Macdonald operator."""
        F = f.to_laurent()
        num = LaurentPoly.zero(self.n)
        for I in self.subsets(r):
            num = num + self._t_shift_delta(I) * F.q_shift(I, self.q)
        return MBasis.from_laurent(num.exact_div(self.delta))

    def macdonald_apply_gen(self, c, f: MBasis) -> MBasis:
        """D_x(c) f = sum_r (-c)^r D^{(r)}_x f, in one exact division."""
        F = f.to_laurent()
        num = LaurentPoly.zero(self.n)
        for I in self._subsets:
            w = (-c) ** len(I)
            num = num + self._t_shift_delta(I).scale(w) * F.q_shift(I, self.q)
        return MBasis.from_laurent(num.exact_div(self.delta))

    # ---- elliptic dressing factors -----------------------------------

    def c_factor_series(self, I: Subset, K: int) -> PSeriesLaurent:
        """C_I(x;p) mod p^{K+1}: the product over i in I, j not in I of
        (p t x_i/x_j;p) (p x_j/(t x_i);p) / ((p x_i/x_j;p) (p x_j/x_i;p))."""
        key = (tuple(I), K)
        got = self._cseries.get(key)
        if got is not None:
            return got
        n, t = self.n, self.t
        num = PSeriesLaurent.one(n, K)
        den = PSeriesLaurent.one(n, K)
        inside = set(I)
        for i in I:
            for j in range(n):
                if j in inside:
                    continue
                xi_over_xj = LaurentPoly(n, {tuple(
                    1 if v == i else (-1 if v == j else 0) for v in range(n)): 1})
                xj_over_xi = LaurentPoly(n, {tuple(
                    1 if v == j else (-1 if v == i else 0) for v in range(n)): 1})
                num = num * pochhammer_p_expansion(n, K, xi_over_xj.scale(t))
                num = num * pochhammer_p_expansion(n, K, xj_over_xi.scale(1 / t))
                den = den * pochhammer_p_expansion(n, K, xi_over_xj)
                den = den * pochhammer_p_expansion(n, K, xj_over_xi)
        got = num * den.inverse()
        self._cseries[key] = got
        return got

    def elliptic_coeff_p(self, I: Subset, k: int, K: int = None) -> LaurentPoly:
        """C_{I,k}: coefficient of p^k in C_I(x;p)."""
        if K is None:
            K = k
        return self.c_factor_series(I, max(K, k)).coeffs[k]

    def elliptic_apply_order_k(self, r: int, k: int, f: MBasis, K: int) -> MBasis:
        """p^k-coefficient operator of the elliptic D^{(r)}(p), applied to f."""
        F = f.to_laurent()
        num = LaurentPoly.zero(self.n)
        for I in self.subsets(r):
            ck = self.elliptic_coeff_p(I, k, K)
            if ck.is_zero():
                continue
            num = num + self._t_shift_delta(I) * ck * F.q_shift(I, self.q)
        if num.is_zero():
            return MBasis(self.n)
        return MBasis.from_laurent(num.exact_div(self.delta))

    def elliptic_apply_gen_order_k(self, c, k: int, f: MBasis, K: int) -> MBasis:
        """p^k part of D_x(c;p) f = sum_r (-c)^r D^{(r)}(p) f."""
        F = f.to_laurent()
        num = LaurentPoly.zero(self.n)
        for I in self._subsets:
            ck = self.elliptic_coeff_p(I, k, K)
            if ck.is_zero():
                continue
            w = (-c) ** len(I)
            num = num + self._t_shift_delta(I).scale(w) * ck * F.q_shift(I, self.q)
        if num.is_zero():
            return MBasis(self.n)
        return MBasis.from_laurent(num.exact_div(self.delta))

    # ---- asymptotic symbols ------------------------------------------

    def b_series(self, I: Subset, H: int, k0cap: int = None) -> ZSeries:
        """B_I(x;p) as a z-series: the theta-quotient coefficient of the
        modified operator, normalized so its constant term is 1."""
        cap = H if k0cap is None else k0cap
        key = (tuple(I), H, cap)
        got = self._bseries.get(key)
        if got is not None:
            return got
        n, t = self.n, self.t
        inside = set(I)
        num = ZSeries.one(n, H, cap)
        den = ZSeries.one(n, H, cap)
        for a in range(n):
            for b in range(a + 1, n):
                ain = a in inside
                bin_ = b in inside
                if ain == bin_:
                    continue
                mono = interval_coords(n, a, b)
                if ain:  # a in I, b not: theta(x_b/(t x_a)) / theta(x_b/x_a)
                    num = num * theta_zseries(n, H, 1 / t, mono, cap)
                else:    # b in I, a not: theta(t x_b/x_a) / theta(x_b/x_a)
                    num = num * theta_zseries(n, H, t, mono, cap)
                den = den * theta_zseries(n, H, rat(1), mono, cap)
        got = num * den.inverse()
        self._bseries[key] = got
        return got


class SymbolTable:
    """Coefficients b^I_beta of all 2^n modified-operator symbols."""

    def __init__(self, ctx: OperatorContext, H: int, k0cap: int = None):
        self.ctx = ctx
        self.n = ctx.n
        self.H = H
        self.k0cap = H if k0cap is None else k0cap
        self.series: Dict[Subset, ZSeries] = {}
        for I in ctx.subsets():
            self.series[I] = ctx.b_series(I, H, self.k0cap)

    def b(self, I: Subset, beta):
        return self.series[tuple(I)].coeff(tuple(beta))

    def eval_ucoeffs(self, beta, nu, s) -> List[object]:
        """Coefficients [c_0..c_n] of the symbol polynomial
        b_beta(q^{-nu}; u) = sum_r (-u)^r c_r, where
        c_r = sum_{|I|=r} b^I_beta prod_{v in I} s_v q^{nu_v - nu_{v+1}}."""
        n = self.n
        q = self.ctx.q
        fac = [s[v] * q ** (nu[v] - nu[(v + 1) % n]) for v in range(n)]
        out = [0] * (n + 1)
        beta = tuple(beta)
        for I, ser in self.series.items():
            bI = ser.terms.get(beta, 0)
            if not bI:
                continue
            w = bI
            for v in I:
                w = w * fac[v]
            out[len(I)] = out[len(I)] + w
        return out

    def to_json(self):
        entries = []
        for I in sorted(self.series):
            ser = self.series[I]
            items = sorted(ser.terms.items(), key=lambda bc: (sum(bc[0]), bc[0]))
            for beta, c in items:
                from .scalars import dump_scalar
                entries.append({"I": list(I), "beta": list(beta),
                                "coeff": dump_scalar(c)})
        return {"n": self.n, "height_cutoff": self.H, "entries": entries}


def eval_symbol_poly(ucoeffs, u):
    """sum_r (-u)^r c_r."""
    out = 0
    w = 1
    for c in ucoeffs:
        out = out + w * c
        w = w * (-u)
    return out
