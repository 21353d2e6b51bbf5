"""Series over the positive affine root cone (height-graded z-series).

Monomials are indexed by affine coordinates beta = (k_0, ..., k_{n-1}) with
k_i >= 0, standing for z_0^{k_0} ... z_{n-1}^{k_{n-1}} where

    z_0 = p x_1 / x_n,   z_i = x_{i+1} / x_i  (1 <= i < n),

so z_0 z_1 ... z_{n-1} = p.  Height is sum(beta); the series is truncated at a
height cutoff H (optionally also capping k_0, which isolates the p^0
"trigonometric" slice).  In x-language a monomial beta is
p^{k_0} * prod_v x_v^{k_v - k_{v+1 mod n}} (0-based variables).
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Tuple

from .errors import DimensionMismatch, NonUnitSeries
from .scalars import dump_scalar, inv, parse_scalar

AffineCoords = Tuple[int, ...]


def height(beta: AffineCoords) -> int:
    return sum(beta)


def dstat(beta: AffineCoords) -> int:
    """Cyclic ascent statistic d(beta) = sum_v [k_{v+1} - k_v]_+ ."""
    n = len(beta)
    return sum(max(beta[(v + 1) % n] - beta[v], 0) for v in range(n))


def rotate(beta: AffineCoords) -> AffineCoords:
    """Image of beta under alpha_i -> alpha_{i+1 mod n}."""
    return (beta[-1],) + beta[:-1]


def x_exponents(beta: AffineCoords) -> Tuple[int, ...]:
    """Exponent vector of x for z^beta (the p-power is beta[0])."""
    n = len(beta)
    return tuple(beta[v] - beta[(v + 1) % n] for v in range(n))


def interval_coords(n: int, a: int, b: int) -> AffineCoords:
    """Affine coords of x_b/x_a for 0-based variables a < b (no p-power)."""
    if not 0 <= a < b < n:
        raise DimensionMismatch("need 0 <= a < b < n")
    return tuple(1 if a + 1 <= i <= b else 0 for i in range(n))


def delta_coords(n: int) -> AffineCoords:
    """Affine coords of p itself (the imaginary root delta)."""
    return (1,) * n


def iter_cone(n: int, H: int, k0cap: int = None) -> Iterator[AffineCoords]:
    """All coords with height <= H (and beta[0] <= k0cap), height-increasing."""
    if k0cap is None:
        k0cap = H
    by_height: List[List[AffineCoords]] = [[] for _ in range(H + 1)]

    def rec(prefix, s):
        if len(prefix) == n:
            by_height[s].append(tuple(prefix))
            return
        cap = H - s
        if not prefix:
            cap = min(cap, k0cap)
        for v in range(cap + 1):
            rec(prefix + [v], s + v)

    rec([], 0)
    for row in by_height:
        row.sort()
        for beta in row:
            yield beta


class ZSeries:
    __slots__ = ("n", "H", "k0cap", "terms")

    def __init__(self, n: int, H: int, terms: Dict[AffineCoords, object] = None,
                 k0cap: int = None):
        self.n = n
        self.H = H
        self.k0cap = H if k0cap is None else k0cap
        if terms:
            self.terms = {b: c for b, c in terms.items() if c}
        else:
            self.terms = {}

    def _admissible(self, beta: AffineCoords) -> bool:
        return sum(beta) <= self.H and beta[0] <= self.k0cap

    @classmethod
    def one(cls, n: int, H: int, k0cap: int = None) -> "ZSeries":
        return cls(n, H, {(0,) * n: 1}, k0cap)

    @classmethod
    def monomial(cls, n: int, H: int, beta: AffineCoords, c=1,
                 k0cap: int = None) -> "ZSeries":
        out = cls(n, H, None, k0cap)
        if out._admissible(tuple(beta)) and c:
            out.terms[tuple(beta)] = c
        return out

    def _check(self, other: "ZSeries"):
        if self.n != other.n or self.H != other.H or self.k0cap != other.k0cap:
            raise DimensionMismatch("incompatible z-series truncations")

    def coeff(self, beta: AffineCoords):
        return self.terms.get(tuple(beta), 0)

    def __add__(self, other: "ZSeries") -> "ZSeries":
        self._check(other)
        t = dict(self.terms)
        for b, c in other.terms.items():
            nc = t.get(b, 0) + c
            if nc:
                t[b] = nc
            else:
                t.pop(b, None)
        out = ZSeries(self.n, self.H, None, self.k0cap)
        out.terms = t
        return out

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "ZSeries":
        out = ZSeries(self.n, self.H, None, self.k0cap)
        if c:
            out.terms = {b: c * v for b, v in self.terms.items()}
        return out

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        H, cap = self.H, self.k0cap
        t: Dict[AffineCoords, object] = {}
        for ba, ca in a.items():
            ha = sum(ba)
            for bb, cb in b.items():
                if ha + sum(bb) > H:
                    continue
                if ba[0] + bb[0] > cap:
                    continue
                key = tuple(x + y for x, y in zip(ba, bb))
                nc = t.get(key, 0) + ca * cb
                if nc:
                    t[key] = nc
                else:
                    t.pop(key, None)
        out = ZSeries(self.n, self.H, None, cap)
        out.terms = t
        return out

    def inverse(self) -> "ZSeries":
        zero = (0,) * self.n
        a0 = self.terms.get(zero, 0)
        if not a0:
            raise NonUnitSeries("z-series has zero constant term")
        inv0 = inv(a0)
        nonconst = [(b, c) for b, c in self.terms.items() if b != zero]
        out: Dict[AffineCoords, object] = {zero: inv0}
        for beta in iter_cone(self.n, self.H, self.k0cap):
            if beta == zero:
                continue
            s = 0
            for g, c in nonconst:
                rem = tuple(x - y for x, y in zip(beta, g))
                if min(rem) < 0:
                    continue
                prev = out.get(rem, 0)
                if prev:
                    s = s + c * prev
            if s:
                out[beta] = -inv0 * s
        res = ZSeries(self.n, self.H, None, self.k0cap)
        res.terms = {b: c for b, c in out.items() if c}
        return res

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ZSeries)
            and self.n == other.n
            and self.H == other.H
            and self.terms == other.terms
        )

    def evaluate(self, xs, p):
        tot = 0j
        for beta, c in self.terms.items():
            v = complex(c) * p ** beta[0]
            for xi, e in zip(xs, x_exponents(beta)):
                if e:
                    v *= xi ** e
            tot += v
        return tot

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda bc: (sum(bc[0]), bc[0]))
        return {
            "height_cutoff": self.H,
            "terms": [{"affine_coords": list(b), "coeff": dump_scalar(c)}
                      for b, c in items],
        }

    @classmethod
    def from_json(cls, n: int, data) -> "ZSeries":
        t = {tuple(i["affine_coords"]): parse_scalar(i["coeff"])
             for i in data["terms"]}
        return cls(n, data["height_cutoff"], t)

    def __repr__(self):
        return "ZSeries(n=%d, H=%d, %d terms)" % (self.n, self.H, len(self.terms))


# ---------------------------------------------------------------------------
# theta and elliptic-gamma building blocks


def theta_zseries(n: int, H: int, c, mono: AffineCoords,
                  k0cap: int = None) -> ZSeries:
    """theta(c z^mono; p) = prod_{j>=0}(1 - c p^j z^mono)
                            prod_{j>=1}(1 - c^{-1} p^j z^{-mono}).

    Requires max(mono) <= 1 so every factor's monomial stays in the cone.
    """
    mono = tuple(mono)
    if max(mono) > 1 or sum(mono) == 0:
        raise NonUnitSeries("theta argument must be a 0/1 interval monomial")
    out = ZSeries.one(n, H, k0cap)
    j = 0
    while True:
        beta = tuple(j + m for m in mono)
        if sum(beta) > H:
            break
        out = out * (ZSeries.one(n, H, k0cap)
                     - ZSeries.monomial(n, H, beta, c, k0cap))
        j += 1
    cinv = inv(c)
    j = 1
    while True:
        beta = tuple(j - m for m in mono)
        if sum(beta) > H:
            break
        out = out * (ZSeries.one(n, H, k0cap)
                     - ZSeries.monomial(n, H, beta, cinv, k0cap))
        j += 1
    return out


def log_pochhammer_pq(n: int, H: int, c, mono: AffineCoords, q) -> ZSeries:
    """log (c z^mono; p,q)_infty = -sum_{k>=1} (c z^mono)^k
                                   / (k (1-p^k) (1-q^k))   as a z-series.

    The 1/(1-p^k) is expanded geometrically in the cone; 1/(1-q^k) stays a
    scalar.  Coefficients involve division by k, hence exact rationals.
    """
    mono = tuple(mono)
    h = sum(mono)
    if h == 0:
        raise NonUnitSeries("log-pochhammer argument needs positive height")
    out = ZSeries(n, H)
    ck = 1
    qk = 1
    for k in range(1, H // h + 1):
        ck = ck * c
        qk = qk * q
        coef = -ck / (k * (1 - qk))
        j = 0
        while True:
            beta = tuple(k * m + k * j for m in mono)
            if sum(beta) > H:
                break
            out = out + ZSeries.monomial(n, H, beta, coef)
            j += 1
    return out


def exp_zseries(a: ZSeries) -> ZSeries:
    """exp of a z-series with zero constant term."""
    zero = (0,) * a.n
    if a.terms.get(zero, 0):
        raise NonUnitSeries("exp needs zero constant term")
    from .scalars import rat

    out = ZSeries.one(a.n, a.H, a.k0cap)
    term = ZSeries.one(a.n, a.H, a.k0cap)
    for j in range(1, a.H + 1):
        term = (term * a).scale(rat(1, j))
        if not term.terms:
            break
        out = out + term
    return out


def gamma_zseries(n: int, H: int, c, mono: AffineCoords, q) -> ZSeries:
    """Gamma(c z^mono; p, q) = (pq/(c z^mono); p,q)_inf / (c z^mono; p,q)_inf.

    Needs 1 <= height(mono) <= n-1 and 0/1 coords so both pochhammer
    arguments live in the cone.
    """
    mono = tuple(mono)
    comp = tuple(1 - m for m in mono)
    if max(mono) > 1 or min(mono) < 0 or sum(mono) in (0, n):
        raise NonUnitSeries("gamma argument must be a proper interval monomial")
    lg = log_pochhammer_pq(n, H, q / c, comp, q) - log_pochhammer_pq(n, H, c, mono, q)
    return exp_zseries(lg)
