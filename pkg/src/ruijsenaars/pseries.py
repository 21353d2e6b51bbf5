"""Truncated power series in the elliptic nome p.

Two flavours are needed: scalar p-series (plain lists of scalars) and
p-series whose coefficients are Laurent polynomials.  Both are truncated at a
fixed order K, meaning terms p^0..p^K are stored and everything above is
dropped on multiplication.
"""

from __future__ import annotations

from typing import List

from .errors import DimensionMismatch, NonUnitSeries
from .laurent import LaurentPoly
from .scalars import inv

# ---------------------------------------------------------------------------
# scalar p-series: plain lists [c_0, ..., c_K]


def ps_trim(a: List, K: int) -> List:
    out = list(a[: K + 1])
    while len(out) < K + 1:
        out.append(0)
    return out


def ps_add(a: List, b: List, K: int) -> List:
    return [x + y for x, y in zip(ps_trim(a, K), ps_trim(b, K))]


def ps_mul(a: List, b: List, K: int) -> List:
    a = ps_trim(a, K)
    b = ps_trim(b, K)
    out = [0] * (K + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(0, K + 1 - i):
            if b[j]:
                out[i + j] = out[i + j] + x * b[j]
    return out


def ps_inv(a: List, K: int) -> List:
    """Inverse of a unit scalar series."""
    a = ps_trim(a, K)
    if not a[0]:
        raise NonUnitSeries("scalar series with zero constant term")
    inv0 = inv(a[0])
    out = [inv0] + [0] * K
    for k in range(1, K + 1):
        s = 0
        for i in range(1, k + 1):
            if a[i]:
                s = s + a[i] * out[k - i]
        out[k] = -inv0 * s
    return out


# ---------------------------------------------------------------------------
# p-series with LaurentPoly coefficients


class PSeriesLaurent:
    """sum_{k<=K} p^k c_k(x) with LaurentPoly layers c_k."""

    __slots__ = ("n", "K", "coeffs")

    def __init__(self, n: int, K: int, coeffs: List[LaurentPoly] = None):
        self.n = n
        self.K = K
        if coeffs is None:
            coeffs = []
        cs = list(coeffs[: K + 1])
        while len(cs) < K + 1:
            cs.append(LaurentPoly.zero(n))
        self.coeffs = cs

    @classmethod
    def constant(cls, n: int, K: int, f: LaurentPoly) -> "PSeriesLaurent":
        return cls(n, K, [f])

    @classmethod
    def one(cls, n: int, K: int) -> "PSeriesLaurent":
        return cls(n, K, [LaurentPoly.constant(n, 1)])

    def _check(self, other: "PSeriesLaurent"):
        if self.n != other.n or self.K != other.K:
            raise DimensionMismatch("incompatible p-series")

    def __add__(self, other: "PSeriesLaurent") -> "PSeriesLaurent":
        self._check(other)
        return PSeriesLaurent(
            self.n, self.K, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "PSeriesLaurent") -> "PSeriesLaurent":
        self._check(other)
        return PSeriesLaurent(
            self.n, self.K, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other: "PSeriesLaurent") -> "PSeriesLaurent":
        self._check(other)
        out = [LaurentPoly.zero(self.n) for _ in range(self.K + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(0, self.K + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return PSeriesLaurent(self.n, self.K, out)

    def scale(self, c) -> "PSeriesLaurent":
        return PSeriesLaurent(self.n, self.K, [f.scale(c) for f in self.coeffs])

    def inverse(self) -> "PSeriesLaurent":
        """Inverse assuming the constant layer is the unit polynomial 1
        (the only case the operator expansions need)."""
        one = LaurentPoly.constant(self.n, 1)
        if self.coeffs[0] != one:
            raise NonUnitSeries("p-series layer 0 is not the constant 1")
        out = [one] + [LaurentPoly.zero(self.n) for _ in range(self.K)]
        for k in range(1, self.K + 1):
            acc = LaurentPoly.zero(self.n)
            for i in range(1, k + 1):
                if not self.coeffs[i].is_zero():
                    acc = acc + self.coeffs[i] * out[k - i]
            out[k] = -acc
        return PSeriesLaurent(self.n, self.K, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PSeriesLaurent)
            and self.n == other.n
            and self.K == other.K
            and self.coeffs == other.coeffs
        )

    def evaluate(self, xs, p):
        tot = 0j
        pk = 1.0 + 0j
        for f in self.coeffs:
            tot += pk * f.evaluate(xs)
            pk *= p
        return tot

    def to_json(self):
        return {"p_order": self.K, "layers": [f.to_json() for f in self.coeffs]}

    @classmethod
    def from_json(cls, n: int, data) -> "PSeriesLaurent":
        return cls(
            n, data["p_order"],
            [LaurentPoly.from_json(n, l) for l in data["layers"]],
        )


def theta_p_expansion(n: int, K: int, w: LaurentPoly) -> PSeriesLaurent:
    """theta(w;p) = (1-w) prod_{m>=1} (1 - p^m w)(1 - p^m / w)  mod p^{K+1}.

    w must be a single Laurent monomial (so 1/w is again Laurent).
    """
    if len(w.terms) != 1:
        raise NonUnitSeries("theta argument must be a monomial")
    ((e, c),) = w.terms.items()
    winv = LaurentPoly(n, {tuple(-x for x in e): inv(c)})
    out = PSeriesLaurent.constant(n, K, LaurentPoly.constant(n, 1) - w)
    for m in range(1, K + 1):
        fac1 = PSeriesLaurent(n, K)
        fac1.coeffs[0] = LaurentPoly.constant(n, 1)
        fac1.coeffs[m] = -w
        fac2 = PSeriesLaurent(n, K)
        fac2.coeffs[0] = LaurentPoly.constant(n, 1)
        fac2.coeffs[m] = -winv
        out = out * fac1 * fac2
    return out


def pochhammer_p_expansion(n: int, K: int, w: LaurentPoly) -> PSeriesLaurent:
    """(p w; p)_infty = prod_{m>=1} (1 - p^m w)  mod p^{K+1}."""
    out = PSeriesLaurent.one(n, K)
    for m in range(1, K + 1):
        fac = PSeriesLaurent(n, K)
        fac.coeffs[0] = LaurentPoly.constant(n, 1)
        fac.coeffs[m] = -w
        out = out * fac
    return out
