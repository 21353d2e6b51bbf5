"""Sparse n-variable Laurent polynomials with exact coefficients.

Terms are stored in a dict mapping exponent tuples (possibly negative entries)
to nonzero scalars.  Canonical form: no zero coefficients, so equality is dict
equality.  Coefficients are ``gmpy2.mpq`` in exact mode, ``complex`` in numeric
mode; the two are never mixed inside one polynomial.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .errors import DimensionMismatch, NonExactDivision
from .scalars import dump_scalar, inv, parse_scalar

Monomial = Tuple[int, ...]


class LaurentPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Monomial, object] = None):
        self.n = n
        if terms:
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            self.terms = {}

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "LaurentPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, n: int, exps: Monomial, c=1) -> "LaurentPoly":
        if len(exps) != n:
            raise DimensionMismatch("exponent tuple of length %d, n=%d" % (len(exps), n))
        return cls(n, {tuple(exps): c})

    @classmethod
    def variable(cls, n: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * n
        e[i] = power
        return cls(n, {tuple(e): 1})

    # ---- ring operations ----------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.n != other.n:
            raise DimensionMismatch("%d vs %d variables" % (self.n, other.n))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = t.get(e, 0) + c
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        out = LaurentPoly(self.n)
        out.terms = t
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = t.get(e, 0) - c
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        out = LaurentPoly(self.n)
        out.terms = t
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly(self.n)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        t: Dict[Monomial, object] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                nc = t.get(e, 0) + ca * cb
                if nc:
                    t[e] = nc
                else:
                    t.pop(e, None)
        out = LaurentPoly(self.n)
        out.terms = t
        return out

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly(self.n)
        out = LaurentPoly(self.n)
        out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def mul_monomial(self, exps: Monomial, c=1) -> "LaurentPoly":
        out = LaurentPoly(self.n)
        out.terms = {
            tuple(a + b for a, b in zip(e, exps)): c * v for e, v in self.terms.items()
        }
        return out

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise NonExactDivision("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            return LaurentPoly(self.n, {tuple(k * x for x in e): inv(c) ** (-k)})
        out = LaurentPoly.constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Monomial):
        return self.terms.get(tuple(exps), 0)

    # ---- q-difference shifts ------------------------------------------

    def q_shift(self, subset, q, direction: int = 1) -> "LaurentPoly":
        """Apply T^{subset}: x_i -> q^{direction} x_i for i in subset.

        On a monomial x^mu this multiplies the coefficient by
        q^(direction * sum_{i in subset} mu_i).
        """
        sub = tuple(subset)
        out = LaurentPoly(self.n)
        t = {}
        for e, c in self.terms.items():
            tot = 0
            for i in sub:
                tot += e[i]
            t[e] = c * q ** (direction * tot)
        out.terms = t
        return out

    # ---- exact division -----------------------------------------------

    def exact_div(self, den: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self/den; raises NonExactDivision otherwise.

        Single-divisor division along descending lex order of exponent
        tuples.  Exactness is guaranteed by bounding the quotient support in
        the Minkowski-difference box of the two supports; any step outside it
        proves non-divisibility, which keeps the loop finite.
        """
        self._check(den)
        if not den.terms:
            raise NonExactDivision("division by zero polynomial")
        if not self.terms:
            return LaurentPoly(self.n)
        den_items = sorted(den.terms.items(), reverse=True)
        lead_e, lead_c = den_items[0]
        inv_lead = inv(lead_c)
        nmin = [min(e[i] for e in self.terms) for i in range(self.n)]
        nmax = [max(e[i] for e in self.terms) for i in range(self.n)]
        dmin = [min(e[i] for e in den.terms) for i in range(self.n)]
        dmax = [max(e[i] for e in den.terms) for i in range(self.n)]
        qmin = [a - b for a, b in zip(nmin, dmax)]
        qmax = [a - b for a, b in zip(nmax, dmin)]
        rem = dict(self.terms)
        quot: Dict[Monomial, object] = {}
        while rem:
            e = max(rem)
            qe = tuple(a - b for a, b in zip(e, lead_e))
            for i in range(self.n):
                if not (qmin[i] <= qe[i] <= qmax[i]):
                    raise NonExactDivision("remainder does not vanish")
            qc = rem[e] * inv_lead
            quot[qe] = qc
            for de, dc in den_items:
                ke = tuple(a + b for a, b in zip(qe, de))
                nc = rem.get(ke, 0) - qc * dc
                if nc:
                    rem[ke] = nc
                else:
                    rem.pop(ke, None)
        out = LaurentPoly(self.n)
        out.terms = quot
        return out

    # ---- evaluation & serialization -----------------------------------

    def evaluate(self, xs):
        """Numeric evaluation at a point (sequence of complex numbers)."""
        tot = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for xi, ei in zip(xs, e):
                if ei:
                    v *= xi ** ei
            tot += v
        return tot

    def max_abs_degree(self) -> int:
        """max over variables/terms of |exponent| (0 for the zero poly)."""
        best = 0
        for e in self.terms:
            for x in e:
                if abs(x) > best:
                    best = abs(x)
        return best

    def to_json(self):
        items = sorted(self.terms.items(), reverse=True)
        return [{"exponents": list(e), "coeff": dump_scalar(c)} for e, c in items]

    @classmethod
    def from_json(cls, n: int, data) -> "LaurentPoly":
        t = {}
        for item in data:
            t[tuple(item["exponents"])] = parse_scalar(item["coeff"])
        return cls(n, t)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(%d, 0)" % self.n
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True)[:8]:
            parts.append("%s*x^%s" % (c, list(e)))
        suffix = " + ..." if len(self.terms) > 8 else ""
        return "LaurentPoly(%d, %s%s)" % (self.n, " + ".join(parts), suffix)


def weyl_denominator(n: int) -> LaurentPoly:
    """Delta(x) = prod_{i<j} (x_i - x_j)."""
    out = LaurentPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (LaurentPoly.variable(n, i) - LaurentPoly.variable(n, j))
    return out
