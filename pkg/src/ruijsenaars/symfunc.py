"""Dominant weights, dominance order, and the monomial symmetric basis.

Weights are weakly decreasing integer tuples (entries may be negative).  The
dominance order compares partial sums at equal total degree.  Symmetric
Laurent polynomials are carried around in the m-basis as dicts
weight -> coefficient.
"""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Tuple

from .errors import DimensionMismatch, NotSymmetric
from .laurent import LaurentPoly
from .scalars import dump_scalar, parse_scalar

Weight = Tuple[int, ...]


def is_dominant(w: Weight) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def partial_sums(w: Weight) -> Tuple[int, ...]:
    out = []
    s = 0
    for x in w:
        s += x
        out.append(s)
    return tuple(out)


def dominance_leq(a: Weight, b: Weight) -> bool:
    """a <= b in dominance order (requires equal length and total)."""
    if len(a) != len(b):
        raise DimensionMismatch("weights of different length")
    sa = sb = 0
    for xa, xb in zip(a, b):
        sa += xa
        sb += xb
        if sa > sb:
            return False
    return sa == sb


def dominant_below(lam: Weight) -> List[Weight]:
    """All dominant weights mu <= lam, sorted so lam comes first.

    Order: descending lexicographic on partial-sum vectors, which refines
    the dominance order (deterministic across runs).
    """
    n = len(lam)
    ps = partial_sums(lam)
    total = ps[-1]
    out: List[Weight] = []

    def rec(prefix: List[int], s: int):
        i = len(prefix)
        if i == n - 1:
            last = total - s
            if last <= prefix[-1]:
                out.append(tuple(prefix + [last]))
            return
        rem = total - s
        hi = ps[i] - s
        if prefix:
            hi = min(hi, prefix[-1])
        # remaining n-i entries are <= the next one, so next >= ceil(rem/(n-i))
        lo = -(-rem // (n - i))
        for v in range(hi, lo - 1, -1):
            rec(prefix + [v], s + v)

    if n == 1:
        return [lam]
    rec([], 0)
    out.sort(key=partial_sums, reverse=True)
    return out


def weight_orbit(w: Weight) -> List[Weight]:
    """Distinct permutations of w."""
    return sorted(set(itertools.permutations(w)), reverse=True)


class MBasis:
    """A symmetric Laurent polynomial in the monomial basis."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Dict[Weight, object] = None):
        self.n = n
        if coeffs:
            self.coeffs = {w: c for w, c in coeffs.items() if c}
        else:
            self.coeffs = {}

    @classmethod
    def monomial(cls, w: Weight, c=1) -> "MBasis":
        return cls(len(w), {tuple(w): c})

    def __add__(self, other: "MBasis") -> "MBasis":
        t = dict(self.coeffs)
        for w, c in other.coeffs.items():
            nc = t.get(w, 0) + c
            if nc:
                t[w] = nc
            else:
                t.pop(w, None)
        out = MBasis(self.n)
        out.coeffs = t
        return out

    def __sub__(self, other: "MBasis") -> "MBasis":
        return self + other.scale(-1)

    def scale(self, c) -> "MBasis":
        if not c:
            return MBasis(self.n)
        out = MBasis(self.n)
        out.coeffs = {w: c * v for w, v in self.coeffs.items()}
        return out

    def coeff(self, w: Weight):
        return self.coeffs.get(tuple(w), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MBasis)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def support(self) -> List[Weight]:
        return sorted(self.coeffs, key=partial_sums, reverse=True)

    def shift_all(self, k: int) -> "MBasis":
        """Multiply by (x_1...x_n)^k, i.e. add k to every weight entry."""
        out = MBasis(self.n)
        out.coeffs = {
            tuple(x + k for x in w): c for w, c in self.coeffs.items()
        }
        return out

    def to_laurent(self) -> LaurentPoly:
        t = {}
        for w, c in self.coeffs.items():
            for e in weight_orbit(w):
                t[e] = c
        return LaurentPoly(self.n, t)

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "MBasis":
        """Regroup a symmetric Laurent polynomial; raises NotSymmetric."""
        coeffs: Dict[Weight, object] = {}
        for e, c in f.terms.items():
            w = tuple(sorted(e, reverse=True))
            prev = coeffs.get(w)
            if prev is None:
                coeffs[w] = c
            elif prev != c:
                raise NotSymmetric("orbit of %s has unequal coefficients" % (w,))
        # every orbit member must actually be present with the same coefficient
        for w in coeffs:
            for e in weight_orbit(w):
                if f.terms.get(e, 0) != coeffs[w]:
                    raise NotSymmetric("orbit of %s is incomplete" % (w,))
        return cls(f.n, coeffs)

    def evaluate(self, xs):
        return self.to_laurent().evaluate(xs)

    def to_json(self):
        items = sorted(self.coeffs.items(), key=lambda wc: partial_sums(wc[0]),
                       reverse=True)
        return [{"weight": list(w), "coeff": dump_scalar(c)} for w, c in items]

    @classmethod
    def from_json(cls, n: int, data) -> "MBasis":
        return cls(n, {tuple(i["weight"]): parse_scalar(i["coeff"]) for i in data})

    def __repr__(self):
        return "MBasis(%d, %r)" % (self.n, self.coeffs)


def elementary_symmetric(r: int, values: Iterable) -> object:
    """e_r of a finite list of scalars."""
    vals = list(values)
    if r < 0 or r > len(vals):
        return 0
    # column of the generating product prod (1 + v z), coefficient of z^r
    coeffs = [1] + [0] * r
    for v in vals:
        for j in range(min(r, len(coeffs) - 1), 0, -1):
            coeffs[j] = coeffs[j] + coeffs[j - 1] * v
    return coeffs[r]
