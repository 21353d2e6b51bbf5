"""Scalar arithmetic shared by the exact and numeric modes.

Exact scalars are ``gmpy2.mpq`` big rationals; numeric scalars are Python
``complex``.  All core routines are generic over the two (they only use
``+ - * /`` and truthiness of zero), so a single code path serves both modes.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import ConfigError

ZERO = mpq(0)
ONE = mpq(1)


def rat(a, b=None):
    """Build an exact rational; accepts ints, "num/den" strings, mpq."""
    if b is not None:
        return mpq(a, b)
    if isinstance(a, str):
        return mpq(a)
    return mpq(a)


def is_exact(v) -> bool:
    return isinstance(v, (type(ONE), int))


def format_rational(v) -> str:
    """Canonical "num/den" with positive denominator (den kept even if 1)."""
    v = mpq(v)
    return "%d/%d" % (v.numerator, v.denominator)


def parse_scalar(obj):
    """Inverse of :func:`dump_scalar`."""
    if isinstance(obj, str):
        return mpq(obj)
    if isinstance(obj, int):
        return mpq(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(obj[0], obj[1])
    raise ConfigError("cannot parse scalar %r" % (obj,))


def dump_scalar(v):
    """JSON form: exact -> "num/den" string, numeric -> [re, im]."""
    if is_exact(v):
        return format_rational(v)
    v = complex(v)
    return [v.real, v.imag]


def to_complex(v) -> complex:
    return complex(v)


def inv(v):
    """Multiplicative inverse that keeps ints exact (1/2 -> mpq, not float)."""
    if isinstance(v, int):
        return mpq(1, v)
    return 1 / v


def pochhammer(a, q, k: int):
    """Finite q-shifted factorial (a;q)_k = prod_{i<k} (1 - a q^i)."""
    if k < 0:
        raise ConfigError("pochhammer needs k >= 0")
    out = ONE if (is_exact(a) and is_exact(q)) else 1.0 + 0j
    term = a
    for _ in range(k):
        out = out * (1 - term)
        term = term * q
    return out


def qint_powers(q, bound: int):
    """All powers q^m for m in [-bound, bound] as a dict m -> value."""
    out = {0: ONE if is_exact(q) else 1.0 + 0j}
    pos = out[0]
    neg = out[0]
    for m in range(1, bound + 1):
        pos = pos * q
        neg = neg / q
        out[m] = pos
        out[-m] = neg
    return out
