"""Exponents of N^n and the degree-then-lexicographic total order.

An exponent is a plain tuple of nonnegative ints.  Two exponents are compared
through the key ``(|a|, a_1, ..., a_n)``; the zero exponent is the minimum.
"""

from itertools import combinations
from math import comb, factorial

from .errors import DimensionError

__all__ = [
    "add",
    "cmp",
    "degree",
    "divides",
    "enumerate_degree",
    "enumerate_upto",
    "exp_factorial",
    "format_exponent",
    "order_key",
    "parse_exponent",
    "sub",
    "unit",
    "zero",
]


def _check(a, b):
    if len(a) != len(b):
        raise DimensionError(f"exponents of different length: {a} vs {b}")


def degree(a):
    return sum(a)


def order_key(a):
    """Sort key realizing the total order on exponents."""
    return (sum(a),) + tuple(a)


def cmp(a, b):
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    _check(a, b)
    ka, kb = order_key(a), order_key(b)
    return (ka > kb) - (ka < kb)


def divides(a, b):
    """True iff ``b`` lies in the cone ``a + N^n``."""
    _check(a, b)
    return all(x <= y for x, y in zip(a, b))


def add(a, b):
    _check(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    """``a - b``; only defined when ``b`` divides ``a``."""
    _check(a, b)
    out = tuple(x - y for x, y in zip(a, b))
    if min(out, default=0) < 0:
        raise ValueError(f"{b} does not divide {a}")
    return out


def zero(n):
    return (0,) * n


def unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def exp_factorial(a):
    """The multi-index factorial a! = a_1! ... a_n!."""
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def enumerate_degree(n, d):
    """All exponents of total degree exactly ``d``, ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    # stars and bars
    out = []
    for bars in combinations(range(d + n - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(d + n - 2 - prev)
        out.append(tuple(parts))
    out.sort()
    return out


def enumerate_upto(n, p):
    """All exponents with ``|a| <= p``, strictly ascending; length C(n+p, n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if p < 0:
        raise ValueError("p must be nonnegative")
    out = []
    for d in range(p + 1):
        out.extend(enumerate_degree(n, d))
    assert len(out) == comb(n + p, n)
    return out


def format_exponent(a):
    return "(" + ",".join(str(x) for x in a) + ")"


def parse_exponent(text):
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"exponent must be a parenthesized tuple: {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty exponent")
    out = []
    for part in body.split(","):
        part = part.strip()
        if not part.isdigit():
            raise ValueError(f"bad exponent entry {part!r} in {text!r}")
        out.append(int(part))
    return tuple(out)
