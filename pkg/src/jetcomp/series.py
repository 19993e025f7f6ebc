"""Sparse multivariate polynomials and truncated power series over Q.

``Polynomial`` is an exact sparse polynomial with no truncation.
``TruncatedSeries`` is a power series taken modulo ``(y)^(p+1)``: every
stored exponent has total degree at most ``p`` and products drop the rest.
Both keep their terms sorted by the exponent order of :mod:`jetcomp.monomials`
so the initial monomial is the first stored term.

Coefficients are :class:`fractions.Fraction`; nothing in here touches floats.
"""

from fractions import Fraction
from numbers import Rational

from . import monomials as mono
from .errors import DimensionError, PreconditionError

__all__ = [
    "Polynomial",
    "TruncatedSeries",
    "add",
    "compose",
    "format_point",
    "format_rational",
    "format_series",
    "initial_exponent",
    "initial_monomial",
    "mul",
    "parse_point",
    "parse_rational",
    "parse_series",
    "recentered_variables",
    "scale",
    "substitute",
]


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Exact sparse polynomial in ``n`` variables."""

    __slots__ = ("_keys", "_terms", "n")

    def __init__(self, n, terms=()):
        if n < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.n = n
        items = terms.items() if hasattr(terms, "items") else terms
        clean = {}
        for a, c in items:
            a = tuple(int(x) for x in a)
            if len(a) != n:
                raise DimensionError(f"exponent {a} has length {len(a)}, expected {n}")
            if min(a) < 0:
                raise ValueError(f"negative exponent {a}")
            self._admit(a)
            c = _as_fraction(c)
            if c:
                clean[a] = clean.get(a, 0) + c
                if not clean[a]:
                    del clean[a]
        self._set_terms(clean)

    def _admit(self, a):
        pass

    def _set_terms(self, terms):
        self._terms = terms
        self._keys = sorted(terms, key=mono.order_key)

    def _new(self, terms):
        """Same kind and parameters as ``self``, with canonical ``terms``."""
        out = object.__new__(type(self))
        out.n = self.n
        out._copy_params(self)
        out._set_terms({a: c for a, c in terms.items() if c})
        return out

    def _copy_params(self, other):
        pass

    def _params(self):
        return (type(self), self.n)

    def _check(self, other):
        if self._params() != other._params():
            raise DimensionError(
                f"incompatible operands: {self._describe()} vs {other._describe()}"
            )

    def _describe(self):
        return f"{type(self).__name__}(n={self.n})"

    # construction helpers

    @classmethod
    def constant(cls, n, c, **kw):
        return cls(n, {mono.zero(n): c}, **kw)

    @classmethod
    def variable(cls, n, i, **kw):
        return cls(n, {mono.unit(n, i): 1}, **kw)

    @classmethod
    def monomial(cls, exponent, c=1, **kw):
        return cls(len(exponent), {tuple(exponent): c}, **kw)

    def _constant(self, c):
        return self._new({mono.zero(self.n): _as_fraction(c)} if c else {})

    # read access

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return [(a, self._terms[a]) for a in self._keys]

    def coeff(self, a):
        return self._terms.get(tuple(a), Fraction(0))

    def support(self):
        return list(self._keys)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._keys)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self):
        """Largest total degree in the support; -1 for the zero polynomial."""
        return max((sum(a) for a in self._terms), default=-1)

    def constant_term(self):
        return self.coeff(mono.zero(self.n))

    def initial_exponent(self):
        """Minimal exponent of the support, or None for zero."""
        return self._keys[0] if self._keys else None

    def initial_monomial(self):
        """(coefficient, exponent) of the initial term, or None for zero."""
        if not self._keys:
            return None
        a = self._keys[0]
        return self._terms[a], a

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._params() == other._params() and self._terms == other._terms

    def __hash__(self):
        return hash((self._params(), frozenset(self._terms.items())))

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Rational)):
            return self._constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _as_fraction(c)
        return self._new({a: c * v for a, v in self._terms.items()})

    def _mul_terms(self, other):
        out = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                ab = tuple(x + y for x, y in zip(a, b))
                out[ab] = out.get(ab, 0) + ca * cb
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return self._new(self._mul_terms(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = self._constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # calculus and evaluation

    def diff(self, i):
        """Partial derivative in variable ``i`` (0-based)."""
        out = {}
        for a, c in self._terms.items():
            if a[i]:
                b = a[:i] + (a[i] - 1,) + a[i + 1:]
                out[b] = c * a[i]
        return self._new(out)

    def evaluate(self, point):
        if len(point) != self.n:
            raise DimensionError(f"point of length {len(point)}, expected {self.n}")
        point = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for a, c in self._terms.items():
            term = c
            for v, e in zip(point, a):
                if e:
                    term *= v ** e
            total += term
        return total

    def partial_evaluate(self, values):
        """Fix the leading ``len(values)`` variables; return a Polynomial in the rest."""
        k = len(values)
        if not 0 < k < self.n:
            raise DimensionError("must fix at least one and leave at least one variable")
        values = [_as_fraction(v) for v in values]
        out = {}
        for a, c in self._terms.items():
            term = c
            for v, e in zip(values, a[:k]):
                if e:
                    term *= v ** e
            rest = a[k:]
            out[rest] = out.get(rest, 0) + term
        return Polynomial(self.n - k, out)

    def project(self, l):
        """Drop all terms of total degree above ``l``."""
        return self._new({a: c for a, c in self._terms.items() if sum(a) <= l})

    def filter_degree(self, variables, max_degree):
        """Drop terms whose degree in the given variables exceeds ``max_degree``."""
        idx = list(variables)
        return self._new({
            a: c for a, c in self._terms.items() if sum(a[i] for i in idx) <= max_degree
        })

    def truncate(self, p):
        """The class of this polynomial modulo ``(y)^(p+1)``."""
        return TruncatedSeries(
            self.n, p, {a: c for a, c in self._terms.items() if sum(a) <= p}
        )

    def as_polynomial(self):
        return Polynomial(self.n, self._terms)

    def to_string(self, names=None):
        if names is None:
            names = [f"y{i + 1}" for i in range(self.n)] if self.n > 1 else ["y"]
        if not self._terms:
            return "0"
        parts = []
        for a, c in self.items():
            mon = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(a) if e
            )
            if not mon:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}*{mon}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self.to_string()})"


class TruncatedSeries(Polynomial):
    """A power series in ``n`` variables modulo ``(y)^(p+1)``.

    Building a series with a term of degree above ``p`` is an error: the
    truncation is part of the value and is never applied silently on input.
    """

    __slots__ = ("p",)

    def __init__(self, n, p, terms=()):
        if p < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.p = p
        super().__init__(n, terms)

    @classmethod
    def constant(cls, n, p, c):
        return cls(n, p, {mono.zero(n): c})

    @classmethod
    def variable(cls, n, p, i):
        return cls(n, p, {mono.unit(n, i): 1})

    @classmethod
    def monomial(cls, exponent, p, c=1):
        return cls(len(exponent), p, {tuple(exponent): c})

    @classmethod
    def zero(cls, n, p):
        return cls(n, p)

    def _admit(self, a):
        if sum(a) > self.p:
            raise PreconditionError(
                f"term {a} has degree {sum(a)} above the truncation degree {self.p}"
            )

    def _copy_params(self, other):
        self.p = other.p

    def _params(self):
        return (TruncatedSeries, self.n, self.p)

    def _describe(self):
        return f"TruncatedSeries(n={self.n}, p={self.p})"

    def _new(self, terms):
        p = self.p
        return super()._new({a: c for a, c in terms.items() if sum(a) <= p})

    def _mul_terms(self, other):
        p = self.p
        mine = [(a, self._terms[a], sum(a)) for a in self._keys]
        theirs = [(b, other._terms[b], sum(b)) for b in other._keys]
        out = {}
        for a, ca, da in mine:
            room = p - da
            if room < 0:
                break
            for b, cb, db in theirs:
                if db > room:
                    break
                ab = tuple(x + y for x, y in zip(a, b))
                out[ab] = out.get(ab, 0) + ca * cb
        return out

    def retruncate(self, p):
        """Explicitly change the truncation degree (dropping terms if lowering)."""
        return TruncatedSeries(self.n, p, {a: c for a, c in self._terms.items() if sum(a) <= p})

    def project(self, l):
        """Coefficientwise truncation at degree ``l``, returned at precision ``l``."""
        if l > self.p:
            raise PreconditionError(f"cannot project to degree {l} above p={self.p}")
        return self.retruncate(l)

    def __repr__(self):
        return f"TruncatedSeries(n={self.n}, p={self.p}, {self.to_string()})"


# functional spellings


def add(f, g):
    return f + g


def scale(c, f):
    return f.scale(c)


def mul(f, g):
    return f * g


def initial_exponent(f):
    return f.initial_exponent()


def initial_monomial(f):
    return f.initial_monomial()


def recentered_variables(point, p):
    """The series c_i + y_i for a point c, at precision p (just c_i when p = 0)."""
    n = len(point)
    if p == 0:
        return [TruncatedSeries.constant(n, 0, c) for c in point]
    return [TruncatedSeries(n, p, {mono.zero(n): c, mono.unit(n, i): 1}) for i, c in enumerate(point)]


def compose(w, subs):
    """``w(subs[0], ..., subs[n-1])`` for a polynomial ``w``.

    The substitutes may carry constant terms: ``w`` is a finite polynomial so
    the composition is exact in whatever ring the substitutes live in.
    """
    if len(subs) != w.n:
        raise DimensionError(f"{len(subs)} substitutes for {w.n} variables")
    if not subs:
        raise DimensionError("nothing to substitute")
    first = subs[0]
    for s in subs[1:]:
        first._check(s)
    one = first._constant(1)
    # powers[i][k] = subs[i]**k, grown on demand
    powers = [[one, s] for s in subs]

    def power(i, k):
        row = powers[i]
        while len(row) <= k:
            row.append(row[-1] * subs[i])
        return row[k]

    # monomials reached from a smaller one by a single factor
    cache = {mono.zero(w.n): one}

    def monomial(a):
        if a in cache:
            return cache[a]
        j = max(i for i, e in enumerate(a) if e)
        prev = a[:j] + (0,) + a[j + 1:]
        val = monomial(prev) * power(j, a[j])
        cache[a] = val
        return val

    total = first._constant(0)
    for a, c in w.items():
        total = total + monomial(a).scale(c)
    return total


def substitute(w, subs, p_out):
    """``w(subs) mod (x)^(p_out+1)`` for substitutes without constant term.

    ``w`` may be a series or a polynomial in ``n`` variables; ``subs`` are
    ``n`` truncated series in a common set of ``m`` variables, each with
    truncation degree at least ``p_out`` and zero constant term.
    """
    if len(subs) != w.n:
        raise DimensionError(f"{len(subs)} substitutes for {w.n} variables")
    m = subs[0].n
    cut = []
    for i, s in enumerate(subs):
        if s.n != m:
            raise DimensionError("substitutes live in different variable counts")
        if isinstance(s, TruncatedSeries) and s.p < p_out:
            raise PreconditionError(
                f"substitute {i} is only known to degree {s.p} < {p_out}"
            )
        if s.constant_term():
            raise PreconditionError(
                f"substitute {i} has nonzero constant term {s.constant_term()}"
            )
        cut.append(TruncatedSeries(m, p_out, {a: c for a, c in s.terms.items() if sum(a) <= p_out}))
    # terms of w above degree p_out land in (x)^(p_out+1)
    low = Polynomial(w.n, {a: c for a, c in w.terms.items() if sum(a) <= p_out}) if w else None
    if low is None or low.is_zero():
        return TruncatedSeries(m, p_out)
    return compose(low, cut)


# text format: one "num/den (a1,...,an)" line per term, ascending


def format_rational(c):
    c = _as_fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text):
    s = text.strip()
    num, sep, den = s.partition("/")
    if not sep:
        raise ValueError(f"rational must be written num/den: {text!r}")
    try:
        num_i, den_i = int(num), int(den)
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if den_i <= 0:
        raise ValueError(f"denominator must be positive: {text!r}")
    return Fraction(num_i, den_i)


def format_series(f):
    return "\n".join(f"{format_rational(c)} {mono.format_exponent(a)}" for a, c in f.items())


def parse_term(line):
    s = line.strip()
    cut = s.find("(")
    if cut < 0:
        raise ValueError(f"term line needs 'num/den (a1,...,an)': {line!r}")
    return mono.parse_exponent(s[cut:]), parse_rational(s[:cut])


def parse_series(text, n, p=None):
    """Inverse of :func:`format_series`; ``p=None`` yields a Polynomial."""
    terms = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        a, c = parse_term(line)
        if a in terms:
            raise ValueError(f"exponent {a} listed twice")
        terms[a] = c
    if p is None:
        return Polynomial(n, terms)
    return TruncatedSeries(n, p, terms)


def format_point(point):
    return "(" + ",".join(format_rational(c) for c in point) + ")"


def parse_point(text):
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"point must be a parenthesized tuple: {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValueError("empty point")
    return tuple(parse_rational(part) for part in body.split(","))
