"""Finite-sample checks on fields of Taylor polynomials.

A jet field assigns to each point a of a finite set A in Q^n a polynomial
F(a, y) of degree <= p in the increment y.  Whitney's condition is a limit
statement and cannot be decided from finitely many points; the functions here
compute the exact defect quotients on the sample and compare them against a
caller-supplied tolerance.  Distances enter only through |a-b|^2, and any
inequality involving square roots is decided exactly (see ``SurdSum``).
"""

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd, isqrt

from . import monomials as mono
from .errors import DimensionError, PreconditionError
from .series import (
    Polynomial,
    TruncatedSeries,
    compose,
    format_point,
    format_series,
    parse_point,
    parse_series,
    recentered_variables,
)
from .taylor import as_point

__all__ = [
    "DefectEntry",
    "DefectTable",
    "GlueReport",
    "JetField",
    "Prop32Result",
    "Remark33Report",
    "SurdSum",
    "field_from_polynomial",
    "format_field",
    "glue_truncation_check",
    "parse_field",
    "prop32_check",
    "prop32_check_parametrized",
    "remark33_check",
    "restrict_field",
    "truncate_field",
    "whitney_defect",
]


class JetField:
    """Polynomials F(a, .) of degree <= p in n variables, one per sample point a."""

    def __init__(self, n, p, entries):
        self.n = n
        self.p = p
        clean = {}
        for a, poly in dict(entries).items():
            a = as_point(a)
            if len(a) != n:
                raise DimensionError(f"point {a} does not have length {n}")
            if not isinstance(poly, TruncatedSeries) or (poly.n, poly.p) != (n, p):
                raise DimensionError(f"value at {a} must be a series with (n,p)=({n},{p})")
            clean[a] = poly
        self.entries = clean

    @property
    def points(self):
        return list(self.entries)

    def __getitem__(self, a):
        return self.entries[as_point(a)]

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, JetField):
            return NotImplemented
        return (self.n, self.p, self.entries) == (other.n, other.p, other.entries)

    def __repr__(self):
        return f"JetField(n={self.n}, p={self.p}, points={len(self.entries)})"

    def derivative(self, a, beta):
        """F_beta(a): the beta-th y-derivative of F(a, .) at y = 0."""
        return self[a].coeff(beta) * mono.exp_factorial(beta)


def field_from_polynomial(poly, points, p):
    """Jet field of a global polynomial: F(a, y) = T^p poly(a, y)."""
    entries = {}
    for a in points:
        a = as_point(a)
        entries[a] = compose(poly, recentered_variables(a, p))
    return JetField(poly.n, p, entries)


def truncate_field(jf, k):
    """F^k: keep the terms of degree <= k at every point."""
    if k > jf.p:
        raise PreconditionError(f"cannot truncate a degree-{jf.p} field at k={k}")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    return JetField(jf.n, k, {a: s.retruncate(k) for a, s in jf.entries.items()})


def restrict_field(jf, points):
    pts = [as_point(a) for a in points]
    missing = [a for a in pts if a not in jf.entries]
    if missing:
        raise PreconditionError(f"points not in the field: {missing}")
    return JetField(jf.n, jf.p, {a: jf.entries[a] for a in pts})


def _y_derivative(s, beta):
    out = s
    for i, e in enumerate(beta):
        for _ in range(e):
            out = out.diff(i)
    return out


def _dist_sq(a, b):
    return sum(((x - y) ** 2 for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class DefectEntry:
    """One quotient |numerator| / |a-b|^power, kept exact through its square."""

    a: tuple
    b: tuple
    beta: tuple
    numerator: Fraction
    dist_sq: Fraction
    power: int

    @property
    def quotient_sq(self):
        return self.numerator ** 2 / self.dist_sq ** self.power

    @property
    def quotient(self):
        """The quotient itself when it is rational for structural reasons, else None."""
        if self.power % 2 == 0:
            return abs(self.numerator) / self.dist_sq ** (self.power // 2)
        return _exact_sqrt(self.quotient_sq)


@dataclass(frozen=True)
class DefectTable:
    entries: tuple
    skipped: tuple = ()

    @property
    def max_sq(self):
        return max((e.quotient_sq for e in self.entries), default=Fraction(0))

    @property
    def worst(self):
        return max(self.entries, key=lambda e: e.quotient_sq, default=None)

    def passes(self, tau):
        """Every quotient <= tau, decided on squares."""
        tau = Fraction(tau)
        if tau < 0:
            raise ValueError("tolerance must be nonnegative")
        return self.max_sq <= tau * tau

    def is_zero(self):
        return all(e.numerator == 0 for e in self.entries)


def whitney_defect(jf, pairs=None):
    """Exact table of |d^beta F(a,0) - d^beta F(b,a-b)| / |a-b|^(p-|beta|).

    ``pairs`` defaults to every ordered pair of distinct sample points.
    Coincident pairs are skipped with a warning.
    """
    if pairs is None:
        pairs = list(permutations(jf.points, 2))
    betas = mono.enumerate_upto(jf.n, jf.p)
    entries, skipped = [], []
    for a, b in pairs:
        a, b = as_point(a), as_point(b)
        d2 = _dist_sq(a, b)
        if d2 == 0:
            warnings.warn(f"skipping coincident pair {a}", stacklevel=2)
            skipped.append((a, b))
            continue
        fa, fb = jf[a], jf[b]
        diff = tuple(x - y for x, y in zip(a, b))
        for beta in betas:
            num = (_y_derivative(fa, beta).constant_term()
                   - _y_derivative(fb, beta).evaluate(diff))
            entries.append(DefectEntry(a, b, beta, num, d2, jf.p - sum(beta)))
    return DefectTable(tuple(entries), tuple(skipped))


# exact arithmetic in Q(sqrt 2, sqrt 3, ...)


def _square_split(k):
    """Write a positive int as s * r^2 with s squarefree; return (s, r)."""
    s, r = 1, 1
    d = 2
    while d * d * d <= k:
        while k % (d * d) == 0:
            k //= d * d
            r *= d
        if k % d == 0:
            k //= d
            s *= d
        d += 1
    # what is left has at most two prime factors, all above the cube root
    t = isqrt(k)
    if t * t == k:
        r *= t
    else:
        s *= k
    return s, r


def _exact_sqrt(q):
    q = Fraction(q)
    if q < 0:
        return None
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


class SurdSum:
    """Finite sum of c_s * sqrt(s) with rational c_s and distinct squarefree s.

    Square roots of distinct squarefree integers are linearly independent
    over Q, so a value is zero exactly when all its coefficients are, and
    the sign of a nonzero value is settled by interval refinement.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {s: Fraction(c) for s, c in (terms or {}).items() if c}

    @classmethod
    def rational(cls, q):
        return cls({1: Fraction(q)})

    @classmethod
    def sqrt(cls, q):
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        if q == 0:
            return cls()
        s, r = _square_split(q.numerator * q.denominator)
        return cls({s: Fraction(r, q.denominator)})

    def __add__(self, other):
        other = _surd(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return SurdSum(out)

    __radd__ = __add__

    def __neg__(self):
        return SurdSum({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_surd(other))

    def __rsub__(self, other):
        return _surd(other) - self

    def __mul__(self, other):
        other = _surd(other)
        out = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                g = gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                out[s] = out.get(s, 0) + c1 * c2 * g
        return SurdSum(out)

    __rmul__ = __mul__

    def is_rational(self):
        return set(self.terms) <= {1}

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("value is irrational")
        return self.terms.get(1, Fraction(0))

    def sign(self):
        if not self.terms:
            return 0
        bits = 32
        while True:
            scale = 1 << bits
            lo = hi = Fraction(0)
            for s, c in self.terms.items():
                root = isqrt(s * scale * scale)
                low, high = Fraction(root, scale), Fraction(root + 1, scale)
                if root * root == s * scale * scale:
                    high = low
                if c > 0:
                    lo += c * low
                    hi += c * high
                else:
                    lo += c * high
                    hi += c * low
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            if lo == hi == 0:
                return 0
            bits *= 2

    def __eq__(self, other):
        try:
            return (self - _surd(other)).sign() == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        return (self - _surd(other)).sign() < 0

    def __le__(self, other):
        return (self - _surd(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _surd(other)).sign() > 0

    def __ge__(self, other):
        return (self - _surd(other)).sign() >= 0

    def __float__(self):
        return float(sum(float(c) * s ** 0.5 for s, c in self.terms.items()))

    def format(self):
        """Text form ``num/den + num/den*sqrt(s) + ...``; ``0/1`` for zero."""
        if not self.terms:
            return "0/1"
        parts = []
        for s, c in sorted(self.terms.items()):
            text = f"{c.numerator}/{c.denominator}"
            parts.append(text if s == 1 else f"{text}*sqrt({s})")
        return " + ".join(parts)

    def __repr__(self):
        return f"SurdSum({self.format()})"


def _surd(x):
    if isinstance(x, SurdSum):
        return x
    if isinstance(x, (int, Fraction)):
        return SurdSum.rational(x)
    raise TypeError(f"cannot combine SurdSum with {type(x).__name__}")


@dataclass(frozen=True)
class Remark33Report:
    """Both sides of |g(u) - g(v)| <= sqrt(n) |sigma| sup |dg/dy_j|.

    The sup runs over the polyline vertices only, so ``rhs`` is a sampled
    value, not a certified bound.
    """

    lhs: Fraction
    length: SurdSum
    sup: Fraction
    n: int

    @property
    def rhs(self):
        return SurdSum.sqrt(self.n) * self.length * self.sup

    def holds(self):
        return self.rhs >= self.lhs


def remark33_check(g, curve):
    """Evaluate both sides of the mean-value bound along a polyline.

    ``g`` is a Polynomial in n variables, ``curve`` a list of at least two
    points; u and v are its first and last point.
    """
    pts = [as_point(c) for c in curve]
    if len(pts) < 2:
        raise PreconditionError("the curve needs at least two points")
    for c in pts:
        if len(c) != g.n:
            raise DimensionError(f"curve point {c} does not have length {g.n}")
    lhs = abs(g.evaluate(pts[0]) - g.evaluate(pts[-1]))
    length = SurdSum()
    for c0, c1 in zip(pts, pts[1:]):
        length = length + SurdSum.sqrt(_dist_sq(c0, c1))
    grads = [g.diff(j) for j in range(g.n)]
    sup = max(abs(dg.evaluate(c)) for c in pts for dg in grads)
    return Remark33Report(lhs, length, sup, g.n)


@dataclass(frozen=True)
class Prop32Result:
    """Residual polynomials, one per curve parameter, in (parameters, y)."""

    holds: bool
    residuals: tuple
    denominator: Polynomial = None


def prop32_check_parametrized(numerator, curve, p, denominator=None):
    """Check D_{a,u} F^{p-1} = D_{y,u} F along a parametrized stratum.

    The field along the stratum a(t) (``curve``: n Polynomials in d
    parameters) is given directly as F(a(t), y) = numerator(t, y) /
    denominator(t), with ``numerator`` a Polynomial in d + n variables.
    Returns the numerators of the residuals over denominator^2; the identity
    holds iff they all vanish.
    """
    curve = list(curve)
    if not curve:
        raise DimensionError("empty parametrization")
    d, n = curve[0].n, len(curve)
    if numerator.n != d + n:
        raise DimensionError(f"field along the stratum needs {d + n} variables, has {numerator.n}")
    lift = [Polynomial(d + n, {a + mono.zero(n): c for a, c in comp.terms.items()}) for comp in curve]
    if denominator is None:
        den = Polynomial.constant(d + n, 1)
    else:
        den = Polynomial(d + n, {a + mono.zero(n): c for a, c in denominator.terms.items()})
        if den.is_zero():
            raise PreconditionError("zero denominator")
    ys = list(range(d, d + n))
    low = numerator.filter_degree(ys, p - 1)
    residuals = []
    for k in range(d):
        r = den * low.diff(k) - den.diff(k) * low
        for j in range(n):
            r = r - den * lift[j].diff(k) * numerator.diff(d + j)
        residuals.append(r)
    return Prop32Result(all(r.is_zero() for r in residuals), tuple(residuals),
                        None if denominator is None else den)


def prop32_check(field_poly, curve, p):
    """Prop32 criterion for a field given as a Polynomial in (a, y), 2n variables."""
    curve = list(curve)
    n = len(curve)
    if field_poly.n != 2 * n:
        raise DimensionError(f"field must have {2 * n} variables (a then y), has {field_poly.n}")
    d = curve[0].n
    lift = [Polynomial(d + n, {a + mono.zero(n): c for a, c in comp.terms.items()}) for comp in curve]
    ys = [Polynomial.variable(d + n, d + j) for j in range(n)]
    along = compose(field_poly, lift + ys)
    return prop32_check_parametrized(along, curve, p)


@dataclass(frozen=True)
class IdentityRow:
    """Both sides of the truncation identity for one ordered pair and one alpha."""

    u: tuple
    v: tuple
    alpha: tuple
    truncated_difference: Fraction
    full_difference: Fraction
    tail: Fraction

    @property
    def holds(self):
        return self.truncated_difference == self.full_difference + self.tail


@dataclass(frozen=True)
class GlueReport:
    k: int
    r: int
    tau: Fraction
    tau_truncated: SurdSum
    tail_sup: SurdSum
    defect_b: DefectTable
    defect_rest: DefectTable
    defect_truncated: DefectTable
    mu_b: Fraction
    mu_rest: Fraction
    identity_rows: tuple = field(repr=False)
    note: str = (
        "sample-scale check: a failure disproves the Whitney property on the sample, "
        "a pass is a necessary condition only"
    )

    @property
    def parts_pass(self):
        return self.defect_b.passes(self.tau) and self.defect_rest.passes(self.tau)

    @property
    def truncated_pass(self):
        return SurdSum.sqrt(self.defect_truncated.max_sq) <= self.tau_truncated

    @property
    def identity_holds(self):
        return all(row.holds for row in self.identity_rows)

    @property
    def passed(self):
        return self.parts_pass and self.truncated_pass


def _mu(jf, points, degree):
    top = mono.enumerate_degree(jf.n, degree)
    best = Fraction(0)
    for a, b in permutations(points, 2):
        for beta in top:
            best = max(best, abs(jf.derivative(a, beta) - jf.derivative(b, beta)))
    return best


def glue_truncation_check(jf, subset, k, r, tau, tau_truncated=None):
    """Sampled gluing check for a degree k*r field on A with a marked subset B.

    (i) the degree-kr defects on B and on A \\ B must stay <= tau;
    (ii) the degree-k defects of the truncated field on all of A must stay
    <= tau_truncated.  By default that is
    tau * max(1, diam A)^(k(r-1)) + tail_sup, where tail_sup is the largest
    tail quotient |tail| / |u-v|^(k-|alpha|) over the sample.  The first
    summand bounds the leading part of a pair whose degree-kr quotient is
    <= tau; the tail is the sum of Taylor terms of degree between k-|alpha|
    and kr-|alpha| that the truncation drops, shown row by row in
    ``identity_rows`` (truncated difference = full difference + tail).
    Pairs across B and A \\ B have no a priori bound, which is what the
    check probes.
    """
    if k < 0 or r < 1:
        raise PreconditionError("need k >= 0 and r >= 1")
    if jf.p != k * r:
        raise DimensionError(f"field has degree {jf.p}, expected k*r = {k * r}")
    tau = Fraction(tau)
    pts = jf.points
    b_pts = [as_point(b) for b in subset]
    stray = [b for b in b_pts if b not in jf.entries]
    if stray:
        raise PreconditionError(f"subset points not in the field: {stray}")
    b_set = set(b_pts)
    rest = [a for a in pts if a not in b_set]
    part_b, part_rest = restrict_field(jf, b_pts), restrict_field(jf, rest)

    truncated = truncate_field(jf, k)

    rows = []
    tail_sup = SurdSum()
    for u, v in permutations(pts, 2):
        d2 = _dist_sq(u, v)
        diff = tuple(x - y for x, y in zip(u, v))
        for alpha in mono.enumerate_upto(jf.n, k):
            trunc_d = (truncated.derivative(u, alpha)
                       - _y_derivative(truncated[v], alpha).evaluate(diff))
            full_d = jf.derivative(u, alpha) - _y_derivative(jf[v], alpha).evaluate(diff)
            tail = Fraction(0)
            for beta in mono.enumerate_upto(jf.n, k * r - sum(alpha)):
                if sum(beta) <= k - sum(alpha):
                    continue
                term = jf.derivative(v, mono.add(alpha, beta)) / mono.exp_factorial(beta)
                for x, e in zip(diff, beta):
                    term *= x ** e
                tail += term
            rows.append(IdentityRow(u, v, alpha, trunc_d, full_d, tail))
            quotient = abs(tail) * SurdSum.sqrt(1 / d2 ** (k - sum(alpha)))
            tail_sup = max(tail_sup, quotient)

    if tau_truncated is None:
        diam_sq = max((_dist_sq(a, b) for a, b in permutations(pts, 2)), default=Fraction(0))
        tau_truncated = tau * SurdSum.sqrt(max(Fraction(1), diam_sq) ** (k * (r - 1))) + tail_sup
    else:
        tau_truncated = _surd(Fraction(tau_truncated))

    return GlueReport(
        k, r, tau, tau_truncated, tail_sup,
        whitney_defect(part_b), whitney_defect(part_rest), whitney_defect(truncated),
        _mu(jf, b_pts, k * r), _mu(jf, rest, k * r), tuple(rows),
    )


# text format: header "n p", then "point (...)" blocks of series lines


def format_field(jf):
    lines = [f"{jf.n} {jf.p}"]
    for a, s in jf.entries.items():
        lines.append(f"point {format_point(a)}")
        body = format_series(s)
        if body:
            lines.append(body)
    return "\n".join(lines) + "\n"


def parse_field(text):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty field")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ValueError(f"field header must be 'n p', got {lines[0]!r}")
    n, p = int(head[0]), int(head[1])
    entries = {}
    current, body = None, []

    def flush():
        if current is not None:
            if current in entries:
                raise ValueError(f"point {current} listed twice")
            entries[current] = parse_series("\n".join(body), n, p)

    for ln in lines[1:]:
        s = ln.strip()
        if s.startswith("point"):
            flush()
            current, body = parse_point(s[len("point"):]), []
        elif current is None:
            raise ValueError(f"series line before any point: {ln!r}")
        else:
            body.append(s)
    flush()
    return JetField(n, p, entries)
