"""Diagrams of initial exponents, standard bases and normal forms.

Ideals containing ``(y)^(p+1)`` are stored by their degree-<=p part only:
the row-reduced span of their elements as vectors of coefficients indexed by
the exponents of degree <= p in ascending order.  With that column order the
pivot of each reduced row is the initial exponent of the row, so the diagram
can be read off the pivots.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import zip_longest

from . import monomials as mono
from .division import divide
from .errors import DimensionError, PreconditionError
from .ratlinalg import rank, rref
from .series import TruncatedSeries

__all__ = [
    "BasisElement",
    "Diagram",
    "TruncatedIdeal",
    "complement_basis",
    "diagram_cmp",
    "diagram_of",
    "ideal_from_generators",
    "normal_form",
    "span",
    "standard_basis",
]


def _minimal(exponents):
    """Elements not divisible by another element of the list (ascending input)."""
    out = []
    for a in exponents:
        if not any(mono.divides(v, a) for v in out):
            out.append(a)
    return out


@dataclass(frozen=True)
class Diagram:
    """A subset of N^n stable under adding N^n, stored by its vertices."""

    n: int
    vertices: tuple

    def __post_init__(self):
        verts = sorted({tuple(v) for v in self.vertices}, key=mono.order_key)
        for v in verts:
            if len(v) != self.n:
                raise DimensionError(f"vertex {v} does not have length {self.n}")
        for i, v in enumerate(verts):
            for w in verts[:i]:
                if mono.divides(w, v):
                    raise ValueError(f"vertex {v} is divisible by vertex {w}")
        object.__setattr__(self, "vertices", tuple(verts))

    def __contains__(self, beta):
        return any(mono.divides(v, tuple(beta)) for v in self.vertices)

    def complement(self, p):
        return complement_basis(self, p)


@dataclass(frozen=True)
class BasisElement:
    """Standard-basis element at ``vertex``.

    ``series`` is the element modulo ``(y)^(p+1)``.  For a vertex of degree
    p+1 the element is the bare monomial ``y^vertex``, which vanishes at
    precision p; ``is_tail`` flags that case.
    """

    vertex: tuple
    series: TruncatedSeries

    @property
    def is_tail(self):
        return sum(self.vertex) > self.series.p


class TruncatedIdeal:
    """Row-reduced span of degree-<=p jets, optionally known to contain (y)^(p+1).

    ``basis`` holds one series per pivot, monic at its pivot exponent, with
    every other pivot coefficient zero; it is sorted by pivot.
    """

    def __init__(self, n, p, basis, contains_mp1):
        self.n = n
        self.p = p
        self.basis = tuple(basis)
        self.contains_mp1 = bool(contains_mp1)
        self.pivots = tuple(b.initial_exponent() for b in self.basis)

    @cached_property
    def columns(self):
        return mono.enumerate_upto(self.n, self.p)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, TruncatedIdeal):
            return NotImplemented
        return (self.n, self.p, self.basis) == (other.n, other.p, other.basis)

    def __hash__(self):
        return hash((self.n, self.p, self.basis))

    def __repr__(self):
        return (
            f"TruncatedIdeal(n={self.n}, p={self.p}, dim={self.dim}, "
            f"pivots={list(self.pivots)}, contains_mp1={self.contains_mp1})"
        )

    def reduce(self, w):
        """Subtract basis multiples until no pivot coefficient is left."""
        if (w.n, w.p) != (self.n, self.p):
            raise DimensionError(f"series with (n,p)=({w.n},{w.p}) vs ideal ({self.n},{self.p})")
        out = w
        for b, a in zip(self.basis, self.pivots):
            c = out.coeff(a)
            if c:
                out = out - b.scale(c)
        return out

    def __contains__(self, w):
        return self.reduce(w).is_zero()

    def is_subspace_of(self, other):
        if (self.n, self.p) != (other.n, other.p):
            raise DimensionError("spans over different jet spaces")
        return all(b in other for b in self.basis)

    def vectors(self):
        cols = self.columns
        return [[b.coeff(a) for a in cols] for b in self.basis]


def span(series, n, p, contains_mp1=False):
    """Row-reduced span of the given degree-<=p series."""
    cols = mono.enumerate_upto(n, p)
    rows = []
    for s in series:
        if (s.n, s.p) != (n, p):
            raise DimensionError(f"series with (n,p)=({s.n},{s.p}), expected ({n},{p})")
        if s:
            rows.append([s.coeff(a) for a in cols])
    if not rows:
        return TruncatedIdeal(n, p, (), contains_mp1)
    red, pivots = rref(rows)
    basis = [
        TruncatedSeries(n, p, {cols[j]: v for j, v in enumerate(red.rows[i]) if v})
        for i in range(len(pivots))
    ]
    return TruncatedIdeal(n, p, basis, contains_mp1)


def ideal_from_generators(generators, n, p):
    """The ideal generated by ``generators`` plus ``(y)^(p+1)``, stored at degree <= p."""
    products = []
    shifts = mono.enumerate_upto(n, p)
    for f in generators:
        if (f.n, f.p) != (n, p):
            raise DimensionError(f"generator with (n,p)=({f.n},{f.p}), expected ({n},{p})")
        if f.is_zero():
            continue
        low = sum(f.initial_exponent())
        for g in shifts:
            if sum(g) + low > p:
                break
            products.append(TruncatedSeries.monomial(g, p) * f)
    return span(products, n, p, contains_mp1=True)


def _require_mp1(ideal):
    if not ideal.contains_mp1:
        raise PreconditionError(
            "the diagram is only determined for ideals known to contain (y)^(p+1)"
        )


def diagram_of(ideal):
    """Vertices of the diagram of initial exponents of ``ideal``."""
    _require_mp1(ideal)
    low = _minimal(sorted(ideal.pivots, key=mono.order_key))
    top = [b for b in mono.enumerate_degree(ideal.n, ideal.p + 1)
           if not any(mono.divides(v, b) for v in low)]
    return Diagram(ideal.n, tuple(low) + tuple(top))


def standard_basis(ideal):
    """One monic element per vertex with all other support outside the diagram."""
    diagram = diagram_of(ideal)
    by_pivot = dict(zip(ideal.pivots, ideal.basis))
    out = []
    for v in diagram.vertices:
        if sum(v) <= ideal.p:
            out.append(BasisElement(v, by_pivot[v]))
        else:
            out.append(BasisElement(v, TruncatedSeries.zero(ideal.n, ideal.p)))
    return out


def complement_basis(diagram, p):
    """Exponents of degree <= p outside the diagram, ascending."""
    return [b for b in mono.enumerate_upto(diagram.n, p) if b not in diagram]


def diagram_cmp(d1, d2):
    """Compare vertex sequences lexicographically, missing entries acting as infinity."""
    if d1.n != d2.n:
        raise DimensionError("diagrams in different dimensions")
    for a, b in zip_longest(d1.vertices, d2.vertices):
        if a == b:
            continue
        if a is None:
            return 1
        if b is None:
            return -1
        return mono.cmp(a, b)
    return 0


def normal_form(w, ideal):
    """Remainder of ``w`` on division by the standard basis of ``ideal``."""
    _require_mp1(ideal)
    if (w.n, w.p) != (ideal.n, ideal.p):
        raise DimensionError(f"series with (n,p)=({w.n},{w.p}) vs ideal ({ideal.n},{ideal.p})")
    divisors = [e.series for e in standard_basis(ideal) if not e.is_tail]
    return divide(w, divisors).remainder


def span_dimension(ideal):
    return rank(ideal.vectors()) if ideal.basis else 0
