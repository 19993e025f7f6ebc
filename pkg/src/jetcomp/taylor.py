"""Taylor fields of polynomial maps and the matrix of the relation system.

A polynomial map phi: Q^m -> Q^n is stored as n Polynomials in m variables.
Its Taylor field at b is phi(b + x) truncated at degree p in the increment x;
the reduced field drops the constant phi(b).
"""

from dataclasses import dataclass
from fractions import Fraction

from . import monomials as mono
from .errors import DimensionError
from .ratlinalg import RationalMatrix
from .series import (
    Polynomial,
    TruncatedSeries,
    compose,
    recentered_variables,
    substitute,
)

__all__ = [
    "PolyMap",
    "as_point",
    "l_matrix",
    "pullback_field",
    "pullback_line_residual",
    "reduced_taylor_field",
    "taylor_field",
]


def as_point(coords):
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class PolyMap:
    """Polynomial map with rational coefficients, m source and n target variables."""

    m: int
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a map needs at least one component")
        for c in comps:
            if not isinstance(c, Polynomial) or c.n != self.m:
                raise DimensionError(f"component {c!r} is not a polynomial in {self.m} variables")
        object.__setattr__(self, "components", tuple(c.as_polynomial() for c in comps))

    @classmethod
    def from_terms(cls, m, components):
        """Build from a list of ``{exponent: coefficient}`` dicts."""
        return cls(m, tuple(Polynomial(m, t) for t in components))

    @property
    def n(self):
        return len(self.components)

    @property
    def degree(self):
        return max(c.total_degree() for c in self.components)

    def __call__(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def jacobian_apply(self, point, v):
        """d_b phi (v)."""
        return tuple(
            sum((c.diff(i).evaluate(point) * v[i] for i in range(self.m)), Fraction(0))
            for c in self.components
        )


def _check_point(phi, b):
    if len(b) != phi.m:
        raise DimensionError(f"point of length {len(b)} for a map on Q^{phi.m}")


def taylor_field(phi, b, p):
    """phi(b + x) mod (x)^(p+1), one series per component."""
    b = as_point(b)
    _check_point(phi, b)
    shifted = recentered_variables(b, p)
    return [compose(c, shifted) for c in phi.components]


def reduced_taylor_field(phi, b, p):
    """Taylor field without its constant terms."""
    return [t - t.constant_term() for t in taylor_field(phi, b, p)]


def l_matrix(phi, b, p, reduced=None):
    """Matrix of the relation equations at ``b``.

    Entry (beta, alpha) is ``beta!`` times the coefficient of ``x^beta`` in the
    product of powers ``prod_i T_i^alpha_i`` of the reduced Taylor field, i.e.
    the beta-th derivative of that product at x = 0.  Rows run over
    ``|beta| <= p`` in N^m, columns over ``|alpha| <= p`` in N^n, both ascending.
    """
    if reduced is None:
        reduced = reduced_taylor_field(phi, b, p)
    rows_idx = mono.enumerate_upto(phi.m, p)
    cols_idx = mono.enumerate_upto(phi.n, p)
    powers = {mono.zero(phi.n): TruncatedSeries.constant(phi.m, p, 1)}
    for a in cols_idx[1:]:
        j = max(i for i, e in enumerate(a) if e)
        prev = a[:j] + (a[j] - 1,) + a[j + 1:]
        powers[a] = powers[prev] * reduced[j]
    scale = [mono.exp_factorial(beta) for beta in rows_idx]
    rows = [[powers[a].coeff(beta) * s for a in cols_idx] for beta, s in zip(rows_idx, scale)]
    return RationalMatrix(rows, len(cols_idx), row_labels=rows_idx, col_labels=cols_idx)


def pullback_field(field, phi, b, p):
    """``F(phi(b), T~phi(b, x)) mod (x)^(p+1)``.

    ``field`` is a Polynomial in 2n variables: the first n are the base point
    a, the last n the increment y.
    """
    b = as_point(b)
    _check_point(phi, b)
    if field.n != 2 * phi.n:
        raise DimensionError(f"field must have {2 * phi.n} variables (a then y), has {field.n}")
    in_y = field.partial_evaluate(phi(b))
    return substitute(in_y, reduced_taylor_field(phi, b, p), p)


def pullback_line_residual(field, phi, b0, v, p):
    """Residual of the pullback identity along the line b(t) = b0 + t v.

    Works in polynomials in (t, x_1..x_m).  With G(t, x) the pullback of the
    field through phi at b(t) and u = d phi(v) along the line, returns

        d/dt G^{p-1} - D_{x,v} G - [D_{a,u} F^{p-1} - D_{y,u} F](phi(b(t)), T~phi(b(t), x))

    reduced modulo (x)^p.  The identity says this is zero.
    """
    m, n = phi.m, phi.n
    if field.n != 2 * n:
        raise DimensionError(f"field must have {2 * n} variables (a then y), has {field.n}")
    b0, v = as_point(b0), as_point(v)
    xs = list(range(1, m + 1))
    # ring of polynomials in (t, x)
    t = Polynomial.variable(m + 1, 0)
    x = [Polynomial.variable(m + 1, i) for i in xs]
    bt = [Polynomial.constant(m + 1, bi) + t.scale(vi) for bi, vi in zip(b0, v)]

    # Taylor field at b(t): phi(b(t) + x) with x-degree <= p
    shifted = [bi + xi for bi, xi in zip(bt, x)]
    tay = [compose(c, shifted).filter_degree(xs, p) for c in phi.components]
    at = [compose(c, bt) for c in phi.components]
    red = [ti - ai for ti, ai in zip(tay, at)]

    def pull(poly):
        return compose(poly, at + red).filter_degree(xs, p)

    y_idx = list(range(n, 2 * n))
    f_low = field.filter_degree(y_idx, p - 1)
    g = pull(field)
    g_low = g.filter_degree(xs, p - 1)

    lhs = g_low.diff(0) - sum((g.diff(i).scale(vi) for i, vi in zip(xs, v)), x[0].scale(0))
    # u = d phi_{b(t)}(v) = d/dt phi(b(t))
    u = [ai.diff(0) for ai in at]
    da_f = [pull(f_low.diff(j)) for j in range(n)]
    dy_f = [pull(field.diff(n + j)) for j in range(n)]
    rhs = sum((uj * (da - dy) for uj, da, dy in zip(u, da_f, dy_f)), x[0].scale(0))
    return (lhs - rhs).filter_degree(xs, p - 1)
