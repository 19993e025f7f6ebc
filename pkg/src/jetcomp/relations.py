"""Ideals of relations of a polynomial map over a finite fiber, and composite jets.

For a fiber b_1..b_q of phi over a, the relation ideal of order p is the set
of W with W(T~phi(b_v, x)) = 0 mod (x)^(p+1) for every v.  Its degree-<=p part
is the kernel of the stacked L-matrices.  Fiber points are supplied by the
caller; with a partial sample of an infinite fiber the result is a superset
of the true ideal.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from . import monomials as mono
from .diagrams import (
    TruncatedIdeal,
    complement_basis,
    diagram_of,
    normal_form,
    span,
    standard_basis,
)
from .errors import (
    DimensionError,
    InconsistentSystemError,
    NotCompositeError,
    PreconditionError,
)
from .ratlinalg import RationalMatrix, kernel_basis, rank, solve
from .series import TruncatedSeries, compose, format_point, recentered_variables
from .taylor import PolyMap, as_point, l_matrix

__all__ = [
    "FiberTuple",
    "RelationIdeal",
    "Stabilization",
    "jet_of",
    "normal_form_at",
    "project_l",
    "projected_dimensions",
    "ranks",
    "refinement_dimensions",
    "relations_ideal",
    "solve_composite",
    "solve_composite_unrestricted",
    "stabilization_degree",
    "stacked_l_matrix",
]


@dataclass(frozen=True)
class FiberTuple:
    """Distinct points with a common image ``target`` under ``phi``."""

    phi: PolyMap
    points: tuple
    target: tuple = None

    def __post_init__(self):
        pts = tuple(as_point(b) for b in self.points)
        if not pts:
            raise PreconditionError("a fiber needs at least one point")
        for b in pts:
            if len(b) != self.phi.m:
                raise DimensionError(f"fiber point {format_point(b)} does not have length {self.phi.m}")
        if len(set(pts)) != len(pts):
            dup = next(b for i, b in enumerate(pts) if b in pts[:i])
            raise PreconditionError(f"repeated fiber point {format_point(dup)}")
        target = self.phi(pts[0]) if self.target is None else as_point(self.target)
        if len(target) != self.phi.n:
            raise DimensionError(f"target {format_point(target)} does not have length {self.phi.n}")
        for b in pts:
            if self.phi(b) != target:
                raise PreconditionError(
                    f"fiber point {format_point(b)} maps to {format_point(self.phi(b))}, "
                    f"not {format_point(target)}"
                )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "target", target)

    @property
    def q(self):
        return len(self.points)


def stacked_l_matrix(fiber, p):
    """L-matrices of all fiber points stacked; rows labelled (point index, beta)."""
    mats = [l_matrix(fiber.phi, b, p) for b in fiber.points]
    rows, labels = [], []
    for nu, mat in enumerate(mats):
        rows.extend(mat.rows)
        labels.extend((nu, beta) for beta in mat.row_labels)
    return RationalMatrix(rows, mats[0].ncols, row_labels=labels, col_labels=mats[0].col_labels)


@dataclass(frozen=True)
class RelationIdeal:
    n: int
    p: int
    ideal: TruncatedIdeal
    source: FiberTuple
    system: RationalMatrix = field(repr=False, compare=False)

    @cached_property
    def diagram(self):
        return diagram_of(self.ideal)

    @cached_property
    def standard_basis(self):
        return standard_basis(self.ideal)

    @cached_property
    def delta(self):
        """Exponents of degree <= p outside the diagram."""
        return complement_basis(self.diagram, self.p)

    def __contains__(self, w):
        return w in self.ideal


def relations_ideal(fiber, p):
    if p < 1:
        raise PreconditionError("relation ideals need p >= 1")
    system = stacked_l_matrix(fiber, p)
    cols = system.col_labels
    n = fiber.phi.n
    kernel = [TruncatedSeries(n, p, {cols[j]: v for j, v in enumerate(k) if v})
              for k in kernel_basis(system)]
    ideal = span(kernel, n, p, contains_mp1=True)
    return RelationIdeal(n, p, ideal, fiber, system)


def ranks(fiber, p, l):
    """(rho0, rho1): ranks of the full system and of its columns with l < |alpha| <= p."""
    if not 1 <= l <= p:
        raise PreconditionError(f"need 1 <= l <= p, got l={l}, p={p}")
    system = stacked_l_matrix(fiber, p)
    high = [j for j, a in enumerate(system.col_labels) if sum(a) > l]
    rho0 = rank(system.rows)
    rho1 = rank(system.columns(high).rows) if high else 0
    return rho0, rho1


def projected_dimensions(fiber, p, l):
    """Dimensions of the degree-<=p part and of its degree-<=l projection, from ranks."""
    rho0, rho1 = ranks(fiber, p, l)
    n = fiber.phi.n
    return comb(n + p, n) - rho0, comb(l + n, n) + rho1 - rho0


def refinement_dimensions(fiber, p):
    """Kernel dimension at degree <= p using the first 1, 2, ..., q fiber points."""
    system = stacked_l_matrix(fiber, p)
    block = len(system.rows) // fiber.q
    return tuple(system.ncols - rank(system.rows[: k * block]) for k in range(1, fiber.q + 1))


def project_l(obj, l):
    """Drop terms of degree above ``l`` from a series, or from every element of a relation ideal.

    For an ideal the result is the row-reduced span of the projected elements
    at precision ``l``; it is a linear subspace, not an ideal in general.
    """
    if isinstance(obj, TruncatedSeries):
        return obj.project(l)
    if isinstance(obj, RelationIdeal):
        if l > obj.p:
            raise PreconditionError(f"cannot project to degree {l} above p={obj.p}")
        return span([b.project(l) for b in obj.ideal.basis], obj.n, l)
    raise TypeError(f"cannot project {type(obj).__name__}")


@dataclass(frozen=True)
class Stabilization:
    """Outcome of :func:`stabilization_degree`.

    ``degree`` is None when no stabilization was seen up to ``p_max``;
    ``dims[i]`` is the dimension of the degree-l projection at p = l + i.
    """

    l: int
    p_max: int
    degree: int
    dims: tuple

    @property
    def stabilized(self):
        return self.degree is not None


def stabilization_degree(fiber, l, p_max):
    """Smallest p >= l whose degree-l projection equals the one at p + 1."""
    if l < 1 or p_max < l:
        raise PreconditionError(f"need 1 <= l <= p_max, got l={l}, p_max={p_max}")
    projections = [project_l(relations_ideal(fiber, p), l) for p in range(l, p_max + 1)]
    found = None
    for i in range(len(projections) - 1):
        if projections[i] == projections[i + 1]:
            found = l + i
            break
    return Stabilization(l, p_max, found, tuple(pr.dim for pr in projections))


def normal_form_at(w, relation_ideal):
    """The unique V with W - V in the relation ideal and support outside its diagram."""
    return normal_form(w, relation_ideal.ideal)


def jet_of(f, b, p):
    """p-jet of the polynomial ``f`` at ``b`` as a series in the increment."""
    return compose(f, recentered_variables(as_point(b), p))


def _rhs(jets, fiber, p):
    m = fiber.phi.m
    if len(jets) != fiber.q:
        raise DimensionError(f"{len(jets)} jets for {fiber.q} fiber points")
    betas = mono.enumerate_upto(m, p)
    rhs = []
    for j in jets:
        if (j.n, getattr(j, "p", None)) != (m, p):
            raise DimensionError(f"jet must be a series in {m} variables at precision {p}")
        rhs.extend(j.coeff(beta) * mono.exp_factorial(beta) for beta in betas)
    return rhs


def _not_composite(system, row):
    nu, beta = system.row_labels[row]
    return NotCompositeError(beta, nu, row)


def solve_composite(jets, relation_ideal):
    """Find V supported outside the diagram with V(T~phi(b_v, x)) = jet_v for every v.

    ``jets[v]`` is the p-jet of f at the v-th fiber point, a series in the
    increment x.  Raises :class:`NotCompositeError` naming the first
    contradictory equation if no such V exists.
    """
    r = relation_ideal
    rhs = _rhs(jets, r.source, r.p)
    cols = r.system.col_labels
    delta = r.delta
    where = {a: j for j, a in enumerate(cols)}
    restricted = r.system.columns(where[a] for a in delta)
    try:
        coeffs = solve(restricted.rows, rhs)
    except InconsistentSystemError as exc:
        raise _not_composite(r.system, exc.row) from None
    return TruncatedSeries(r.n, r.p, dict(zip(delta, coeffs)))


def solve_composite_unrestricted(jets, relation_ideal):
    """Same answer as :func:`solve_composite`, solving over all exponents then reducing."""
    r = relation_ideal
    rhs = _rhs(jets, r.source, r.p)
    try:
        coeffs = solve(r.system.rows, rhs)
    except InconsistentSystemError as exc:
        raise _not_composite(r.system, exc.row) from None
    w = TruncatedSeries(r.n, r.p, dict(zip(r.system.col_labels, coeffs)))
    return normal_form_at(w, r)
