from fractions import Fraction
from math import comb

import pytest
import sympy as sp
from oracles import relation_kernel

from jetcomp.errors import DimensionError, NotCompositeError, PreconditionError
from jetcomp.relations import (
    FiberTuple,
    jet_of,
    normal_form_at,
    project_l,
    projected_dimensions,
    ranks,
    refinement_dimensions,
    relations_ideal,
    solve_composite,
    solve_composite_unrestricted,
    stabilization_degree,
)
from jetcomp.series import Polynomial, TruncatedSeries, substitute
from jetcomp.taylor import PolyMap, reduced_taylor_field

SQUARE = PolyMap.from_terms(1, [{(2,): 1}])
CUSP = PolyMap.from_terms(1, [{(2,): 1}, {(3,): 1}])
SYM = PolyMap.from_terms(2, [{(1, 0): 1, (0, 1): 1}, {(1, 1): 1}])
IDENTITY = PolyMap.from_terms(2, [{(1, 0): 1}, {(0, 1): 1}])


def ser(terms, n=2, p=2):
    return TruncatedSeries(n, p, terms)


def test_fiber_validation():
    with pytest.raises(PreconditionError, match="repeated"):
        FiberTuple(SQUARE, [(1,), (1,)])
    with pytest.raises(PreconditionError, match="maps to"):
        FiberTuple(SQUARE, [(1,), (2,)])
    with pytest.raises(DimensionError):
        FiberTuple(SQUARE, [(1, 2)])
    with pytest.raises(PreconditionError):
        FiberTuple(SQUARE, [(1,)], target=(4,))
    assert FiberTuple(SQUARE, [(1,), (-1,)]).target == (1,)


def test_square_over_two_points():
    r = relations_ideal(FiberTuple(SQUARE, [(1,), (-1,)]), 2)
    assert r.ideal.dim == 0
    assert r.diagram.vertices == ((3,),)
    assert r.delta == [(0,), (1,), (2,)]


def test_cusp_golden_against_brute_force():
    r = relations_ideal(FiberTuple(CUSP, [(1,)]), 2)
    x0 = sp.Symbol("x0")
    rows, cols = relation_kernel([x0 ** 2, x0 ** 3], [1], 2, 1)
    assert r.ideal.vectors() == rows
    assert r.diagram.vertices == ((0, 1), (3, 0))
    g1 = r.standard_basis[0].series
    assert g1 == ser({(0, 1): 1, (1, 0): Fraction(-3, 2), (2, 0): Fraction(-3, 8)})
    assert r.standard_basis[1].vertex == (3, 0) and r.standard_basis[1].is_tail
    assert r.delta == [(0, 0), (1, 0), (2, 0)]


def test_cusp_ranks_and_projection():
    fiber = FiberTuple(CUSP, [(1,)])
    assert ranks(fiber, 2, 1) == (3, 1)
    assert projected_dimensions(fiber, 2, 1) == (3, 1)
    proj = project_l(relations_ideal(fiber, 2), 1)
    assert proj.basis == (TruncatedSeries(2, 1, {(0, 1): 1, (1, 0): Fraction(-3, 2)}),)


def test_identity_map():
    for p in (1, 2, 3):
        fiber = FiberTuple(IDENTITY, [(Fraction(1, 2), 3)])
        r = relations_ideal(fiber, p)
        assert r.ideal.dim == 0
        assert len(r.delta) == comb(2 + p, 2)
        assert ranks(fiber, p, 1)[0] == comb(2 + p, 2)


def test_ranks_preconditions():
    fiber = FiberTuple(CUSP, [(1,)])
    with pytest.raises(PreconditionError):
        ranks(fiber, 2, 3)
    with pytest.raises(PreconditionError):
        relations_ideal(fiber, 0)


def test_project_series():
    assert project_l(TruncatedSeries(1, 3, {(1,): 1, (3,): 1}), 2) == TruncatedSeries(1, 2, {(1,): 1})


def test_stabilization_examples():
    st = stabilization_degree(FiberTuple(SQUARE, [(1,), (-1,)]), 2, 5)
    assert st.degree == 2 and st.dims == (0, 0, 0, 0)
    st = stabilization_degree(FiberTuple(IDENTITY, [(0, 0)]), 1, 3)
    assert st.degree == 1
    st = stabilization_degree(FiberTuple(CUSP, [(1,)]), 1, 4)
    assert st.stabilized and st.degree == 1 and st.dims == (1, 1, 1, 1)
    assert all(a >= b for a, b in zip(st.dims, st.dims[1:]))


def test_stabilization_at_a_folding_point():
    # at the origin the cusp is not immersive, so the relations keep shrinking
    st = stabilization_degree(FiberTuple(CUSP, [(0,)]), 2, 6)
    assert all(a >= b for a, b in zip(st.dims, st.dims[1:]))


def test_normal_form_at_examples():
    r = relations_ideal(FiberTuple(CUSP, [(1,)]), 2)
    assert normal_form_at(ser({(0, 1): 1}), r) == ser({(1, 0): Fraction(3, 2), (2, 0): Fraction(3, 8)})
    assert normal_form_at(r.standard_basis[0].series, r).is_zero()
    assert normal_form_at(ser({(1, 0): 1}), r) == ser({(1, 0): 1})


def test_whitney_even_example():
    fiber = FiberTuple(SQUARE, [(1,), (-1,)])
    r = relations_ideal(fiber, 4)
    f = Polynomial(1, {(4,): 1, (2,): 1})
    jets = [jet_of(f, b, 4) for b in fiber.points]
    assert jets[0] == TruncatedSeries(1, 4, {(0,): 2, (1,): 6, (2,): 7, (3,): 4, (4,): 1})
    v = solve_composite(jets, r)
    assert v == TruncatedSeries(1, 4, {(0,): 2, (1,): 3, (2,): 1})
    assert solve_composite_unrestricted(jets, r) == v
    for b, j in zip(fiber.points, jets):
        assert substitute(v, reduced_taylor_field(SQUARE, b, 4), 4) == j


def test_odd_function_is_not_composite():
    fiber = FiberTuple(SQUARE, [(1,), (-1,)])
    r = relations_ideal(fiber, 2)
    f = Polynomial(1, {(1,): 1})
    with pytest.raises(NotCompositeError) as info:
        solve_composite([jet_of(f, b, 2) for b in fiber.points], r)
    assert info.value.beta == (0,) and info.value.point_index == 1
    with pytest.raises(NotCompositeError):
        solve_composite_unrestricted([jet_of(f, b, 2) for b in fiber.points], r)


def test_constant_is_composite():
    fiber = FiberTuple(CUSP, [(2,)])
    r = relations_ideal(fiber, 3)
    c = Polynomial(1, {(0,): 7})
    assert solve_composite([jet_of(c, (2,), 3)], r) == TruncatedSeries(2, 3, {(0, 0): 7})


def test_jet_arity_mismatch():
    r = relations_ideal(FiberTuple(SQUARE, [(1,), (-1,)]), 2)
    with pytest.raises(DimensionError):
        solve_composite([TruncatedSeries(1, 2, {})], r)
    with pytest.raises(DimensionError):
        solve_composite([TruncatedSeries(1, 3, {})] * 2, r)


def test_round_trip_through_the_ideal():
    fiber = FiberTuple(CUSP, [(1,)])
    r = relations_ideal(fiber, 3)
    f = Polynomial(1, {(5,): 1, (2,): -2, (3,): 1})
    v = solve_composite([jet_of(f, (1,), 3)], r)
    shifted = v + r.standard_basis[0].series.scale(Fraction(5, 7))
    assert normal_form_at(shifted, r) == v


@pytest.mark.parametrize("phi,points", [
    (SQUARE, [(2,), (-2,)]),
    (SYM, [(1, 2), (2, 1)]),
    (PolyMap.from_terms(1, [{(4,): 1, (2,): -1}]), [(0,), (1,), (-1,)]),
])
def test_more_points_never_enlarge_the_kernel(phi, points):
    for p in (1, 2, 3):
        for k in range(1, len(points)):
            small = relations_ideal(FiberTuple(phi, points[:k]), p)
            big = relations_ideal(FiberTuple(phi, points[: k + 1]), p)
            assert big.ideal.is_subspace_of(small.ideal)
        dims = refinement_dimensions(FiberTuple(phi, points), p)
        assert all(a >= b for a, b in zip(dims, dims[1:]))


def test_glaeser_diagonal_point():
    r = relations_ideal(FiberTuple(SYM, [(1, 1)]), 2)
    # W(s1, s2) near (2, 1): x1 x2 - (x1 + x2)^2 / 4 style relations
    for e in r.standard_basis:
        if not e.is_tail:
            assert substitute(e.series, reduced_taylor_field(SYM, (1, 1), 2), 2).is_zero()
