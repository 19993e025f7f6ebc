"""
Relations among the components of the cusp map
===============================================

For phi(x) = (x^2, x^3) near x = 1 the image is a smooth curve, so the two
coordinates are tied by one relation.  Up to degree 2 it is found as the
kernel of the stacked derivative matrix.
"""

from jetcomp.relations import (
    FiberTuple,
    project_l,
    ranks,
    relations_ideal,
    stabilization_degree,
)
from jetcomp.taylor import PolyMap, l_matrix

cusp = PolyMap.from_terms(1, [{(2,): 1}, {(3,): 1}])
print(l_matrix(cusp, (1,), 2).to_tsv())

fiber = FiberTuple(cusp, [(1,)])
r = relations_ideal(fiber, 2)
print("vertices:", r.diagram.vertices)
print("relation:", r.standard_basis[0].series)   # y2 - 3/2 y1 - 3/8 y1^2
print("free exponents:", r.delta)
print("ranks (l=1):", ranks(fiber, 2, 1))

# at x = 1 the projections to degree 1 are stable from the start
print(stabilization_degree(fiber, 1, 4))

# at the cusp point itself the degree-2 shadows keep shrinking for a while:
# only y2^2 survives, from the relation y2^2 - y1^3
at_zero = stabilization_degree(FiberTuple(cusp, [(0,)]), 2, 7)
print(at_zero)
print(project_l(relations_ideal(FiberTuple(cusp, [(0,)]), at_zero.degree), 2).basis)
