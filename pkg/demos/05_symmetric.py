"""
Symmetric polynomials through (x1 + x2, x1 x2)
==============================================

Swapping the coordinates gives the two-point fibers of the symmetrization
map.  The composite jet is the Taylor polynomial of g at (s1, s2).
"""

from jetcomp.relations import FiberTuple, jet_of, relations_ideal, solve_composite
from jetcomp.series import Polynomial, format_point
from jetcomp.taylor import PolyMap

sym = PolyMap.from_terms(2, [{(1, 0): 1, (0, 1): 1}, {(1, 1): 1}])
f = Polynomial(2, {(3, 0): 1, (0, 3): 1})     # x1^3 + x2^3 = s1^3 - 3 s1 s2

fiber = FiberTuple(sym, [(1, 2), (2, 1)])
r = relations_ideal(fiber, 3)
v = solve_composite([jet_of(f, pt, 3) for pt in fiber.points], r)
print("target:", format_point(fiber.target))
print("V =", v.to_string(["s1", "s2"]))

# on the diagonal the map folds and relations appear
diag = relations_ideal(FiberTuple(sym, [(1, 1)]), 3)
print("diagonal vertices:", diag.diagram.vertices)
