"""
Even functions are functions of x^2
===================================

Over the two-point fiber {b, -b} of x -> x^2 the composite solver recovers
the jet of g with f(x) = g(x^2).  For an odd f it reports the first equation
that cannot be met.
"""

from fractions import Fraction

from jetcomp.errors import NotCompositeError
from jetcomp.relations import FiberTuple, jet_of, relations_ideal, solve_composite
from jetcomp.series import Polynomial, compose
from jetcomp.taylor import PolyMap

square = PolyMap.from_terms(1, [{(2,): 1}])
b = Fraction(3, 2)
fiber = FiberTuple(square, [(b,), (-b,)])
p = 4
r = relations_ideal(fiber, p)

f = Polynomial(1, {(4,): 1, (2,): 1})    # x^4 + x^2 = g(x^2), g(y) = y^2 + y
v = solve_composite([jet_of(f, pt, p) for pt in fiber.points], r)
print("V =", v.to_string(["y"]))
g = Polynomial(1, {(2,): 1, (1,): 1})
print("g(9/4 + y) =", compose(g, [Polynomial(1, {(0,): b * b, (1,): 1})]).to_string(["y"]))

odd = Polynomial(1, {(1,): 1})
try:
    solve_composite([jet_of(odd, pt, p) for pt in fiber.points], r)
except NotCompositeError as exc:
    print("x is not a function of x^2:", exc)
