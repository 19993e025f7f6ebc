"""
Diagrams of initial exponents and standard bases
================================================

An ideal that contains every monomial of degree p+1 is determined by a finite
linear algebra problem.  Its initial exponents form a staircase; the exponents
under the staircase give a basis of the quotient.
"""

from math import comb

from jetcomp.diagrams import (
    complement_basis,
    diagram_of,
    ideal_from_generators,
    normal_form,
    standard_basis,
)
from jetcomp.series import TruncatedSeries

n, p = 2, 3
gens = [
    TruncatedSeries(n, p, {(1, 0): 1, (0, 1): -1}),    # y1 - y2
    TruncatedSeries(n, p, {(2, 0): 1, (0, 3): 2}),     # y1^2 + 2 y2^3
]
ideal = ideal_from_generators(gens, n, p)
d = diagram_of(ideal)
print("vertices:", d.vertices)

for e in standard_basis(ideal):
    shown = f"y^{e.vertex}" if e.is_tail else e.series
    print(f"  G at {e.vertex}: {shown}")

delta = complement_basis(d, p)
print("under the staircase:", delta)
print("dimensions add up:", ideal.dim + len(delta) == comb(n + p, n))

w = TruncatedSeries(n, p, {(0, 0): 3, (0, 1): 1, (0, 3): 1})
print("normal form of 3 + y2 + y2^3:", normal_form(w, ideal))
