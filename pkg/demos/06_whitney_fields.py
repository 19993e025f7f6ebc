"""
Checking finite Whitney fields
==============================

A field of Taylor polynomials sampled at finitely many points is compared
pairwise.  Jets of a global polynomial agree perfectly; a field that claims
a zero derivative for the identity function does not.
"""

from fractions import Fraction

from jetcomp.series import Polynomial, TruncatedSeries
from jetcomp.whitney import (
    JetField,
    field_from_polynomial,
    glue_truncation_check,
    prop32_check,
    remark33_check,
    whitney_defect,
)

P = Polynomial(1, {(3,): 1, (1,): -1})
good = field_from_polynomial(P, [(0,), (1,), (-2,)], 3)
print("polynomial field, worst squared quotient:", whitney_defect(good).max_sq)

pts = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 4)]
flat = JetField(1, 1, {(a,): TruncatedSeries(1, 1, {(0,): a}) for a in pts})
table = whitney_defect(flat)
print("flat field, worst squared quotient:", table.max_sq)
print("passes tau = 9/10?", table.passes(Fraction(9, 10)))

# the same failure seen through derivatives along a = t
res = prop32_check(Polynomial(2, {(1, 0): 1}), [Polynomial(1, {(1,): 1})], 1)
print("derivative criterion holds?", res.holds, "residual:", res.residuals[0])

# mean value bound along a polyline
rep = remark33_check(Polynomial(1, {(2,): 1}), [(0,), (Fraction(1, 2),), (1,)])
print("lhs", rep.lhs, "rhs", rep.rhs.format(), "holds", rep.holds())

# truncating a degree-4 field to degree 2
field = field_from_polynomial(Polynomial(1, {(4,): 1}), [(0,), (1,), (3,)], 4)
report = glue_truncation_check(field, [(0,), (1,)], 2, 2, 0)
print("glue check:", "pass" if report.passed else "fail", "|", report.note)
