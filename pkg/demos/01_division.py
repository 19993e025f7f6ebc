"""
Dividing one truncated series by a list of others
=================================================

The divisors' initial exponents cut the exponent lattice into pieces; each
term of the dividend is pushed into the quotient that owns its piece, or into
the remainder.
"""

from jetcomp.division import divide
from jetcomp.series import TruncatedSeries

# work modulo terms of degree 4 and above, in two variables
p = 3
g = TruncatedSeries(2, p, {(0, 2): 1, (1, 1): 1, (0, 0): 5})
f1 = TruncatedSeries(2, p, {(0, 1): 1, (1, 0): -1})   # y2 - y1, initial exponent (0,1)
f2 = TruncatedSeries(2, p, {(2, 0): 1})                # y1^2

res = divide(g, [f1, f2])
print("g  =", g)
for i, q in enumerate(res.quotients, 1):
    print(f"Q{i} =", q)
print("R  =", res.remainder)

# the identity is exact
print("check:", res.quotients[0] * f1 + res.quotients[1] * f2 + res.remainder == g)

# the order of the divisors matters: swapping them changes the pieces
swapped = divide(g, [f2, f1])
print("swapped remainder:", swapped.remainder)
