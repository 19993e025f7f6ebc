"""Division of truncated power series with respect to a list of divisors.

Given divisors F_1..F_s with initial exponents a^1..a^s, N^n splits into the
pieces D_i = (a^i + N^n) minus the earlier pieces, and the remainder piece D
(everything else).  Every G then has a unique expansion
G = sum Q_i F_i + R with a^i + supp Q_i inside D_i and supp R inside D.
"""

import heapq
from dataclasses import dataclass

from . import monomials as mono
from .errors import DimensionError, PreconditionError
from .series import TruncatedSeries

__all__ = ["DeltaDecomposition", "DivisionResult", "classify", "divide"]


@dataclass(frozen=True)
class DeltaDecomposition:
    """The partition of N^n induced by an ordered list of vertices."""

    n: int
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(v) for v in self.vertices))
        for v in self.vertices:
            if len(v) != self.n:
                raise DimensionError(f"vertex {v} does not have length {self.n}")

    def classify(self, beta):
        """Index (0-based) of the piece containing ``beta``, or None for the remainder piece."""
        if len(beta) != self.n:
            raise DimensionError(f"exponent {beta} does not have length {self.n}")
        for i, v in enumerate(self.vertices):
            if all(x <= y for x, y in zip(v, beta)):
                return i
        return None


def classify(decomposition, beta):
    return decomposition.classify(beta)


@dataclass(frozen=True)
class DivisionResult:
    quotients: tuple
    remainder: TruncatedSeries
    decomposition: DeltaDecomposition


def divide(g, divisors):
    """Divide ``g`` by ``divisors`` (order matters); see the module docstring.

    Repeatedly pops the smallest term c*y^b of the working series.  If b lies
    in piece i the multiple (c / lead_i) y^(b - a^i) F_i is removed and
    recorded in Q_i; otherwise the term moves to the remainder.  Each step
    strictly raises the smallest exponent left, and there are finitely many
    exponents of degree <= p, so this stops.
    """
    divisors = list(divisors)
    for f in divisors:
        g._check(f)
        if f.is_zero():
            raise PreconditionError("cannot divide by the zero series")
    n, p = g.n, g.p
    leads = [f.initial_monomial() for f in divisors]
    dec = DeltaDecomposition(n, [a for _, a in leads])
    tails = [[(a, c) for a, c in f.items()][1:] for f in divisors]

    work = dict(g.terms)
    heap = [(mono.order_key(a), a) for a in work]
    heapq.heapify(heap)
    quotients = [{} for _ in divisors]
    remainder = {}
    while heap:
        _, b = heapq.heappop(heap)
        c = work.pop(b, None)
        if not c:
            continue
        i = dec.classify(b)
        if i is None:
            remainder[b] = c
            continue
        lead_c, lead_a = leads[i]
        q = c / lead_c
        shift = tuple(x - y for x, y in zip(b, lead_a))
        quotients[i][shift] = q
        for a, fc in tails[i]:
            t = tuple(x + y for x, y in zip(a, shift))
            if sum(t) > p:
                continue
            old = work.get(t)
            new = (old or 0) - q * fc
            if new:
                if old is None:
                    heapq.heappush(heap, (mono.order_key(t), t))
                work[t] = new
            elif old is not None:
                del work[t]
    return DivisionResult(
        tuple(TruncatedSeries(n, p, qd) for qd in quotients),
        TruncatedSeries(n, p, remainder),
        dec,
    )
