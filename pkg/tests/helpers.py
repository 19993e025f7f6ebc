"""Shared test utilities: random inputs and the acceptance verdict log."""

import random
from fractions import Fraction
from pathlib import Path

from jetcomp import monomials as mono
from jetcomp.series import TruncatedSeries

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

VERDICTS = []


def record(name, ok, detail=""):
    """Remember one acceptance verdict; printed in the terminal summary."""
    line = f"{'PASS' if ok else 'FAIL'}  {name}"
    if detail:
        line += f"  ({detail})"
    VERDICTS.append(line)
    print(line)
    return ok


def make_rng(seed=20240917):
    return random.Random(seed)


def random_rational(rng, lo=-9, hi=9, dens=(1, 1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_nonzero(rng, lo=-9, hi=9, dens=(1, 1, 2, 3)):
    while True:
        q = random_rational(rng, lo, hi, dens)
        if q:
            return q


def random_series(rng, n, p, nterms=None, low=0, nonzero=False):
    """Sparse random series; ``low`` is the smallest total degree used."""
    pool = [a for a in mono.enumerate_upto(n, p) if sum(a) >= low]
    k = nterms if nterms is not None else rng.randint(0, min(len(pool), 5))
    k = min(k, len(pool))
    if nonzero:
        k = max(k, 1)
    while True:
        s = TruncatedSeries(n, p, {a: random_rational(rng) for a in rng.sample(pool, k)})
        if s or not nonzero:
            return s
