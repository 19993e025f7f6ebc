from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jetcomp import monomials as mono
from jetcomp.errors import DimensionError


def exps(n):
    return st.tuples(*[st.integers(0, 6)] * n)


def test_cmp_examples():
    assert mono.cmp((0, 1), (1, 0)) == -1
    assert mono.cmp((2, 0), (0, 1)) == 1
    assert mono.cmp((1, 1), (1, 1)) == 0


def test_cmp_rejects_mixed_lengths():
    with pytest.raises(DimensionError):
        mono.cmp((1, 0), (1,))
    with pytest.raises(DimensionError):
        mono.divides((1,), (1, 2))


def test_divides_examples():
    assert mono.divides((1, 0), (1, 1))
    assert not mono.divides((0, 2), (0, 1))
    for b in mono.enumerate_upto(2, 3):
        assert mono.divides((0, 0), b)


def test_enumerate_examples():
    assert mono.enumerate_upto(2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert mono.enumerate_upto(1, 4) == [(0,), (1,), (2,), (3,), (4,)]
    assert len(mono.enumerate_upto(3, 2)) == 10


@pytest.mark.parametrize("n,p", [(1, 0), (1, 7), (2, 5), (3, 4), (4, 3)])
def test_enumerate_sorted_and_complete(n, p):
    out = mono.enumerate_upto(n, p)
    assert len(out) == comb(n + p, n)
    assert len(set(out)) == len(out)
    assert all(mono.cmp(a, b) == -1 for a, b in zip(out, out[1:]))
    assert out[0] == mono.zero(n)


@given(exps(3), exps(3), exps(3))
def test_cmp_total_order(a, b, c):
    assert mono.cmp(a, b) == -mono.cmp(b, a)
    assert (mono.cmp(a, b) == 0) == (a == b)
    if mono.cmp(a, b) <= 0 and mono.cmp(b, c) <= 0:
        assert mono.cmp(a, c) <= 0


@given(exps(2), exps(2), exps(2))
def test_cmp_compatible_with_addition(a, b, g):
    if mono.cmp(a, b) < 0:
        assert mono.cmp(mono.add(a, g), mono.add(b, g)) < 0


@given(exps(3), exps(3))
def test_divides_implies_not_greater(a, b):
    if mono.divides(a, b):
        assert mono.cmp(a, b) <= 0


@given(exps(3))
def test_exponent_text_round_trip(a):
    assert mono.parse_exponent(mono.format_exponent(a)) == a


@pytest.mark.parametrize("bad", ["1,2", "()", "(1,-2)", "(a)"])
def test_parse_exponent_rejects(bad):
    with pytest.raises(ValueError):
        mono.parse_exponent(bad)


def test_exp_factorial():
    assert mono.exp_factorial((3, 0, 2)) == 12
