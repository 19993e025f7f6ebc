import pytest
from helpers import make_rng, random_series
from hypothesis import given, settings
from hypothesis import strategies as st

from jetcomp import monomials as mono
from jetcomp.division import DeltaDecomposition, classify, divide
from jetcomp.errors import DimensionError, PreconditionError
from jetcomp.series import TruncatedSeries


def series(n, p, terms):
    return TruncatedSeries(n, p, terms)


def test_classify_examples():
    dec = DeltaDecomposition(2, [(1, 0), (0, 2)])
    assert classify(dec, (1, 1)) == 0
    assert classify(dec, (0, 2)) == 1
    assert classify(dec, (0, 1)) is None


def test_divide_by_monomial():
    g = series(2, 2, {(0, 0): 1, (1, 0): 1, (1, 1): 1})
    res = divide(g, [series(2, 2, {(1, 0): 1})])
    assert res.quotients[0] == series(2, 2, {(0, 0): 1, (0, 1): 1})
    assert res.remainder == series(2, 2, {(0, 0): 1})


def test_divide_by_line():
    g = series(2, 2, {(0, 1): 1})
    f = series(2, 2, {(1, 0): 1, (0, 1): -1})
    res = divide(g, [f])
    assert res.quotients[0] == series(2, 2, {(0, 0): -1})
    assert res.remainder == series(2, 2, {(1, 0): 1})


def test_divide_exact_multiple():
    res = divide(series(2, 2, {(2, 0): 3}), [series(2, 2, {(2, 0): 1})])
    assert res.quotients[0] == series(2, 2, {(0, 0): 3}) and res.remainder.is_zero()


def test_no_divisors_returns_g():
    g = series(1, 3, {(1,): 2})
    res = divide(g, [])
    assert res.quotients == () and res.remainder == g


def test_zero_divisor_and_mixed_shapes():
    with pytest.raises(PreconditionError):
        divide(series(1, 2, {(1,): 1}), [TruncatedSeries.zero(1, 2)])
    with pytest.raises(DimensionError):
        divide(series(1, 2, {(1,): 1}), [series(1, 3, {(1,): 1})])


def check_division(g, fs, res):
    total = res.remainder
    for q, f in zip(res.quotients, fs):
        total = total + q * f
    assert total == g
    dec = res.decomposition
    for i, (q, f) in enumerate(zip(res.quotients, fs)):
        lead = f.initial_exponent()
        for a in q.support():
            assert dec.classify(mono.add(lead, a)) == i
        if q and g:
            assert mono.cmp(mono.add(lead, q.initial_exponent()), g.initial_exponent()) >= 0
    for a in res.remainder.support():
        assert dec.classify(a) is None
    if res.remainder and g:
        assert mono.cmp(res.remainder.initial_exponent(), g.initial_exponent()) >= 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_division_properties(seed):
    rng = make_rng(seed)
    n, p = rng.randint(1, 3), rng.randint(1, 5)
    fs = [random_series(rng, n, p, rng.randint(1, 4), nonzero=True) for _ in range(rng.randint(0, 3))]
    g = random_series(rng, n, p, rng.randint(0, 6))
    res = divide(g, fs)
    check_division(g, fs, res)
    again = divide(g - res.remainder, fs)
    assert again.quotients == res.quotients and again.remainder.is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_division_is_linear(seed):
    rng = make_rng(seed)
    n, p = rng.randint(1, 3), rng.randint(1, 4)
    fs = [random_series(rng, n, p, 3, nonzero=True) for _ in range(2)]
    g1, g2 = random_series(rng, n, p, 4), random_series(rng, n, p, 4)
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    r = divide(g1.scale(a) + g2.scale(b), fs)
    r1, r2 = divide(g1, fs), divide(g2, fs)
    assert r.remainder == r1.remainder.scale(a) + r2.remainder.scale(b)
    for q, q1, q2 in zip(r.quotients, r1.quotients, r2.quotients):
        assert q == q1.scale(a) + q2.scale(b)


def test_divisor_order_is_kept():
    f1 = series(2, 2, {(1, 0): 1})
    f2 = series(2, 2, {(0, 1): 1, (1, 0): 1})
    res = divide(series(2, 2, {(1, 1): 1}), [f2, f1])
    assert res.decomposition.vertices == ((0, 1), (1, 0))
