from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import gauss_jordan

from jetcomp.errors import DimensionError, InconsistentSystemError
from jetcomp.ratlinalg import RationalMatrix, kernel_basis, rank, rref, solve

F = Fraction


def test_rref_examples():
    red, piv = rref(RationalMatrix.identity(3))
    assert red == RationalMatrix.identity(3) and piv == [0, 1, 2]
    red, piv = rref([[2, 4]])
    assert red.rows == [[1, 2]] and piv == [0]
    red, piv = rref([[0, 0], [0, 0]])
    assert piv == [] and all(v == 0 for r in red.rows for v in r)


def test_rank_kernel_solve_examples():
    assert rank([[1, 2], [2, 4]]) == 1
    assert kernel_basis([[1, 2]]) == [[F(-2), F(1)]]
    with pytest.raises(InconsistentSystemError) as info:
        solve([[1], [1]], [1, -1])
    assert info.value.row == 1


def test_solve_checks_lengths():
    with pytest.raises(DimensionError):
        solve([[1, 0]], [1, 2])


matrices = st.integers(1, 6).flatmap(
    lambda c: st.lists(
        st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=c, max_size=c),
        min_size=1, max_size=6,
    )
)


@settings(max_examples=80)
@given(matrices)
def test_rref_matches_textbook_elimination(m):
    red, piv = rref(m)
    ref_rows, ref_piv = gauss_jordan(m)
    assert piv == ref_piv
    assert red.rows[: len(piv)] == ref_rows


@settings(max_examples=80)
@given(matrices)
def test_rank_nullity_and_kernel(m):
    ncols = len(m[0])
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == ncols
    for k in ker:
        assert all(sum(a * b for a, b in zip(row, k)) == 0 for row in m)


@settings(max_examples=60)
@given(matrices)
def test_rref_idempotent(m):
    red, _ = rref(m)
    again, _ = rref(red)
    assert again == red


@settings(max_examples=60)
@given(matrices, st.data())
def test_solve_consistent_rhs(m, data):
    x = data.draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=2),
                           min_size=len(m[0]), max_size=len(m[0])))
    b = RationalMatrix(m).matvec(x)
    sol = solve(m, b)
    assert RationalMatrix(m).matvec(sol) == b


def test_inconsistency_certificate_is_first_bad_row():
    m = [[1, 1], [1, -1], [2, 0], [0, 1]]
    b = [2, 0, 2, 5]
    with pytest.raises(InconsistentSystemError) as info:
        solve(m, b)
    row = info.value.row
    assert row == 3
    solve(m[:row], b[:row])


def test_tsv_dump():
    m = RationalMatrix([[1, F(1, 2)]], col_labels=["a", "b"], row_labels=["r"])
    assert m.to_tsv() == "\ta\tb\nr\t1/1\t1/2"
