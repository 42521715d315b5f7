from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triquot.errors import InputError
from triquot.exactalg import (
    FieldSpec,
    LinSolver,
    Mat,
    complement_basis,
    in_span,
    kernel_basis,
    rank,
    solve,
    span_basis,
)

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()


def col(field, *entries):
    return Mat.column(field, list(entries))


class TestSolve:
    def test_identity_case(self):
        A = Mat.identity(QQ, 2)
        x = solve(A, col(QQ, 3, 7))
        assert x == col(QQ, 3, 7)

    def test_scalar_mod5(self):
        A = Mat.from_rows(F5, [[2]])
        x = solve(A, col(F5, 3))
        assert x == col(F5, 4)

    def test_inconsistent(self):
        A = Mat.from_rows(QQ, [[1, 1], [1, 1]])
        assert solve(A, col(QQ, 1, 0)) is None

    def test_dimension_mismatch(self):
        A = Mat.identity(QQ, 2)
        with pytest.raises(InputError):
            solve(A, col(QQ, 1, 2, 3))

    def test_free_variables_pinned_to_zero(self):
        A = Mat.from_rows(QQ, [[1, 1]])
        x = solve(A, col(QQ, 5))
        assert x == col(QQ, 5, 0)


class TestKernel:
    def test_zero_map(self):
        A = Mat.zeros(QQ, 2, 2)
        assert len(kernel_basis(A)) == 2

    def test_injective(self):
        assert kernel_basis(Mat.identity(QQ, 3)) == []

    def test_mod3_row(self):
        A = Mat.from_rows(F3, [[1, 2]])
        basis = kernel_basis(A)
        assert len(basis) == 1
        assert basis[0] == col(F3, 1, 1)

    def test_kernel_annihilated(self):
        A = Mat.from_rows(QQ, [[1, 2, 3], [2, 4, 6]])
        for v in kernel_basis(A):
            assert (A @ v).is_zero()
        assert len(kernel_basis(A)) == 3 - rank(A)


class TestInSpan:
    def test_zero_always(self):
        assert in_span(col(QQ, 0, 0), [])
        assert in_span(col(QQ, 0, 0), [col(QQ, 1, 1)])

    def test_not_in_span(self):
        assert not in_span(col(QQ, 1, 0), [col(QQ, 0, 1)])

    def test_multiple(self):
        assert in_span(col(QQ, 2, 2), [col(QQ, 1, 1)])

    def test_height_mismatch(self):
        with pytest.raises(InputError):
            in_span(col(QQ, 1, 0), [col(QQ, 1, 0, 0)])


class TestComplement:
    def test_empty(self):
        comp = complement_basis([], 2, QQ)
        assert comp == [col(QQ, 1, 0), col(QQ, 0, 1)]

    def test_e1(self):
        comp = complement_basis([col(QQ, 1, 0)], 2)
        assert comp == [col(QQ, 0, 1)]

    def test_f2_diagonal(self):
        # independent oracle: enumerate span of (1,1) over F2 = {00, 11};
        # e1 is outside, so the greedy canonical choice is {e1}.
        v = col(F2, 1, 1)
        spanned = {(0, 0), (1, 1)}
        assert (1, 0) not in spanned
        comp = complement_basis([v], 2)
        assert comp == [col(F2, 1, 0)]

    def test_dependent_rejected(self):
        with pytest.raises(InputError):
            complement_basis([col(QQ, 1, 0), col(QQ, 2, 0)], 2)

    def test_union_is_basis(self):
        S = [col(F3, 1, 2, 0)]
        comp = complement_basis(S, 3)
        assert len(S) + len(comp) == 3
        M = Mat.hstack(F3, S + comp)
        assert rank(M) == 3


class TestDeterminismAndSpan:
    def test_repeated_runs_identical(self):
        A = Mat.from_rows(F5, [[1, 2, 3], [4, 0, 1], [2, 4, 4]])
        b = col(F5, 1, 2, 3)
        assert solve(A, b) == solve(A, b)
        assert kernel_basis(A) == kernel_basis(A)

    def test_span_basis_greedy(self):
        vs = [col(QQ, 1, 1), col(QQ, 2, 2), col(QQ, 0, 1)]
        basis = span_basis(vs)
        assert basis == [col(QQ, 1, 1), col(QQ, 0, 1)]

    def test_linsolver_many(self):
        A = Mat.from_rows(QQ, [[1, 2], [3, 4]])
        sol = LinSolver(A).solve_many(Mat.identity(QQ, 2))
        assert A @ sol == Mat.identity(QQ, 2)


@st.composite
def f5_matrix(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    entries = draw(st.lists(st.lists(st.integers(0, 4), min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return Mat.from_rows(F5, entries)


@given(f5_matrix(), st.lists(st.integers(0, 4), min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_postcondition(A, xs):
    xs = (xs * 4)[: A.cols]
    x = Mat.column(F5, xs)
    b = A @ x
    got = solve(A, b)
    assert got is not None
    assert A @ got == b


@given(f5_matrix())
@settings(max_examples=60, deadline=None)
def test_kernel_count_and_membership(A):
    ker = kernel_basis(A)
    assert len(ker) == A.cols - rank(A)
    for v in ker:
        assert (A @ v).is_zero()
    if ker:
        M = Mat.hstack(F5, ker)
        assert rank(M) == len(ker)


@given(f5_matrix())
@settings(max_examples=40, deadline=None)
def test_solve_none_means_outside_column_space(A):
    b = Mat.column(F5, [1] + [0] * (A.rows - 1))
    got = solve(A, b)
    assert (got is not None) == in_span(b, A.columns())
