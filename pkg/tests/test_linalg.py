from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from bettishape.linalg import (
    DEFAULT_PRIME,
    RationalMatrix,
    ReducedEchelon,
    SparseEchelon,
    bareiss_rank,
    kernel_basis,
    kernel_dim,
    rank,
    sparse_rank,
)
from strategies import int_matrices


def test_identity_and_zero():
    assert rank(RationalMatrix.identity(5)) == 5
    assert rank(RationalMatrix.zeros(3, 4)) == 0
    assert kernel_dim(RationalMatrix.zeros(3, 4)) == 4


def test_fraction_entries():
    M = RationalMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]])
    assert rank(M) == 1


def test_rank_depends_on_characteristic():
    # det = 6: full rank over Q and GF(5), rank one over GF(2) and GF(3)
    M = RationalMatrix.from_rows([[2, 0], [0, 3]])
    assert rank(M) == 2
    assert rank(M, prime=5) == 2
    assert rank(M, prime=2) == 1
    assert rank(M, prime=3) == 1


@given(int_matrices())
def test_bareiss_matches_sympy(rows):
    assert bareiss_rank([list(r) for r in rows]) == sympy.Matrix(rows).rank()


@given(int_matrices())
def test_sparse_and_dense_agree(rows):
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    expected = bareiss_rank([list(r) for r in rows])
    assert sparse_rank(sparse) == expected
    assert sparse_rank(sparse, prime=DEFAULT_PRIME) == expected  # small entries, large prime


@given(int_matrices(), st.permutations(range(6)))
def test_rank_invariant_under_row_permutation_and_transpose(rows, perm):
    M = RationalMatrix.from_rows(rows)
    permuted = [rows[i] for i in perm if i < len(rows)]
    assert rank(RationalMatrix.from_rows(permuted)) == rank(M)
    transposed = [list(col) for col in zip(*rows)]
    assert rank(RationalMatrix.from_rows(transposed)) == rank(M)


@given(int_matrices())
def test_kernel_basis_is_kernel(rows):
    ncols = len(rows[0])
    frows = [[Fraction(v) for v in r] for r in rows]
    basis = kernel_basis(frows, ncols)
    assert len(basis) == ncols - bareiss_rank([list(r) for r in rows])
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in frows)


def test_sparse_echelon_reports_dependence():
    E = SparseEchelon()
    assert E.add({0: 1, 1: 2})
    assert E.add({1: 1})
    assert not E.add({0: 3, 1: 7})
    assert E.rank == 2


def test_reduced_echelon_normal_form():
    E = ReducedEchelon()
    E.add({0: 1, 1: 1})
    reduced = E.reduce({0: 2, 1: 5})
    assert 0 not in reduced or reduced[0] == 0
    E2 = ReducedEchelon(prime=7)
    E2.add({0: 3})
    assert not E2.add({0: 4})


def test_sparse_rank_bound_stops_early():
    rows = [{i: 1} for i in range(10)]
    assert sparse_rank(rows, bound=3) == 3


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [3]])
