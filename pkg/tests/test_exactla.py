"""Tests for exact rational linear algebra."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kvpoisson.analysis import exactla
from kvpoisson.exceptions import DimensionMismatchError, MalformedInputError, SingularMatrixError
from kvpoisson.utils import sampling

SMALL_FRACTIONS = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    return exactla.matrix(
        [[draw(SMALL_FRACTIONS) for _ in range(cols)] for _ in range(rows)]
    )


def test_to_fraction_accepts_exact_values():
    assert exactla.to_fraction("3/4") == Fraction(3, 4)
    assert exactla.to_fraction(-2) == Fraction(-2)


def test_to_fraction_rejects_floats_and_garbage():
    with pytest.raises(MalformedInputError):
        exactla.to_fraction(0.5)
    with pytest.raises(MalformedInputError):
        exactla.to_fraction("one half")


def test_rank_small_cases():
    assert exactla.rank(exactla.matrix([[1, 2], [2, 4]])) == 1
    assert exactla.rank(exactla.identity(3)) == 3
    assert exactla.rank(exactla.matrix([["1/2", "1/3"], ["1/4", "1/6"]])) == 1
    assert exactla.rank(exactla.zeros(3, 3)) == 0


def test_rank_of_zero_size_matrices():
    assert exactla.rank(exactla.zeros(0, 3)) == 0
    assert exactla.rank(exactla.zeros(4, 0)) == 0


def test_matmul_handles_zero_size():
    product = exactla.matmul(exactla.zeros(2, 0), exactla.zeros(0, 3))
    assert product.shape == (2, 3)
    assert exactla.is_zero(product)


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        exactla.matmul(exactla.zeros(2, 3), exactla.zeros(2, 3))


def test_rref_and_pivots():
    reduced, pivots = exactla.rref(exactla.matrix([[2, 4, 2], [1, 3, 2]]))
    assert pivots == [0, 1]
    assert reduced.tolist() == [[1, 0, -1], [0, 1, 1]]


def test_nullspace_basis_echelon_form():
    basis = exactla.nullspace_basis(exactla.matrix([[1, 2, 3]]))
    assert basis == [
        (Fraction(-2), Fraction(1), Fraction(0)),
        (Fraction(-3), Fraction(0), Fraction(1)),
    ]


def test_inverse():
    inv = exactla.inverse(exactla.matrix([[2, 1], [1, 1]]))
    assert inv.tolist() == [[1, -1], [-1, 2]]


def test_inverse_of_singular_matrix():
    with pytest.raises(SingularMatrixError):
        exactla.inverse(exactla.matrix([[1, 2], [2, 4]]))


def test_subspace_equal_and_in_span():
    assert exactla.subspace_equal([(1, 0), (0, 1)], [(1, 1), (1, -1)])
    assert not exactla.subspace_equal([(1, 0)], [(0, 1)])
    assert exactla.in_span([(1, 1, 0), (0, 1, 1)], (1, 2, 1))
    assert not exactla.in_span([(1, 1, 0)], (1, 0, 0))


def test_subspace_equal_rejects_unequal_lengths():
    with pytest.raises(DimensionMismatchError):
        exactla.subspace_equal([(1, 0)], [(1, 0, 0)])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_equals_rank_of_transpose(m):
    assert exactla.rank(m) == exactla.rank(np.ascontiguousarray(m.T))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    basis = exactla.nullspace_basis(m)
    assert len(basis) + exactla.rank(m) == m.shape[1]
    for v in basis:
        assert all(x == 0 for x in exactla.matvec(m, v))


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=3, max_cols=3), st.integers(0, 2**16))
def test_rank_invariant_under_invertible_products(m, seed):
    rng = sampling.make_rng(seed)
    left = sampling.random_invertible_matrix(rng, m.shape[0])
    right = sampling.random_invertible_matrix(rng, m.shape[1])
    assert exactla.rank(exactla.matmul(exactla.matmul(left, m), right)) == exactla.rank(m)
