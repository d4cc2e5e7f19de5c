"""Exact rational linear algebra on numpy object arrays of Fractions.

Every cohomology dimension in this package is a rank computed here. Matrices
are 2-d ``numpy`` arrays with ``dtype=object`` holding ``fractions.Fraction``
entries; vectors are tuples of Fractions. Zero-size matrices are allowed.
"""

import logging
from fractions import Fraction
from math import lcm

import numpy as np

from kvpoisson.exceptions import DimensionMismatchError, MalformedInputError, SingularMatrixError

LOGGER = logging.getLogger(__name__)


def to_fraction(value):
    """Coerce an int, string or Fraction to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise MalformedInputError(f"floating-point value {value!r} is not an exact rational")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MalformedInputError(f"not a rational number: {value!r}") from e


def zeros(rows, cols):
    """Return a rows x cols zero matrix."""
    m = np.empty((rows, cols), dtype=object)
    m.fill(Fraction(0))
    return m


def identity(n):
    """Return the n x n identity matrix."""
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = Fraction(1)
    return m


def matrix(rows, cols=None):
    """
    Build a matrix from a list of rows.

    Args:
        rows: sequence of equal-length sequences of rational-like values
        cols: column count, required only when ``rows`` is empty

    Returns:
        numpy object array of Fractions
    """
    rows = [list(r) for r in rows]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    m = zeros(len(rows), cols)
    for i, row in enumerate(rows):
        if len(row) != cols:
            raise DimensionMismatchError(f"row {i} has {len(row)} entries, expected {cols}")
        for j, value in enumerate(row):
            m[i, j] = to_fraction(value)
    return m


def _as_fractions(m):
    out = zeros(*m.shape)
    for idx, value in np.ndenumerate(m):
        out[idx] = Fraction(value)
    return out


def matmul(a, b):
    """Exact matrix product; handles zero-size operands."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return _as_fractions(a.dot(b))


def matvec(m, v):
    """Apply a matrix to a vector, returning a tuple."""
    if m.shape[1] != len(v):
        raise DimensionMismatchError(f"cannot apply {m.shape} matrix to a vector of length {len(v)}")
    return tuple(sum((m[i, j] * v[j] for j in range(m.shape[1])), Fraction(0)) for i in range(m.shape[0]))


def is_zero(m):
    """True if every entry of ``m`` vanishes."""
    return all(value == 0 for value in m.flat)


def _integer_rows(m):
    # clear denominators row by row; rank is unchanged by nonzero row scaling
    rows = []
    for i in range(m.shape[0]):
        row = [Fraction(value) for value in m[i, :]]
        scale = lcm(*(value.denominator for value in row)) if row else 1
        rows.append([int(value * scale) for value in row])
    return rows


def rank(m):
    """
    Row rank by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators, then eliminated over the integers.
    The pivot is the first nonzero entry in column order, so the elimination
    path is deterministic.

    Args:
        m: matrix (zero-size allowed)

    Returns:
        rank as a non-negative int
    """
    n_rows, n_cols = m.shape
    if n_rows == 0 or n_cols == 0:
        return 0
    a = _integer_rows(m)
    r = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][col]
        for i in range(r + 1, n_rows):
            factor = a[i][col]
            row = a[i]
            for j in range(col + 1, n_cols):
                row[j] = (p * row[j] - factor * a[r][j]) // prev
            row[col] = 0
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rref(m):
    """
    Reduced row echelon form over Q.

    Returns:
        (reduced matrix, list of pivot columns)
    """
    a = _as_fractions(m)
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if a[i, col] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        a[r, :] = a[r, :] / a[r, col]
        for i in range(n_rows):
            if i != r and a[i, col] != 0:
                a[i, :] = a[i, :] - a[i, col] * a[r, :]
        pivots.append(col)
        r += 1
    return a, pivots


def nullspace_basis(m):
    """
    Basis of {x : m.x = 0} in echelon normal form.

    One vector per free column, in increasing column order; the free
    coordinate is 1, the other free coordinates 0.

    Returns:
        list of tuples of Fractions, of length cols - rank(m)
    """
    n_cols = m.shape[1]
    reduced, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r, f]
        basis.append(tuple(v))
    return basis


def _vector_length(vectors):
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise DimensionMismatchError(f"vectors of different lengths: {sorted(lengths)}")
    return lengths.pop() if lengths else None


def span_rank(vectors, length=None):
    """Dimension of the span of a list of vectors."""
    if not vectors:
        return 0
    return rank(matrix(vectors, length))


def subspace_equal(a, b):
    """
    True iff span(a) = span(b), decided by ranks of the stacked matrices.

    Raises:
        DimensionMismatchError: vectors of unequal length
    """
    length = _vector_length(list(a) + list(b))
    rank_a = span_rank(list(a), length)
    rank_b = span_rank(list(b), length)
    if rank_a != rank_b:
        return False
    return span_rank(list(a) + list(b), length) == rank_a


def in_span(vectors, v):
    """True iff ``v`` lies in the span of ``vectors``."""
    _vector_length(list(vectors) + [v])
    return span_rank(list(vectors)) == span_rank(list(vectors) + [v])


def inverse(m):
    """
    Inverse by Gauss-Jordan elimination over Q.

    Raises:
        SingularMatrixError: m is not square or not invertible
    """
    n = m.shape[0]
    if m.shape != (n, n):
        raise SingularMatrixError(f"non-square matrix {m.shape} has no inverse")
    augmented = np.concatenate([_as_fractions(m), identity(n)], axis=1)
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return reduced[:, n:].copy()
