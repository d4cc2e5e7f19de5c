"""Seeded random rationals, structures and basis changes."""

import random
from fractions import Fraction

from kvpoisson.analysis import algebra, exactla


def make_rng(seed):
    """A private ``random.Random`` seeded deterministically."""
    return random.Random(seed)


def random_rational(rng, bound, max_denominator=1, nonzero=False):
    """A rational p/q with 1 <= q <= max_denominator and |p/q| <= bound."""
    while True:
        q = rng.randint(1, max_denominator)
        value = Fraction(rng.randint(-bound * q, bound * q), q)
        if value != 0 or not nonzero:
            return value


def random_structure(rng, dim, bound=5, max_denominator=1, skew=False):
    """
    A random structure with constants in [-bound, bound].

    With ``skew=True`` only the constants c[i][j][k] with i < j are drawn and
    the rest follow from skew-symmetry.
    """
    entries = {}
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            if skew and i >= j:
                continue
            for k in range(1, dim + 1):
                value = random_rational(rng, bound, max_denominator)
                entries[(i, j, k)] = value
                if skew:
                    entries[(j, i, k)] = -value
    return algebra.make_structure(dim, entries)


def random_invertible_matrix(rng, n, bound=3, max_denominator=2):
    """A random invertible n x n rational matrix."""
    while True:
        m = exactla.matrix(
            [[random_rational(rng, bound, max_denominator) for _ in range(n)] for _ in range(n)]
        )
        if exactla.rank(m) == n:
            return m
