"""Shared fixtures and hypothesis strategies."""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from kvpoisson.analysis import algebra
from kvpoisson.utils import sampling

RATIONALS = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def structures(draw, dim=2, skew=False):
    """Random structures of a fixed dimension, optionally skew."""
    entries = {}
    for i in range(1, dim + 1):
        for j in range(1, dim + 1):
            if skew and i >= j:
                continue
            for k in range(1, dim + 1):
                value = draw(RATIONALS)
                entries[(i, j, k)] = value
                if skew:
                    entries[(j, i, k)] = -value
    return algebra.make_structure(dim, entries)


@pytest.fixture
def family():
    """Builder for the skew plane product mu(e1, e2) = x0 e1 + y0 e2."""
    return lambda x0, y0: algebra.family_structure(Fraction(x0), Fraction(y0))


@pytest.fixture
def zero2():
    return algebra.zero_structure(2)


@pytest.fixture
def unit1():
    """The one-dimensional algebra with e1 e1 = e1."""
    return algebra.make_structure(1, {(1, 1, 1): 1})


@pytest.fixture
def so3():
    """[e1, e2] = e3, [e2, e3] = e1, [e3, e1] = e2."""
    entries = {}
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        entries[(i, j, k)] = 1
        entries[(j, i, k)] = -1
    return algebra.make_structure(3, entries)


@pytest.fixture
def rng():
    return sampling.make_rng(12345)
