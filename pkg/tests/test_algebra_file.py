"""Tests for algebra-file parsing and printing."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import structures
from kvpoisson.analysis import algebra
from kvpoisson.exceptions import AlgebraFileError, MalformedInputError
from kvpoisson.formats import algebra_file

FAMILY_TEXT = """\
# skew plane product, x0 = 1, y0 = 0
dim = 2

mu(1,2) = 1:1
mu(2,1) = 1:-1   # trailing comment
"""


def test_parse_family(family):
    assert algebra_file.parse_algebra(FAMILY_TEXT) == family(1, 0)


def test_parse_rationals_and_whitespace():
    mu = algebra_file.parse_algebra("dim=2\n  mu( 1 , 2 ) = 1:1/2 ,2: -3/4\n")
    assert mu.const(0, 1, 0) == Fraction(1, 2)
    assert mu.const(0, 1, 1) == Fraction(-3, 4)


def test_format_writes_nonzero_entries_in_order(family):
    assert algebra_file.format_algebra(family(Fraction(1, 2), 3)) == (
        "dim = 2\nmu(1,2) = 1:1/2, 2:3\nmu(2,1) = 1:-1/2, 2:-3\n"
    )


def test_format_zero_structure():
    assert algebra_file.format_algebra(algebra.zero_structure(3)) == "dim = 3\n"


@settings(max_examples=50, deadline=None)
@given(structures())
def test_print_parse_round_trip(mu):
    assert algebra_file.parse_algebra(algebra_file.format_algebra(mu, comment="round trip")) == mu


def test_index_out_of_range_reports_position():
    with pytest.raises(AlgebraFileError) as excinfo:
        algebra_file.parse_algebra("dim = 2\nmu(1,3) = 1:1\n")
    assert excinfo.value.line == 2
    assert excinfo.value.column == 6
    assert "line 2, column 6" in str(excinfo.value)


def test_duplicate_entry_rejected():
    with pytest.raises(AlgebraFileError) as excinfo:
        algebra_file.parse_algebra("dim = 2\nmu(1,2) = 1:1, 1:2\n")
    assert excinfo.value.line == 2
    assert excinfo.value.column == 16


def test_duplicate_across_lines_rejected():
    with pytest.raises(AlgebraFileError) as excinfo:
        algebra_file.parse_algebra("dim = 2\nmu(1,2) = 1:1\nmu(1,2) = 1:5\n")
    assert excinfo.value.line == 3


@pytest.mark.parametrize("text, line", [
    ("mu(1,1) = 1:1\n", 1),
    ("# nothing\n", 1),
    ("dim = 2\ndim = 3\n", 2),
    ("dim = 0\n", 1),
    ("dim = 2\nmu(1,2) = 1:0.5\n", 2),
    ("dim = 2\nmu(1,2) = 1:1/0\n", 2),
    ("dim = 2\nmu(1,2) =\n", 2),
    ("dim = 2\nmu(1,2) = 1:1,\n", 2),
    ("dim = 2\nnu(1,2) = 1:1\n", 2),
    ("dim = 2\nmu(a,2) = 1:1\n", 2),
])
def test_malformed_files(text, line):
    with pytest.raises(AlgebraFileError) as excinfo:
        algebra_file.parse_algebra(text)
    assert excinfo.value.line == line
    assert isinstance(excinfo.value, MalformedInputError)


def test_save_and_load(tmp_path, family):
    path = tmp_path / "plane.alg"
    algebra_file.save_algebra(family(2, 3), path, comment="x0 = 2, y0 = 3")
    assert path.read_text().startswith("# x0 = 2, y0 = 3\n")
    assert algebra_file.load_algebra(path) == family(2, 3)


def test_structure_entries(family):
    assert algebra_file.structure_entries(family(1, 0)) == [[1, 2, 1, 1], [2, 1, 1, -1]]
