"""Reading and writing algebra files.

An algebra file declares the dimension and the nonzero structure constants::

    # the skew plane product with x0 = 1, y0 = 0
    dim = 2
    mu(1,2) = 1:1
    mu(2,1) = 1:-1

``mu(i,j) = k1:q1, k2:q2`` sets c[i][j][k1] = q1 and c[i][j][k2] = q2; omitted
constants are zero. The exact grammar is given in the README.
"""

import re
from fractions import Fraction

from kvpoisson.analysis import algebra
from kvpoisson.exceptions import AlgebraFileError
from kvpoisson.utils.serialization import format_rational

DIM_RE = re.compile(r"\s*dim\s*=\s*(?P<n>\S*)\s*$")
ENTRY_RE = re.compile(r"\s*mu\s*\(\s*(?P<i>[^,)\s]*)\s*,\s*(?P<j>[^)\s]*)\s*\)\s*=(?P<rhs>.*)$")
TERM_RE = re.compile(r"\s*(?P<k>[^:\s]*)\s*:\s*(?P<q>\S*)\s*$")
INDEX_RE = re.compile(r"[0-9]+$")
RATIONAL_RE = re.compile(r"[+-]?[0-9]+(/[0-9]+)?$")


def _index(text, dim, line, column):
    if not INDEX_RE.match(text):
        raise AlgebraFileError(f"expected an index, got {text!r}", line, column)
    value = int(text)
    if not 1 <= value <= dim:
        raise AlgebraFileError(f"index {value} out of range 1..{dim}", line, column)
    return value


def _rational(text, line, column):
    if not RATIONAL_RE.match(text):
        raise AlgebraFileError(f"expected a rational p/q or integer, got {text!r}", line, column)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise AlgebraFileError(f"zero denominator in {text!r}", line, column) from None


def _parse_terms(rhs, offset, dim, line):
    # offset: 0-based column where rhs starts
    terms = []
    start = 0
    for part in rhs.split(","):
        column = offset + start + 1
        m = TERM_RE.match(part)
        if not m or not m.group("k") or not m.group("q"):
            raise AlgebraFileError("expected a term k:q", line, column + len(part) - len(part.lstrip()))
        k = _index(m.group("k"), dim, line, column + m.start("k"))
        q = _rational(m.group("q"), line, column + m.start("q"))
        terms.append((k, q, column + m.start("k")))
        start += len(part) + 1
    return terms


def parse_algebra(text):
    """
    Parse algebra-file text into a structure.

    Args:
        text: file contents

    Returns:
        BilinearStructure

    Raises:
        AlgebraFileError: with the 1-based line and column of the first error
    """
    dim = None
    entries = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue

        m = DIM_RE.match(content)
        if m:
            column = m.start("n") + 1
            if dim is not None:
                raise AlgebraFileError("dimension declared twice", line_no, 1)
            if not INDEX_RE.match(m.group("n")) or int(m.group("n")) < 1:
                raise AlgebraFileError(f"dimension must be a positive integer, got {m.group('n')!r}", line_no, column)
            dim = int(m.group("n"))
            continue

        m = ENTRY_RE.match(content)
        if not m:
            column = len(content) - len(content.lstrip()) + 1
            raise AlgebraFileError("expected 'dim = n' or 'mu(i,j) = k:q, ...'", line_no, column)
        if dim is None:
            raise AlgebraFileError("entry before the 'dim = n' declaration", line_no, m.start() + 1)
        i = _index(m.group("i"), dim, line_no, m.start("i") + 1)
        j = _index(m.group("j"), dim, line_no, m.start("j") + 1)
        if not m.group("rhs").strip():
            raise AlgebraFileError("expected a term k:q", line_no, m.end("rhs") + 1)
        for k, q, column in _parse_terms(m.group("rhs"), m.start("rhs"), dim, line_no):
            if (i, j, k) in entries:
                raise AlgebraFileError(f"duplicate entry for mu({i},{j}) component {k}", line_no, column)
            entries[(i, j, k)] = q

    if dim is None:
        raise AlgebraFileError("missing 'dim = n' declaration", 1, 1)
    return algebra.make_structure(dim, entries)


def format_algebra(mu, comment=None):
    """Algebra-file text of a structure; only nonzero constants are written."""
    lines = []
    if comment:
        lines.extend(f"# {text}" for text in comment.splitlines())
    lines.append(f"dim = {mu.dim}")
    n = mu.dim
    for i in range(n):
        for j in range(n):
            terms = [
                f"{k + 1}:{format_rational(value)}"
                for k, value in enumerate(mu.product(i, j))
                if value != 0
            ]
            if terms:
                lines.append(f"mu({i + 1},{j + 1}) = {', '.join(terms)}")
    return "\n".join(lines) + "\n"


def structure_entries(mu):
    """Nonzero constants as [i, j, k, value] rows (1-based), for report echoes."""
    n = mu.dim
    return [
        [i + 1, j + 1, k + 1, mu.const(i, j, k)]
        for i in range(n) for j in range(n) for k in range(n)
        if mu.const(i, j, k) != 0
    ]


def load_algebra(path):
    """Read and parse an algebra file; invalid UTF-8 is a parse error."""
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise AlgebraFileError(
            f"invalid UTF-8 byte 0x{data[e.start]:02x} at offset {e.start}", line, column
        ) from None
    return parse_algebra(text)


def save_algebra(mu, path, comment=None):
    """Write a structure as an algebra file."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_algebra(mu, comment))
