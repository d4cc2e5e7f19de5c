"""Cochains and per-degree cohomology tables shared by the CE and KV complexes."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from kvpoisson.analysis import exactla

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cochain:
    """
    A q-multilinear map V^q -> M given by its coefficient table.

    Attributes:
        degree: q
        table: mapping (1-based input tuple, 1-based output index) -> nonzero
            Fraction, restricted to the canonical basis tuples of the complex
            (strictly increasing tuples for alternating cochains)
    """

    degree: int
    dim_in: int
    dim_out: int
    alternating: bool
    table: tuple

    def as_dict(self):
        return dict(self.table)

    def to_dict(self):
        return {
            "degree": self.degree,
            "alternating": self.alternating,
            "table": [[list(inputs), output, value] for (inputs, output), value in self.table],
        }


def decode_cochain(vector, basis, degree, dim_in, dim_out, alternating):
    """Turn a coordinate vector over ``basis`` into a Cochain."""
    entries = tuple(
        ((tuple(i + 1 for i in inputs), k + 1), Fraction(value))
        for (inputs, k), value in zip(basis, vector)
        if value != 0
    )
    return Cochain(degree, dim_in, dim_out, alternating, entries)


def encode_cochain(table, basis):
    """Coordinate vector of a cochain table {(1-based tuple, 1-based k): value}."""
    position = {(tuple(i + 1 for i in inputs), k + 1): idx for idx, (inputs, k) in enumerate(basis)}
    v = [Fraction(0)] * len(basis)
    for key, value in table.items():
        key = (tuple(key[0]), key[1])
        if key not in position:
            raise KeyError(f"{key} is not a basis coordinate of this cochain space")
        v[position[key]] = exactla.to_fraction(value)
    return tuple(v)


@dataclass(frozen=True)
class DegreeRow:
    degree: int
    cochain_dim: int
    rank: int
    kernel: int
    betti: int

    def to_dict(self):
        return {
            "degree": self.degree,
            "dim": self.cochain_dim,
            "rank": self.rank,
            "kernel": self.kernel,
            "betti": self.betti,
        }


@dataclass
class ComplexReport:
    """
    Dimensions, ranks, kernels and Betti numbers per degree.

    betti_q = dim ker delta^q - rank delta^(q-1), with rank delta^(-1) = 0.
    """

    complex: str
    dim: int
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def betti(self):
        return tuple(row.betti for row in self.rows)

    @property
    def ranks(self):
        return tuple(row.rank for row in self.rows)

    def to_dict(self):
        return {
            "complex": self.complex,
            "dim": self.dim,
            "degrees": [row.to_dict() for row in self.rows],
            "betti": list(self.betti),
            "notes": list(self.notes),
        }


def assemble_report(name, dim, deltas):
    """
    Fill a ComplexReport from the coboundary matrices.

    Args:
        name: "ce" or "kv"
        dim: dimension of the underlying space
        deltas: [delta^0, ..., delta^q_max]; delta^q has dim C^q columns

    Returns:
        ComplexReport
    """
    report = ComplexReport(name, dim)
    previous_rank = 0
    for q, delta in enumerate(deltas):
        cochain_dim = delta.shape[1]
        r = exactla.rank(delta)
        kernel = cochain_dim - r
        betti = kernel - previous_rank
        if betti < 0:
            LOGGER.warning("%s complex: negative Betti number in degree %d", name, q)
        report.rows.append(DegreeRow(q, cochain_dim, r, kernel, betti))
        LOGGER.info("%s degree %d: dim %d, rank %d, betti %d", name, q, cochain_dim, r, betti)
        previous_rank = r
    return report


def first_nonzero_column(product):
    """Index of the first column of ``product`` with a nonzero entry, or None."""
    for col in range(product.shape[1]):
        if any(product[row, col] != 0 for row in range(product.shape[0])):
            return col
    return None
