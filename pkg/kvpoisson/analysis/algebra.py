"""Structure-constant algebras: evaluation, identity residuals and axiom audits.

A product mu on a based vector space V = Q^n is stored through its structure
constants c[i][j][k], meaning mu(e_i, e_j) = sum_k c[i][j][k] e_k. Indices are
0-based in code; witnesses and files use 1-based indices.

Because every identity audited here is multilinear in its arguments, it
vanishes on all vectors as soon as it vanishes on all basis tuples, so audits
only ever look at basis tuples.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from kvpoisson import config
from kvpoisson.analysis import exactla
from kvpoisson.exceptions import DimensionMismatchError, MalformedInputError

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class BilinearStructure:
    """
    A bilinear product on Q^dim given by its structure constants.

    Attributes:
        dim: dimension n >= 1
        constants: flat row-major tuple of the n*n*n Fractions c[i][j][k]
    """

    dim: int
    constants: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise MalformedInputError(f"dimension must be at least 1, got {self.dim}")
        if len(self.constants) != self.dim**3:
            raise MalformedInputError(
                f"expected {self.dim**3} structure constants for dim {self.dim}, got {len(self.constants)}"
            )

    def const(self, i, j, k):
        """Structure constant c[i][j][k] (0-based)."""
        n = self.dim
        return self.constants[(i * n + j) * n + k]

    @property
    def tensor(self):
        """A fresh (n, n, n) numpy object array of the constants."""
        n = self.dim
        t = np.empty((n, n, n), dtype=object)
        for idx, value in enumerate(self.constants):
            t[idx // (n * n), (idx // n) % n, idx % n] = value
        return t

    def product(self, i, j):
        """mu(e_i, e_j) as a tuple (0-based indices)."""
        n = self.dim
        start = (i * n + j) * n
        return self.constants[start:start + n]

    def is_zero(self):
        return all(value == 0 for value in self.constants)


@dataclass(frozen=True)
class Witness:
    """A failing basis tuple (1-based) and its nonzero residual."""

    axiom: str
    indices: tuple
    residual: tuple

    def to_dict(self):
        return {"axiom": self.axiom, "indices": list(self.indices), "residual": list(self.residual)}


@dataclass
class AuditReport:
    """
    Pass/fail verdicts per axiom, with a witness for every failure.

    ``kv_poisson`` is skew and nilpotent; its witness is the one of whichever
    of the two fails first.
    """

    dim: int
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def passed(self, axioms=None):
        """True if every requested (default: every audited) axiom passes."""
        names = self.verdicts.keys() if axioms is None else axioms
        return all(self.verdicts[name] for name in names)

    def failed(self):
        return [name for name, ok in self.verdicts.items() if not ok]

    def to_dict(self):
        return {
            "dim": self.dim,
            "verdicts": dict(self.verdicts),
            "witnesses": {name: w.to_dict() for name, w in self.witnesses.items()},
        }


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def structure_from_tensor(tensor):
    """Build a structure from an (n, n, n) array or nested lists of rationals."""
    t = np.asarray(tensor, dtype=object)
    if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
        raise MalformedInputError(f"structure tensor must have shape (n, n, n), got {t.shape}")
    return BilinearStructure(t.shape[0], tuple(exactla.to_fraction(v) for v in t.flat))


def make_structure(dim, entries=None):
    """
    Build a structure from sparse 1-based entries.

    Args:
        dim: dimension
        entries: mapping (i, j, k) -> rational, 1-based; omitted entries are zero

    Returns:
        BilinearStructure
    """
    t = np.empty((dim, dim, dim), dtype=object)
    t.fill(Fraction(0))
    for (i, j, k), value in (entries or {}).items():
        if not all(1 <= idx <= dim for idx in (i, j, k)):
            raise MalformedInputError(f"index ({i},{j},{k}) out of range 1..{dim}")
        t[i - 1, j - 1, k - 1] = exactla.to_fraction(value)
    return structure_from_tensor(t)


def zero_structure(dim):
    """The zero product on Q^dim."""
    return BilinearStructure(dim, (Fraction(0),) * dim**3)


def family_structure(x0, y0):
    """
    The skew plane product mu(e1, e2) = x0 e1 + y0 e2 = -mu(e2, e1).

    Its matrix pair is ((0 x0; -x0 0), (0 y0; -y0 0)).
    """
    x0 = exactla.to_fraction(x0)
    y0 = exactla.to_fraction(y0)
    return make_structure(2, {(1, 2, 1): x0, (1, 2, 2): y0, (2, 1, 1): -x0, (2, 1, 2): -y0})


def matrix_pair(mu):
    """The presentation (G_1, ..., G_n) with G_k[i][j] = c[i][j][k]."""
    t = mu.tensor
    return [exactla.matrix(t[:, :, k].tolist()) for k in range(mu.dim)]


def from_matrix_pair(gammas):
    """Inverse of :func:`matrix_pair`."""
    gammas = [np.asarray(g, dtype=object) for g in gammas]
    n = len(gammas)
    if any(g.shape != (n, n) for g in gammas):
        raise MalformedInputError(f"expected {n} matrices of shape ({n}, {n})")
    return structure_from_tensor(np.stack(gammas, axis=2))


# ---------------------------------------------------------------------------
# Evaluation and residuals on vectors
# ---------------------------------------------------------------------------

def _check_vectors(mu, *vectors):
    out = []
    for v in vectors:
        if len(v) != mu.dim:
            raise DimensionMismatchError(f"vector of length {len(v)} for a structure of dimension {mu.dim}")
        out.append(tuple(exactla.to_fraction(x) for x in v))
    return out


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def evaluate(mu, u, v):
    """Bilinear extension: sum over i, j of u_i v_j mu(e_i, e_j)."""
    u, v = _check_vectors(mu, u, v)
    n = mu.dim
    out = [Fraction(0)] * n
    for i in range(n):
        if u[i] == 0:
            continue
        for j in range(n):
            coeff = u[i] * v[j]
            if coeff == 0:
                continue
            for k, c in enumerate(mu.product(i, j)):
                out[k] += coeff * c
    return tuple(out)


def associator(mu, a, b, c):
    """Ass(a, b, c) = mu(mu(a, b), c) - mu(a, mu(b, c))."""
    a, b, c = _check_vectors(mu, a, b, c)
    return _sub(evaluate(mu, evaluate(mu, a, b), c), evaluate(mu, a, evaluate(mu, b, c)))


def kv_anomaly(mu, a, b, c):
    """KV(a, b, c) = Ass(a, b, c) - Ass(b, a, c)."""
    return _sub(associator(mu, a, b, c), associator(mu, b, a, c))


def jacobiator(mu, u, v, w):
    """Cyclic sum mu(u, mu(v, w)) + mu(v, mu(w, u)) + mu(w, mu(u, v))."""
    u, v, w = _check_vectors(mu, u, v, w)
    total = evaluate(mu, u, evaluate(mu, v, w))
    total = _add(total, evaluate(mu, v, evaluate(mu, w, u)))
    return _add(total, evaluate(mu, w, evaluate(mu, u, v)))


def leibniz_residual(mu, u, v, w):
    """mu(mu(u, v), w) - mu(u, mu(v, w)) - mu(v, mu(u, w)), mu in both roles."""
    u, v, w = _check_vectors(mu, u, v, w)
    out = _sub(evaluate(mu, evaluate(mu, u, v), w), evaluate(mu, u, evaluate(mu, v, w)))
    return _sub(out, evaluate(mu, v, evaluate(mu, u, w)))


def nilpotency_residual(mu, w, u, v):
    """mu(w, mu(u, v))."""
    w, u, v = _check_vectors(mu, w, u, v)
    return evaluate(mu, w, evaluate(mu, u, v))


# ---------------------------------------------------------------------------
# Residuals on basis tuples
# ---------------------------------------------------------------------------

# arity of each identity's basis tuples
IDENTITY_ARITY = {
    "symmetric": 2,
    "skew": 2,
    "associative": 3,
    "kv": 3,
    "jacobi": 3,
    "leibniz_self": 3,
    "nilpotent": 3,
}


def nested_products(tensor):
    """
    Nested products of basis vectors.

    Returns:
        (P, Q) with P[a, b, c] = mu(mu(e_a, e_b), e_c) and
        Q[a, b, c] = mu(e_a, mu(e_b, e_c)), both of shape (n, n, n, n)
    """
    left = np.tensordot(tensor, tensor, axes=([2], [0]))
    right = np.tensordot(tensor, tensor, axes=([1], [2])).transpose(0, 2, 3, 1)
    return left, right


def basis_residuals(tensor, axiom, nested=None):
    """
    Residual of an identity on every basis tuple, in lexicographic order.

    Works on any (n, n, n) object tensor whose entries support ring
    arithmetic, so the same code audits Fractions and generates polynomial
    systems from sympy symbols.

    Args:
        tensor: structure constants
        axiom: one of IDENTITY_ARITY
        nested: precomputed :func:`nested_products`, optional

    Yields:
        (0-based index tuple, list of n residual components)
    """
    if axiom not in IDENTITY_ARITY:
        raise MalformedInputError(f"unknown identity {axiom!r}")
    n = tensor.shape[0]
    if IDENTITY_ARITY[axiom] == 2:
        sign = -1 if axiom == "symmetric" else 1
        for i, j in itertools.product(range(n), repeat=2):
            yield (i, j), [tensor[i, j, k] + sign * tensor[j, i, k] for k in range(n)]
        return

    p, q = nested if nested is not None else nested_products(tensor)
    for a, b, c in itertools.product(range(n), repeat=3):
        if axiom == "associative":
            res = p[a, b, c] - q[a, b, c]
        elif axiom == "kv":
            res = p[a, b, c] - q[a, b, c] - p[b, a, c] + q[b, a, c]
        elif axiom == "jacobi":
            res = q[a, b, c] + q[b, c, a] + q[c, a, b]
        elif axiom == "leibniz_self":
            res = p[a, b, c] - q[a, b, c] - q[b, a, c]
        else:
            res = q[a, b, c]
        yield (a, b, c), list(res)


def first_failure(mu, axiom, nested=None):
    """First failing basis tuple of an identity as a Witness, or None."""
    for indices, residual in basis_residuals(mu.tensor, axiom, nested):
        if any(x != 0 for x in residual):
            return Witness(axiom, tuple(i + 1 for i in indices), tuple(Fraction(x) for x in residual))
    return None


def requested_axioms(axioms):
    """Validate axiom names; returns them in config.ALL_AXIOMS order (default: all)."""
    if axioms is None:
        return list(config.ALL_AXIOMS)
    unknown = set(axioms) - set(config.ALL_AXIOMS)
    if unknown:
        raise MalformedInputError(f"unknown axioms: {', '.join(sorted(unknown))}")
    return [name for name in config.ALL_AXIOMS if name in set(axioms)]


def axiom_audit(mu, axioms=None, stop_on_failure=False):
    """
    Audit a structure against the identities on all basis tuples.

    Args:
        mu: the structure
        axioms: names to audit (default: all of config.ALL_AXIOMS)
        stop_on_failure: stop at the first failing axiom; used by grid scans

    Returns:
        AuditReport with the lexicographically first witness per failure
    """
    requested = requested_axioms(axioms)
    needed = [name for name in requested if name != "kv_poisson"]
    if "kv_poisson" in requested:
        needed += [name for name in ("skew", "nilpotent") if name not in needed]

    tensor = mu.tensor
    nested = None
    if any(IDENTITY_ARITY[name] == 3 for name in needed):
        nested = nested_products(tensor)

    report = AuditReport(mu.dim)
    results = {}
    for name in needed:
        witness = first_failure(mu, name, nested)
        results[name] = witness
        if witness is not None and stop_on_failure:
            break

    for name in requested:
        if name == "kv_poisson":
            witness = results.get("skew") or results.get("nilpotent")
            if witness is None and not {"skew", "nilpotent"} <= results.keys():
                continue
        elif name in results:
            witness = results[name]
        else:
            continue
        report.verdicts[name] = witness is None
        if witness is not None:
            report.witnesses[name] = witness
    return report


def passes(mu, axioms):
    """True if ``mu`` passes every axiom in ``axioms``."""
    report = axiom_audit(mu, axioms, stop_on_failure=True)
    return len(report.verdicts) == len(set(axioms)) and report.passed()


# ---------------------------------------------------------------------------
# Operations on structures
# ---------------------------------------------------------------------------

def combine(mu1, lam, mu2):
    """The pencil member mu1 + lam * mu2."""
    if mu1.dim != mu2.dim:
        raise DimensionMismatchError(f"cannot combine structures of dimensions {mu1.dim} and {mu2.dim}")
    lam = exactla.to_fraction(lam)
    return BilinearStructure(mu1.dim, tuple(a + lam * b for a, b in zip(mu1.constants, mu2.constants)))


def scale(mu, lam):
    """lam * mu."""
    lam = exactla.to_fraction(lam)
    return BilinearStructure(mu.dim, tuple(lam * c for c in mu.constants))


def antisymmetrize(mu):
    """Skew part: constants (c[i][j][k] - c[j][i][k]) / 2."""
    t = mu.tensor
    return structure_from_tensor((t - t.transpose(1, 0, 2)) / 2)


def symmetrize(mu):
    """Symmetric part: constants (c[i][j][k] + c[j][i][k]) / 2."""
    t = mu.tensor
    return structure_from_tensor((t + t.transpose(1, 0, 2)) / 2)


def change_basis(mu, p):
    """
    Conjugate a product by an invertible matrix.

    Args:
        mu: the structure
        p: invertible dim x dim matrix (numpy object array or nested lists)

    Returns:
        structure of mu'(u, v) = p^-1 mu(p u, p v)

    Raises:
        SingularMatrixError: p is singular
        DimensionMismatchError: p is not dim x dim
    """
    p = exactla.matrix(p) if not isinstance(p, np.ndarray) else p
    if p.shape != (mu.dim, mu.dim):
        raise DimensionMismatchError(f"basis change of shape {p.shape} for dimension {mu.dim}")
    p_inv = exactla.inverse(p)
    n = mu.dim
    columns = [tuple(p[:, i]) for i in range(n)]
    t = np.empty((n, n, n), dtype=object)
    for i, j in itertools.product(range(n), repeat=2):
        t[i, j, :] = exactla.matvec(p_inv, evaluate(mu, columns[i], columns[j]))
    return structure_from_tensor(t)


def is_degenerate(mu):
    """True if some nonzero u has mu(u, v) = 0 for every v."""
    n = mu.dim
    rows = [[mu.const(i, j, k) for i in range(n)] for j in range(n) for k in range(n)]
    return exactla.rank(exactla.matrix(rows)) < n
