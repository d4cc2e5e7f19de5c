"""Chevalley-Eilenberg complex of a bracket acting on a module (default: itself).

Cochains of degree q are alternating q-linear maps V^q -> M. The canonical
basis of C^q is indexed by (strictly increasing q-tuple of inputs, output
index k), tuples in lexicographic order with k innermost; C^0 = M.

With arguments numbered a_1 .. a_(q+1), the coboundary is

    (delta f)(a_1, ..., a_(q+1)) = sum_i (-1)^(i+1) rho(a_i) f(..., ^a_i, ...)
                                 + sum_(i<j) (-1)^(i+j) f(mu(a_i, a_j), ..., ^a_i, ..., ^a_j, ...)

Numbering from a_0 instead changes delta by an overall sign only, which does
not affect any rank. The default action is adjoint, rho(a) xi = mu(a, xi).
"""

import itertools
import logging
from math import comb

import numpy as np

from kvpoisson import config
from kvpoisson.analysis import algebra, exactla
from kvpoisson.cohomology import complexes
from kvpoisson.exceptions import ComplexPreconditionError, MalformedInputError, SizeGuardError

LOGGER = logging.getLogger(__name__)


def ce_cochain_dim(n, q, m=None):
    """dim C^q = binom(n, q) * m (m defaults to n); 0 when q > n."""
    m = n if m is None else m
    if q < 0 or q > n:
        return 0
    return comb(n, q) * m


def ce_basis(n, q, m=None):
    """Canonical basis of C^q as (0-based input tuple, 0-based output) pairs."""
    m = n if m is None else m
    return [(inputs, k) for inputs in itertools.combinations(range(n), q) for k in range(m)]


def _action_tensor(mu, action):
    if action is None:
        return mu.tensor
    action = np.asarray(action, dtype=object)
    n = mu.dim
    if action.ndim != 3 or action.shape[0] != n or action.shape[1] != action.shape[2]:
        raise MalformedInputError(f"action tensor must have shape ({n}, m, m), got {action.shape}")
    out = np.empty(action.shape, dtype=object)
    for idx, value in np.ndenumerate(action):
        out[idx] = exactla.to_fraction(value)
    return out


def _sort_with_sign(indices):
    # sign of the permutation sorting ``indices``; 0 when an index repeats
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(1 for a, b in itertools.combinations(indices, 2) if a > b)
    return (-1) ** inversions, tuple(sorted(indices))


def ce_delta_matrix(mu, q, action=None):
    """
    Matrix of delta^q : C^q -> C^(q+1) in the canonical bases.

    Args:
        mu: the bracket
        q: degree
        action: optional (n, m, m) tensor, e_i . m_j = sum_k action[i][j][k] m_k;
            defaults to the adjoint action of mu

    Returns:
        numpy object matrix of shape (dim C^(q+1), dim C^q); a matrix with no
        columns when q > dim
    """
    rho = _action_tensor(mu, action)
    n = mu.dim
    m = rho.shape[1]
    c = mu.tensor
    rows = ce_cochain_dim(n, q + 1, m)
    cols = ce_cochain_dim(n, q, m)
    delta = exactla.zeros(rows, cols)
    if rows == 0 or cols == 0:
        return delta

    column_of = {inputs: idx for idx, inputs in enumerate(itertools.combinations(range(n), q))}
    for row_block, args in enumerate(itertools.combinations(range(n), q + 1)):
        # action terms: sign (-1)^(i+1) with 1-based i
        for pos, a in enumerate(args):
            sign = 1 if pos % 2 == 0 else -1
            rest = args[:pos] + args[pos + 1:]
            col_block = column_of[rest]
            for k in range(m):
                for o in range(m):
                    if rho[a, k, o] != 0:
                        delta[row_block * m + o, col_block * m + k] += sign * rho[a, k, o]
        # bracket terms: sign (-1)^(i+j) with 1-based i < j
        for (pi, a), (pj, b) in itertools.combinations(enumerate(args), 2):
            sign = 1 if (pi + pj) % 2 == 0 else -1
            rest = tuple(x for idx, x in enumerate(args) if idx not in (pi, pj))
            for l in range(n):
                if c[a, b, l] == 0:
                    continue
                perm_sign, inputs = _sort_with_sign((l,) + rest)
                if perm_sign == 0:
                    continue
                col_block = column_of[inputs]
                for k in range(m):
                    delta[row_block * m + k, col_block * m + k] += sign * perm_sign * c[a, b, l]
    return delta


def ce_lie_witness(mu, action=None):
    """
    First reason the complex is not defined, or None.

    Checks skew-symmetry and the Jacobi identity of mu, and for an explicit
    action that rho([e_a, e_b]) = rho(e_a) rho(e_b) - rho(e_b) rho(e_a).

    Returns:
        Witness or None
    """
    nested = algebra.nested_products(mu.tensor)
    for axiom in ("skew", "jacobi"):
        witness = algebra.first_failure(mu, axiom, nested)
        if witness is not None:
            return witness
    if action is None:
        return None
    rho = _action_tensor(mu, action)
    n = mu.dim
    mats = [exactla.matrix(rho[a].T.tolist()) for a in range(n)]
    for a, b in itertools.product(range(n), repeat=2):
        bracket = sum((mu.const(a, b, l) * mats[l] for l in range(n)), exactla.zeros(*mats[0].shape))
        commutator = exactla.matmul(mats[a], mats[b]) - exactla.matmul(mats[b], mats[a])
        residual = bracket - commutator
        if not exactla.is_zero(residual):
            return algebra.Witness("representation", (a + 1, b + 1), tuple(residual.flat))
    return None


def ce_square_zero_check(mu, q, action=None):
    """
    Whether delta^(q+1) delta^q = 0 exactly.

    Returns:
        (ok, witness) where witness is the first basis Cochain whose image
        under delta^(q+1) delta^q is nonzero, or None
    """
    rho = _action_tensor(mu, action)
    m = rho.shape[1]
    product = exactla.matmul(ce_delta_matrix(mu, q + 1, action), ce_delta_matrix(mu, q, action))
    col = complexes.first_nonzero_column(product)
    if col is None:
        return True, None
    basis = ce_basis(mu.dim, q, m)
    unit = [0] * len(basis)
    unit[col] = 1
    return False, complexes.decode_cochain(unit, basis, q, mu.dim, m, True)


def ce_complex_report(mu, q_max=None, action=None):
    """
    Cohomology table of the CE complex for degrees 0..q_max.

    Args:
        mu: the bracket; must be skew and satisfy the Jacobi identity, since
            cochains are alternating
        q_max: highest degree (default: mu.dim)
        action: optional action tensor (see :func:`ce_delta_matrix`)

    Returns:
        ComplexReport

    Raises:
        ComplexPreconditionError: mu is not a Lie bracket, or action is not a
            representation
        MalformedInputError: q_max is negative
        SizeGuardError: mu.dim exceeds config.CE_MAX_DIM
    """
    if mu.dim > config.CE_MAX_DIM:
        raise SizeGuardError(
            f"CE complex limited to dimension {config.CE_MAX_DIM}, got {mu.dim}",
            count=mu.dim, limit=config.CE_MAX_DIM,
        )
    q_max = mu.dim if q_max is None else q_max
    if q_max < 0:
        raise MalformedInputError(f"highest degree must be non-negative, got {q_max}")
    witness = ce_lie_witness(mu, action)
    if witness is not None:
        LOGGER.warning("refusing CE complex: %s fails at %s", witness.axiom, witness.indices)
        raise ComplexPreconditionError(
            f"CE complex requires a skew-symmetric bracket satisfying the Jacobi identity: "
            f"{witness.axiom} fails at {witness.indices} with residual {[str(x) for x in witness.residual]}",
            axiom=witness.axiom, witness=witness.indices, residual=witness.residual,
        )
    deltas = [ce_delta_matrix(mu, q, action) for q in range(q_max + 1)]
    report = complexes.assemble_report("ce", mu.dim, deltas)
    if action is not None:
        report.notes.append("explicit action tensor")
    return report


def ce_cocycle_basis(mu, q, action=None):
    """
    Basis of Ker delta^q as cochains.

    Returns:
        list of Cochain, decoded from nullspace_basis(ce_delta_matrix(mu, q))
    """
    rho = _action_tensor(mu, action)
    m = rho.shape[1]
    basis = ce_basis(mu.dim, q, m)
    delta = ce_delta_matrix(mu, q, action)
    return [
        complexes.decode_cochain(v, basis, q, mu.dim, m, True)
        for v in exactla.nullspace_basis(delta)
    ]


def ce_coordinates(n, q, table, m=None):
    """Coordinate vector in C^q of a cochain table {(1-based inputs, 1-based k): value}."""
    return complexes.encode_cochain(table, ce_basis(n, q, m))
