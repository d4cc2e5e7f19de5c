"""KV complex of a Koszul-Vinberg algebra acting on itself.

Cochains of degree q are arbitrary (non-alternating) q-linear maps V^q -> V,
indexed by (q-tuple of inputs, output index) with tuples in lexicographic
order and the output innermost, so dim C^q = n^q * n.

For q >= 1 the coboundary is

    (delta f)(a_1, ..., a_(q+1)) = sum_(j=1..q) (-1)^j [ (a_j . f)(a_1, .., ^a_j, .., a_(q+1))
                                                      + (e_q(a_j)(f . a_(q+1)))(a_1, .., ^a_j, .., ^a_(q+1)) ]

with the two actions and the insertion operator read as

    (a . f)(x_1, .., x_q) = mu(a, f(x_1, .., x_q)) - sum_i f(x_1, .., mu(a, x_i), .., x_q)
    (f . a)(x_1, .., x_q) = mu(f(x_1, .., x_q), a)
    e_r(a) g              = g with a inserted at slot r

Written formula as commonly printed, for comparison: the left action is given
as "a(f(a_1, .., a_q)) - sum_j f(a_1, .., a_j, .., a_q)" with no product
inside the sum, and e_r(a) repeats its argument list; the readings above are
the ones under which delta^2 = 0 on every KV algebra, which
:func:`kv_square_zero_check` verifies.

In degree 0 the formula is empty; delta^0 xi (a) = mu(a, xi) - mu(xi, a).
The square delta^1 delta^0 xi equals the associator (a, b, xi), so the report
uses the invariant subspace J(V) = {xi : (a, b, xi) = 0 for all a, b} as its
degree-0 space.
"""

import itertools
import logging

from kvpoisson import config
from kvpoisson.analysis import algebra, exactla
from kvpoisson.cohomology import complexes
from kvpoisson.exceptions import ComplexPreconditionError, KvPoissonError, MalformedInputError, SizeGuardError

LOGGER = logging.getLogger(__name__)


def kv_cochain_dim(n, q):
    """dim C^q = n^q * n."""
    if q < 0:
        return 0
    return n**q * n


def kv_basis(n, q):
    """Canonical basis of C^q as (0-based input tuple, 0-based output) pairs."""
    return [(inputs, k) for inputs in itertools.product(range(n), repeat=q) for k in range(n)]


def _tuple_index(inputs, n):
    idx = 0
    for x in inputs:
        idx = idx * n + x
    return idx


def _delta_zero(mu):
    n = mu.dim
    c = mu.tensor
    delta = exactla.zeros(n * n, n)
    for a, xi, o in itertools.product(range(n), repeat=3):
        delta[a * n + o, xi] = c[a, xi, o] - c[xi, a, o]
    return delta


def kv_delta_matrix(mu, q):
    """
    Matrix of delta^q : C^q -> C^(q+1) in the canonical bases.

    Args:
        mu: the product
        q: degree; q = 0 gives xi -> (a -> mu(a, xi) - mu(xi, a))

    Returns:
        numpy object matrix of shape (n^(q+2), n^(q+1))
    """
    if q < 0:
        raise MalformedInputError(f"degree must be non-negative, got {q}")
    if q == 0:
        return _delta_zero(mu)
    n = mu.dim
    c = mu.tensor
    delta = exactla.zeros(kv_cochain_dim(n, q + 1), kv_cochain_dim(n, q))

    def add(args, out, inputs, k, value):
        delta[_tuple_index(args, n) * n + out, _tuple_index(inputs, n) * n + k] += value

    for args in itertools.product(range(n), repeat=q + 1):
        last = args[q]
        for j in range(1, q + 1):
            sign = -1 if j % 2 else 1
            a = args[j - 1]
            rest = args[:j - 1] + args[j:]
            # mu(a, f(rest))
            for k, o in itertools.product(range(n), repeat=2):
                if c[a, k, o] != 0:
                    add(args, o, rest, k, sign * c[a, k, o])
            # - sum_i f(rest with mu(a, rest_i) in slot i)
            for i, x in enumerate(rest):
                for l in range(n):
                    if c[a, x, l] == 0:
                        continue
                    inputs = rest[:i] + (l,) + rest[i + 1:]
                    for k in range(n):
                        add(args, k, inputs, k, -sign * c[a, x, l])
            # mu(f(args without a_j and a_(q+1), then a_j in slot q), a_(q+1))
            inserted = args[:j - 1] + args[j:q] + (a,)
            for k, o in itertools.product(range(n), repeat=2):
                if c[k, last, o] != 0:
                    add(args, o, inserted, k, sign * c[k, last, o])
    return delta


def kv_invariant_subspace(mu):
    """
    Basis of J(V) = {xi : mu(mu(a, b), xi) = mu(a, mu(b, xi)) for all a, b}.

    Returns:
        list of coordinate tuples
    """
    n = mu.dim
    p, q = algebra.nested_products(mu.tensor)
    rows = [
        [p[a, b, xi, o] - q[a, b, xi, o] for xi in range(n)]
        for a, b, o in itertools.product(range(n), repeat=3)
    ]
    return exactla.nullspace_basis(exactla.matrix(rows, n))


def _invariant_inclusion(mu):
    basis = kv_invariant_subspace(mu)
    inclusion = exactla.zeros(mu.dim, len(basis))
    for col, v in enumerate(basis):
        for row, value in enumerate(v):
            inclusion[row, col] = value
    return inclusion


def kv_square_zero_check(mu, q):
    """
    Whether delta^(q+1) delta^q = 0 exactly.

    In degree 0 the check runs on J(V), the degree-0 space of the report.

    Returns:
        (ok, witness) where witness is the first basis Cochain (a vector of
        J(V) in degree 0) whose image is nonzero, or None
    """
    n = mu.dim
    first = kv_delta_matrix(mu, q)
    basis = kv_basis(n, q)
    if q == 0:
        inclusion = _invariant_inclusion(mu)
        first = exactla.matmul(first, inclusion)
    product = exactla.matmul(kv_delta_matrix(mu, q + 1), first)
    col = complexes.first_nonzero_column(product)
    if col is None:
        return True, None
    if q == 0:
        vector = tuple(inclusion[:, col])
    else:
        vector = [0] * len(basis)
        vector[col] = 1
    return False, complexes.decode_cochain(vector, basis, q, n, n, False)


def kv_complex_report(mu, q_max=None):
    """
    Cohomology table of the KV complex for degrees 0..q_max.

    Args:
        mu: the product; its KV anomaly must vanish on every basis triple
        q_max: highest degree, at most config.KV_MAX_Q; the square-zero gate
            runs on every degree 0..q_max

    Returns:
        ComplexReport; degree 0 is J(V)

    Raises:
        ComplexPreconditionError: mu is not KV
        MalformedInputError: q_max is negative
        SizeGuardError: q_max above config.KV_MAX_Q
        KvPoissonError: the square-zero gate fails on a KV input
    """
    q_max = config.DEFAULT_KV_Q_MAX if q_max is None else q_max
    if q_max < 0:
        raise MalformedInputError(f"highest degree must be non-negative, got {q_max}")
    if q_max > config.KV_MAX_Q:
        raise SizeGuardError(
            f"KV complex limited to degree {config.KV_MAX_Q}, got {q_max}",
            count=q_max, limit=config.KV_MAX_Q,
        )
    witness = algebra.first_failure(mu, "kv")
    if witness is not None:
        LOGGER.warning("refusing KV complex: kv fails at %s", witness.indices)
        raise ComplexPreconditionError(
            f"KV complex requires a KV algebra: kv fails at {witness.indices} "
            f"with residual {[str(x) for x in witness.residual]}",
            axiom="kv", witness=witness.indices, residual=witness.residual,
        )

    for q in range(q_max + 1):
        ok, failing = kv_square_zero_check(mu, q)
        if not ok:
            LOGGER.error("square-zero gate failed in degree %d at %s", q, failing.table)
            raise KvPoissonError(
                f"KV coboundary does not square to zero in degree {q} on a KV input; "
                f"failing cochain {failing.table}"
            )

    inclusion = _invariant_inclusion(mu)
    deltas = [exactla.matmul(kv_delta_matrix(mu, 0), inclusion)]
    deltas += [kv_delta_matrix(mu, q) for q in range(1, q_max + 1)]
    report = complexes.assemble_report("kv", mu.dim, deltas)
    if inclusion.shape[1] != mu.dim:
        report.notes.append(f"degree 0 restricted to J(V) of dimension {inclusion.shape[1]}")
    return report


def kv_cocycle_basis(mu, q):
    """Basis of Ker delta^q as cochains; in degree 0 the kernel is taken inside J(V)."""
    basis = kv_basis(mu.dim, q)
    if q == 0:
        inclusion = _invariant_inclusion(mu)
        restricted = exactla.matmul(kv_delta_matrix(mu, 0), inclusion)
        return [
            complexes.decode_cochain(exactla.matvec(inclusion, v), basis, 0, mu.dim, mu.dim, False)
            for v in exactla.nullspace_basis(restricted)
        ]
    return [
        complexes.decode_cochain(v, basis, q, mu.dim, mu.dim, False)
        for v in exactla.nullspace_basis(kv_delta_matrix(mu, q))
    ]


def kv_coordinates(n, q, table):
    """Coordinate vector in C^q of a cochain table {(1-based inputs, 1-based k): value}."""
    return complexes.encode_cochain(table, kv_basis(n, q))
