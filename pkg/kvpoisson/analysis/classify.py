"""Polynomial systems in structure constants, their dim-2 varieties and grid scans.

The variables are the structure constants v_ijk (1-based), one sympy symbol per
slot. An identity generates one polynomial per (basis tuple, output
coordinate); the polynomials are the residuals of
:func:`kvpoisson.analysis.algebra.basis_residuals` evaluated on the symbolic
tensor, so audits and systems can never disagree on what an identity means.

On the skew plane family mu(e1, e2) = x e1 + y e2 every generated polynomial
is a homogeneous form in (x, y), so its real and rational zero sets are the
origin plus finitely many lines through it, and the variety is computed
exactly from gcds and rational roots.
"""

import collections
import concurrent.futures
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy
from tqdm import tqdm

from kvpoisson import config
from kvpoisson.analysis import algebra, exactla
from kvpoisson.exceptions import DimensionMismatchError, KvPoissonError, MalformedInputError, SizeGuardError
from kvpoisson.utils import sampling
from kvpoisson.utils.serialization import format_rational

LOGGER = logging.getLogger(__name__)

X, Y = sympy.symbols("x y")


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def variable_tensor(dim):
    """(dim, dim, dim) object array of the symbols v_ijk (1-based names)."""
    t = np.empty((dim, dim, dim), dtype=object)
    for i, j, k in itertools.product(range(dim), repeat=3):
        t[i, j, k] = sympy.Symbol(f"v{i + 1}{j + 1}{k + 1}")
    return t


def variables(dim):
    """All structure-constant symbols in (i, j, k) lexicographic order."""
    return list(variable_tensor(dim).flat)


def normalize(poly):
    """Scale a nonzero polynomial so its leading grlex coefficient is 1."""
    lc = poly.LC(order="grlex")
    return poly.exquo_ground(lc)


def format_polynomial(poly):
    """Canonical text of a polynomial, terms in graded lexicographic order."""
    return sympy.sstr(poly.as_expr(), order="grlex")


def _collect(exprs, gens):
    polys = []
    seen = set()
    for expr in exprs:
        expr = sympy.expand(expr)
        if expr == 0:
            continue
        poly = normalize(sympy.Poly(expr, *gens, domain=sympy.QQ))
        key = poly.as_expr()
        if key in seen:
            continue
        seen.add(key)
        polys.append(poly)
    return polys


def _system_axioms(axioms):
    axioms = set(axioms)
    if "kv_poisson" in axioms:
        axioms = (axioms - {"kv_poisson"}) | {"skew", "nilpotent"}
    unknown = axioms - set(config.SYSTEM_AXIOMS)
    if unknown:
        raise MalformedInputError(f"no polynomial system for: {', '.join(sorted(unknown))}")
    return [name for name in config.SYSTEM_AXIOMS if name in axioms]


def constraint_system(dim, axioms):
    """
    Polynomial system whose common zeros are the structures satisfying ``axioms``.

    Args:
        dim: dimension, at most config.CONSTRAINT_MAX_DIM
        axioms: subset of config.SYSTEM_AXIOMS ("kv_poisson" expands to skew
            and nilpotent)

    Returns:
        list of sympy Poly over QQ in :func:`variables`, each scaled to leading
        coefficient 1, duplicates removed, in generation order (axiom, basis
        tuple, output coordinate)

    Raises:
        SizeGuardError: dim above the guard
    """
    if dim > config.CONSTRAINT_MAX_DIM:
        raise SizeGuardError(
            f"constraint systems are limited to dimension {config.CONSTRAINT_MAX_DIM}, got {dim}",
            count=dim, limit=config.CONSTRAINT_MAX_DIM,
        )
    tensor = variable_tensor(dim)
    nested = None
    exprs = []
    for axiom in _system_axioms(axioms):
        if algebra.IDENTITY_ARITY[axiom] == 3 and nested is None:
            nested = algebra.nested_products(tensor)
        for _, residual in algebra.basis_residuals(tensor, axiom, nested):
            exprs.extend(residual)
    return _collect(exprs, variables(dim))


def skew_substitution(dim):
    """Substitution imposing skew-symmetry; dim 2 renames v121 -> x, v122 -> y."""
    t = variable_tensor(dim)
    subs = {}
    for i, j, k in itertools.product(range(dim), repeat=3):
        if i == j:
            subs[t[i, j, k]] = 0
        elif i > j:
            subs[t[i, j, k]] = -t[j, i, k]
    if dim == 2:
        rename = {t[0, 1, 0]: X, t[0, 1, 1]: Y}
        subs = {key: sympy.sympify(value).subs(rename) for key, value in subs.items()}
        subs.update(rename)
    return subs


def free_variables(dim):
    """Free symbols of the skew family: x, y for dim 2, v_ijk with i < j otherwise."""
    if dim == 2:
        return [X, Y]
    t = variable_tensor(dim)
    return [t[i, j, k] for i, j, k in itertools.product(range(dim), repeat=3) if i < j]


def reduce_to_skew_family(polys, dim):
    """Substitute the skew relations into a system; zero polynomials drop out."""
    subs = skew_substitution(dim)
    return _collect([p.as_expr().subs(subs, simultaneous=True) for p in polys], free_variables(dim))


def claimed_system():
    """The published per-term Jacobi system xy - x^2, x^2, xy in x, y."""
    return [sympy.Poly(sympy.sympify(text, locals={"x": X, "y": Y}), X, Y, domain=sympy.QQ)
            for text in config.CLAIMED_SYSTEM]


def _rational(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _coefficients(poly, monomials):
    coeffs = poly.as_dict()
    return [_rational(coeffs.get(m, 0)) for m in monomials]


def contains_combination(system, poly):
    """True iff ``poly`` is a Q-linear combination of the polynomials of ``system``."""
    monomials = sorted({m for p in list(system) + [poly] for m in p.as_dict()})
    if not monomials:
        return True
    vectors = [tuple(_coefficients(p, monomials)) for p in system]
    return exactla.in_span(vectors, tuple(_coefficients(poly, monomials)))


def is_monomial_system(polys):
    """True iff every generator is a single monomial times a unit."""
    return all(len(p.terms()) == 1 for p in polys)


# ---------------------------------------------------------------------------
# Varieties of the dim-2 skew family
# ---------------------------------------------------------------------------

def _direction(x, y):
    # first nonzero coordinate scaled to 1
    x, y = Fraction(x), Fraction(y)
    return (Fraction(1), y / x) if x != 0 else (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class Variety:
    """
    A homogeneous variety in the (x0, y0) plane: the origin, a union of
    rational lines through it, or the whole plane.
    """

    whole_plane: bool
    lines: tuple = ()

    def contains(self, x0, y0):
        x0, y0 = Fraction(x0), Fraction(y0)
        if self.whole_plane or (x0 == 0 and y0 == 0):
            return True
        return _direction(x0, y0) in self.lines

    def describe(self):
        if self.whole_plane:
            return "Q^2"
        if not self.lines:
            return "{(0,0)}"
        spans = [f"Q·({format_rational(a)},{format_rational(b)})" for a, b in self.lines]
        return " ∪ ".join(spans)

    def sample_points(self):
        """The origin and one nonzero point per line (three for the plane)."""
        points = [(Fraction(0), Fraction(0))]
        if self.whole_plane:
            return points + [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))]
        return points + list(self.lines)

    def to_dict(self):
        return {
            "description": self.describe(),
            "whole_plane": self.whole_plane,
            "lines": [list(line) for line in self.lines],
        }


CLAIMED_VARIETY = Variety(False, tuple(sorted(_direction(*line) for line in config.CLAIMED_SOLUTION_LINES)))


def solve_homogeneous_plane(polys):
    """
    Exact common zero set over Q of homogeneous polynomials in x, y.

    Args:
        polys: sympy Polys in (x, y); zero polynomials are ignored

    Returns:
        Variety
    """
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return Variety(True)
    for p in polys:
        if not p.is_homogeneous:
            raise MalformedInputError(f"not a homogeneous form: {format_polynomial(p)}")

    lines = set()
    if all(p.as_expr().subs({X: 1, Y: 0}) == 0 for p in polys):
        lines.add((Fraction(1), Fraction(0)))
    t = sympy.Symbol("t")
    dehomogenized = [sympy.Poly(p.as_expr().subs({X: t, Y: 1}), t, domain=sympy.QQ) for p in polys]
    g = dehomogenized[0]
    for p in dehomogenized[1:]:
        g = g.gcd(p)
    if g.degree() > 0:
        for root in g.ground_roots():
            lines.add(_direction(_rational(root), 1))
    return Variety(False, tuple(sorted(lines)))


@dataclass
class VarietyReport:
    """
    Generated system, exact dim-2 skew variety and discrepancy flags.

    Attributes:
        axioms: identities imposed on top of skew-symmetry
        system: generated polynomials in all structure constants
        reduced: the system on the skew family, in x = v121, y = v122
        variety: common zeros of ``reduced``
        per_axiom: variety of each identity alone
        readings: the cyclic (jacobi) and per-term (nilpotent) readings of
            the Jacobi identity, side by side
        monomial: every reduced generator is a monomial times a unit
        claimed_samples: audit verdicts on sample points of the claimed set
        solutions: sample points of ``variety``, each re-audited
        flags: discrepancies with the published system and solution set
    """

    axioms: list
    system: list
    reduced: list
    variety: Variety
    per_axiom: dict = field(default_factory=dict)
    readings: dict = field(default_factory=dict)
    monomial: bool = True
    claimed_samples: list = field(default_factory=list)
    solutions: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_dict(self):
        return {
            "axioms": list(self.axioms),
            "system": [format_polynomial(p) for p in self.system],
            "reduced_system": [format_polynomial(p) for p in self.reduced],
            "variety": self.variety.to_dict(),
            "per_axiom": {name: v.to_dict() for name, v in self.per_axiom.items()},
            "jacobi_readings": {name: v.to_dict() for name, v in self.readings.items()},
            "monomial": self.monomial,
            "claimed_samples": self.claimed_samples,
            "solutions": [list(point) for point in self.solutions],
            "flags": self.flags,
        }


def _variety_witness(claimed, computed):
    for point in claimed.sample_points():
        if not computed.contains(*point):
            return {"point": list(point), "in_claim": True, "in_computed": False}
    for point in computed.sample_points():
        if not claimed.contains(*point):
            return {"point": list(point), "in_claim": False, "in_computed": True}
    return None


def _skew_family_variety(axioms):
    system = constraint_system(2, ["skew"] + list(axioms))
    reduced = reduce_to_skew_family(system, 2)
    return system, reduced, solve_homogeneous_plane(reduced)


def dim2_skew_solve(axioms):
    """
    Exact variety of the skew plane family under extra identities.

    Args:
        axioms: subset of config.SYSTEM_AXIOMS without "skew"

    Returns:
        VarietyReport with flags against the published solution set
    """
    axioms = [name for name in _system_axioms(axioms) if name != "skew"]
    system, reduced, variety = _skew_family_variety(axioms)
    report = VarietyReport(axioms, system, reduced, variety, monomial=is_monomial_system(reduced))

    for name in axioms:
        report.per_axiom[name] = _skew_family_variety([name])[2]
    for reading, name in (("cyclic", "jacobi"), ("per_term", "nilpotent")):
        report.readings[reading] = report.per_axiom.get(name) or _skew_family_variety([name])[2]

    requested = ["skew"] + axioms
    for point in CLAIMED_VARIETY.sample_points()[1:]:
        audit = algebra.axiom_audit(algebra.family_structure(*point), requested)
        report.claimed_samples.append({"point": list(point), "verdicts": audit.verdicts})
    for point in variety.sample_points():
        if not algebra.passes(algebra.family_structure(*point), requested):
            LOGGER.error("variety point %s fails the audit for %s", point, requested)
            raise KvPoissonError(f"variety point {point} fails the audit for {requested}")
        report.solutions.append(point)

    witness = _variety_witness(CLAIMED_VARIETY, variety)
    if witness is not None:
        report.flags.append({
            "kind": "solution_set",
            "claim": config.CLAIMED_SOLUTION_SET,
            "computed": variety.describe(),
            "witness": witness,
        })
        LOGGER.warning("claimed solution set %s differs from computed %s", config.CLAIMED_SOLUTION_SET, variety.describe())

    if "nilpotent" in axioms:
        claimed = claimed_system()
        for poly in claimed:
            if not contains_combination(reduced, poly):
                report.flags.append({
                    "kind": "claimed_polynomial_not_generated",
                    "polynomial": format_polynomial(poly),
                })
        for poly in reduced:
            if not contains_combination(claimed, poly):
                report.flags.append({
                    "kind": "generator_missing_from_claim",
                    "polynomial": format_polynomial(poly),
                })
    return report


# ---------------------------------------------------------------------------
# Grid scans
# ---------------------------------------------------------------------------

def _free_slots(dim, axioms):
    if "skew" in axioms or "kv_poisson" in axioms:
        return [(i, j, k) for i, j, k in itertools.product(range(dim), repeat=3) if i < j]
    return list(itertools.product(range(dim), repeat=3))


def _build(dim, slots, values, skew):
    t = np.empty((dim, dim, dim), dtype=object)
    t.fill(Fraction(0))
    for (i, j, k), value in zip(slots, values):
        t[i, j, k] = value
        if skew:
            t[j, i, k] = -value
    return algebra.structure_from_tensor(t)


def _scan_chunk(args):
    dim, slots, skew, axioms, chunk = args
    survivors = []
    for values in chunk:
        mu = _build(dim, slots, values, skew)
        if algebra.passes(mu, axioms):
            survivors.append(mu)
    return len(chunk), survivors


def _chunks(candidates, *context):
    while True:
        chunk = list(itertools.islice(candidates, config.SCAN_CHUNK_SIZE))
        if not chunk:
            return
        yield context + (chunk,)


def _bounded_map(executor, fn, items, limit):
    """Like ``executor.map`` but with at most ``limit`` tasks pending; results keep input order."""
    pending = collections.deque()
    for item in items:
        pending.append(executor.submit(fn, item))
        if len(pending) >= limit:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


def canonical_scaling(mu):
    """Scale so the first nonzero constant is 1; the zero structure is unchanged."""
    pivot = next((c for c in mu.constants if c != 0), None)
    if pivot is None:
        return mu
    return algebra.scale(mu, 1 / pivot)


def grid_scan(dim, bound, denominator, axioms, dedup=True, workers=None, progress=False):
    """
    Brute-force scan of structure constants on a rational grid.

    Every free constant ranges over {-bound, ..., bound} in steps of
    1/denominator; with "skew" (or "kv_poisson") among the axioms only the
    constants c[i][j][k] with i < j are free.

    Args:
        dim: dimension, at most config.CONSTRAINT_MAX_DIM
        bound: grid bound
        denominator: grid step denominator
        axioms: names from config.ALL_AXIOMS a survivor must pass
        dedup: collapse structures that differ by a nonzero scaling
        workers: process count (default config.DEFAULT_SCAN_WORKERS)
        progress: show a tqdm progress bar

    Returns:
        survivors sorted by their constants; canonical scalings when dedup

    Raises:
        SizeGuardError: dim or grid size above the guards
    """
    if dim > config.CONSTRAINT_MAX_DIM:
        raise SizeGuardError(
            f"grid scans are limited to dimension {config.CONSTRAINT_MAX_DIM}, got {dim}",
            count=dim, limit=config.CONSTRAINT_MAX_DIM,
        )
    if bound < 0 or denominator < 1:
        raise MalformedInputError(f"invalid grid bound {bound} / denominator {denominator}")
    axioms = algebra.requested_axioms(axioms)
    slots = _free_slots(dim, axioms)
    skew = len(slots) < dim**3
    steps = 2 * bound * denominator + 1
    count = steps ** len(slots)
    if count > config.GRID_SIZE_GUARD:
        raise SizeGuardError(
            f"grid of {count} candidates exceeds the guard of {config.GRID_SIZE_GUARD}",
            count=count, limit=config.GRID_SIZE_GUARD,
        )
    values = [Fraction(p, denominator) for p in range(-bound * denominator, bound * denominator + 1)]
    candidates = itertools.product(values, repeat=len(slots))
    workers = config.DEFAULT_SCAN_WORKERS if workers is None else workers
    LOGGER.info("scanning %d candidates in dimension %d for %s", count, dim, ", ".join(axioms))

    chunks = _chunks(candidates, dim, slots, skew, axioms)
    survivors = []
    with tqdm(total=count, desc="Scanning grid", unit="structure", disable=not progress) as pbar:
        if workers > 1:
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
                limit = workers * config.SCAN_PENDING_PER_WORKER
                for done, found in _bounded_map(executor, _scan_chunk, chunks, limit):
                    survivors.extend(found)
                    pbar.update(done)
        else:
            for done, found in map(_scan_chunk, chunks):
                survivors.extend(found)
                pbar.update(done)

    if dedup:
        survivors = list({canonical_scaling(mu) for mu in survivors})
    survivors.sort(key=lambda mu: mu.constants)
    LOGGER.info("%d structures survive", len(survivors))
    return survivors


def scan_agreement(variety, survivors, bound, denominator):
    """
    Grid points of the skew plane family on which the variety and a
    non-deduplicated grid scan disagree.

    Returns:
        list of (x0, y0) points in exactly one of the two sets
    """
    kept = {(mu.const(0, 1, 0), mu.const(0, 1, 1)) for mu in survivors}
    values = [Fraction(p, denominator) for p in range(-bound * denominator, bound * denominator + 1)]
    return [
        (x0, y0)
        for x0, y0 in itertools.product(values, repeat=2)
        if variety.contains(x0, y0) != ((x0, y0) in kept)
    ]


# ---------------------------------------------------------------------------
# Family audits and pencils
# ---------------------------------------------------------------------------

def family_audit(x0, y0):
    """Audit the skew plane product with mu(e1, e2) = x0 e1 + y0 e2."""
    return algebra.axiom_audit(algebra.family_structure(x0, y0))


def pencil_closure_check(structures, axioms, samples=None, seed=None):
    """
    Test closure of a set of structures under pencils mu_i + lam mu_j.

    Args:
        structures: structures of equal dimension
        axioms: identities each combination must satisfy
        samples: number of random (i, j, lam) draws (default config.DEFAULT_PENCIL_SAMPLES)
        seed: seed of the private generator (default config.DEFAULT_SEED)

    Returns:
        dict with "closed", "samples" and "counterexamples" (indices, lam,
        failing axioms with witnesses)
    """
    samples = config.DEFAULT_PENCIL_SAMPLES if samples is None else samples
    seed = config.DEFAULT_SEED if seed is None else seed
    structures = list(structures)
    if len({mu.dim for mu in structures}) > 1:
        raise DimensionMismatchError("pencil closure needs structures of equal dimension")
    rng = sampling.make_rng(seed)
    counterexamples = []
    drawn = 0
    if structures:
        for _ in range(samples):
            i = rng.randrange(len(structures))
            j = rng.randrange(len(structures))
            lam = sampling.random_rational(
                rng, config.PENCIL_SCALAR_BOUND, config.PENCIL_SCALAR_DENOMINATOR, nonzero=True
            )
            drawn += 1
            audit = algebra.axiom_audit(algebra.combine(structures[i], lam, structures[j]), axioms)
            if not audit.passed():
                counterexamples.append({
                    "pair": [i, j],
                    "lambda": lam,
                    "failed": audit.failed(),
                    "witnesses": {name: w.to_dict() for name, w in audit.witnesses.items()},
                })
    if counterexamples:
        LOGGER.warning("pencil closure fails on %d of %d samples", len(counterexamples), drawn)
    return {"closed": not counterexamples, "samples": drawn, "counterexamples": counterexamples}
