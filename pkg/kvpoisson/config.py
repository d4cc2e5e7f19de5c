"""Configuration settings for the KV-Poisson workbench."""

from fractions import Fraction

# Structured report schema
SCHEMA_VERSION = 1

# Randomness (pencil sampling, reference suite)
DEFAULT_SEED = 20231
DEFAULT_PENCIL_SAMPLES = 50
PENCIL_SCALAR_BOUND = 5
PENCIL_SCALAR_DENOMINATOR = 4

# Size guards
GRID_SIZE_GUARD = 10**7
CONSTRAINT_MAX_DIM = 3
CE_MAX_DIM = 6
KV_MAX_Q = 3
DEFAULT_KV_Q_MAX = 3

# Grid scans
DEFAULT_SCAN_WORKERS = 1
SCAN_CHUNK_SIZE = 512
SCAN_PENDING_PER_WORKER = 2

# Axiom names, in audit order
ALL_AXIOMS = (
    "symmetric",
    "skew",
    "associative",
    "kv",
    "jacobi",
    "leibniz_self",
    "nilpotent",
    "kv_poisson",
)

# Axioms that have a polynomial system in the structure constants
SYSTEM_AXIOMS = ("symmetric", "skew", "associative", "kv", "jacobi", "leibniz_self", "nilpotent")

# Full Poisson battery used by classification runs
POISSON_AXIOMS = ("skew", "nilpotent", "jacobi", "leibniz_self")

# Published solution set of the dim-2 skew system, audited rather than assumed
CLAIMED_SOLUTION_SET = "F=(R×{0})∪({0}×R)"
CLAIMED_SOLUTION_LINES = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))

# Published per-term Jacobi system in x = c[1][2][1], y = c[1][2][2]
CLAIMED_SYSTEM = ("x*y - x**2", "x**2", "x*y")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
