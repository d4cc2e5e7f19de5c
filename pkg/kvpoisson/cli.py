"""Command Line Interface for the KV-Poisson workbench."""

import argparse
import logging
import sys

from kvpoisson import __version__, config, reference_suite
from kvpoisson.analysis import algebra, classify, exactla
from kvpoisson.cohomology import ce_cohomology, kv_cohomology
from kvpoisson.exceptions import ComplexPreconditionError, KvPoissonError, MalformedInputError, SizeGuardError
from kvpoisson.formats import algebra_file, report as reports
from kvpoisson.utils.serialization import load_report, save_report

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2


def parse_axioms(text):
    """Comma-separated axiom names; hyphens are accepted for underscores."""
    names = [name.strip().replace("-", "_") for name in text.split(",") if name.strip()]
    return algebra.requested_axioms(names)


def parse_grid(text):
    """``BOUND/DEN`` (or just ``BOUND``) as a pair of naturals."""
    bound, _, denominator = text.partition("/")
    try:
        bound, denominator = int(bound), int(denominator or 1)
    except ValueError:
        raise MalformedInputError(f"grid must be BOUND/DEN, got {text!r}") from None
    if bound < 0 or denominator < 1:
        raise MalformedInputError(f"grid must be BOUND/DEN with BOUND >= 0 and DEN >= 1, got {text!r}")
    return bound, denominator


def non_negative_int(text):
    """argparse type for degrees: a natural number."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def cmd_check(args):
    """Audit an algebra file against the requested axioms."""
    mu = algebra_file.load_algebra(args.file)
    axioms = parse_axioms(args.axioms) if args.axioms else None
    audit = algebra.axiom_audit(mu, axioms)
    run = reports.new_report("check", file=args.file, axioms=axioms or list(config.ALL_AXIOMS))
    reports.add_section(run, "structure", reports.structure_section(mu))
    reports.add_section(run, "audit", audit)
    return run, EXIT_OK if audit.passed() else EXIT_FAILURE


def _complex_matrices(mu, complex_name, q_max):
    if complex_name == "ce":
        return [ce_cohomology.ce_delta_matrix(mu, q) for q in range(q_max + 1)]
    return [kv_cohomology.kv_delta_matrix(mu, q) for q in range(q_max + 1)]


def cmd_cohomology(args):
    """Per-degree cohomology table of the CE or KV complex of an algebra file."""
    mu = algebra_file.load_algebra(args.file)
    q_max = args.max_q
    if q_max is None:
        q_max = mu.dim if args.complex == "ce" else config.DEFAULT_KV_Q_MAX
    run = reports.new_report("cohomology", file=args.file, complex=args.complex, max_q=q_max)
    reports.add_section(run, "structure", reports.structure_section(mu))

    status = EXIT_OK
    try:
        if args.complex == "ce":
            table = ce_cohomology.ce_complex_report(mu, q_max)
        else:
            table = kv_cohomology.kv_complex_report(mu, q_max)
        reports.add_section(run, "complex", table)
    except ComplexPreconditionError as e:
        reports.add_section(run, "refusal", {
            "message": str(e),
            "axiom": e.axiom,
            "witness": list(e.witness or ()),
            "residual": list(e.residual or ()),
        })
        if not args.force_matrices:
            print(f"refused: {e}", file=sys.stderr)
            status = EXIT_FAILURE

    if args.force_matrices:
        reports.add_section(run, "matrices", [m.tolist() for m in _complex_matrices(mu, args.complex, q_max)])
    return run, status


def cmd_classify(args):
    """Constraint system, dim-2 variety, grid scan and pencil closure."""
    axioms = parse_axioms(args.axioms)
    bound, denominator = parse_grid(args.grid)
    run = reports.new_report(
        "classify", dim=args.dim, axioms=axioms, grid=[bound, denominator], dedup=not args.no_dedup, seed=args.seed
    )
    system = classify.constraint_system(args.dim, axioms)
    reports.add_section(run, "system", [classify.format_polynomial(p) for p in system])

    skew = "skew" in axioms or "kv_poisson" in axioms
    variety = None
    if args.dim == 2 and skew:
        solved = classify.dim2_skew_solve([name for name in axioms if name != "skew"])
        variety = solved.variety
        reports.add_section(run, "variety", solved)

    survivors = classify.grid_scan(
        args.dim, bound, denominator, axioms, dedup=not args.no_dedup, workers=args.workers, progress=args.verbose
    )
    scan = {
        "bound": bound,
        "denominator": denominator,
        "dedup": not args.no_dedup,
        "survivors": [algebra_file.structure_entries(mu) for mu in survivors],
    }
    if variety is not None:
        raw = survivors if args.no_dedup else classify.grid_scan(2, bound, denominator, axioms, dedup=False,
                                                                workers=args.workers)
        scan["disagreements"] = [list(point) for point in classify.scan_agreement(variety, raw, bound, denominator)]
    reports.add_section(run, "scan", scan)
    reports.add_section(run, "pencil", classify.pencil_closure_check(survivors, axioms, seed=args.seed))
    return run, EXIT_OK


def cmd_audit_family(args):
    """Audit the skew plane product with the given (x0, y0)."""
    x0 = exactla.to_fraction(args.x0)
    y0 = exactla.to_fraction(args.y0)
    mu = algebra.family_structure(x0, y0)
    audit = classify.family_audit(x0, y0)
    run = reports.new_report("audit-family", x0=x0, y0=y0)
    reports.add_section(run, "structure", reports.structure_section(mu))
    reports.add_section(run, "audit", audit)
    if audit.passed(["skew", "jacobi"]):
        reports.add_section(run, "complex", ce_cohomology.ce_complex_report(mu, q_max=2))
    return run, EXIT_OK if audit.passed() else EXIT_FAILURE


def cmd_render(args):
    """Re-render a saved JSON report."""
    run = load_report(args.report)
    if not isinstance(run, dict) or run.get("schema_version") != config.SCHEMA_VERSION:
        raise MalformedInputError(f"{args.report} is not a readable kvpoisson report (schema {config.SCHEMA_VERSION})")
    return run, EXIT_OK


def cmd_reference_suite(args):
    """Run the full reproduction battery."""
    run = reports.new_report("reference-suite", seed=args.seed)
    suite = reference_suite.run_suite(seed=args.seed, progress=args.verbose)
    reports.add_section(run, "suite", suite)
    return run, EXIT_OK if suite["all_passed"] else EXIT_FAILURE


def _add_common_options(parser, defaults=True):
    # subcommand copies use SUPPRESS so they never overwrite values given before the subcommand
    def default(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument('--format', choices=['text', 'json'], default=default('text'),
                        help='Output format on stdout')
    parser.add_argument('--output', default=default(None),
                        help='Also write the JSON report to this path')
    parser.add_argument('--verbose', action='store_true', default=default(False),
                        help='Log progress at INFO level and show progress bars')
    parser.add_argument('--seed', type=int, default=default(config.DEFAULT_SEED),
                        help='Seed for pencil sampling and the reference suite')
    parser.add_argument('--workers', type=int, default=default(config.DEFAULT_SCAN_WORKERS),
                        help='Processes for grid scans')


def build_parser():
    """Argument parser with one subcommand per operation."""
    parser = argparse.ArgumentParser(
        prog='kvpoisson',
        description='Exact audits, cohomology and classification of small KV and Poisson algebras',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--reference-suite', '--paper-suite', dest='reference_suite', action='store_true',
                        help='Run the reproduction battery and print a pass/fail summary')
    _add_common_options(parser)
    subparsers = parser.add_subparsers(dest='command')

    check = subparsers.add_parser('check', help='Audit an algebra file')
    check.add_argument('file', help='Algebra file')
    check.add_argument('--axioms', help=f"Comma-separated subset of {', '.join(config.ALL_AXIOMS)}")
    _add_common_options(check, defaults=False)
    check.set_defaults(handler=cmd_check)

    cohomology = subparsers.add_parser('cohomology', help='Cohomology table of an algebra file')
    cohomology.add_argument('file', help='Algebra file')
    cohomology.add_argument('--complex', choices=['ce', 'kv'], required=True)
    cohomology.add_argument('--max-q', type=non_negative_int, default=None,
                            help='Highest degree (default: dim for ce, %d for kv)' % config.DEFAULT_KV_Q_MAX)
    cohomology.add_argument('--force-matrices', action='store_true',
                            help='Emit the coboundary matrices even when the complex is refused')
    _add_common_options(cohomology, defaults=False)
    cohomology.set_defaults(handler=cmd_cohomology)

    classify_parser = subparsers.add_parser('classify', help='Constraint systems, varieties and grid scans')
    classify_parser.add_argument('--dim', type=int, required=True)
    classify_parser.add_argument('--axioms', required=True, help='Comma-separated axiom names')
    classify_parser.add_argument('--grid', default='1/1', help='Grid as BOUND/DEN (default 1/1)')
    classify_parser.add_argument('--no-dedup', action='store_true',
                                 help='Keep every grid survivor instead of one per scaling class')
    _add_common_options(classify_parser, defaults=False)
    classify_parser.set_defaults(handler=cmd_classify)

    family = subparsers.add_parser('audit-family', help='Audit the skew plane product mu(e1,e2) = x0 e1 + y0 e2')
    family.add_argument('--x0', required=True, help='Rational p/q')
    family.add_argument('--y0', required=True, help='Rational p/q')
    _add_common_options(family, defaults=False)
    family.set_defaults(handler=cmd_audit_family)

    render = subparsers.add_parser('render', help='Re-render a JSON report written with --output')
    render.add_argument('report', help='JSON report file')
    _add_common_options(render, defaults=False)
    render.set_defaults(handler=cmd_render)
    return parser


def main(argv=None):
    """Main entry point; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format=config.LOG_FORMAT,
        stream=sys.stderr,
    )

    if args.reference_suite:
        handler = cmd_reference_suite
    elif getattr(args, 'handler', None) is not None:
        handler = args.handler
    else:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        run, status = handler(args)
    except (MalformedInputError, SizeGuardError, OSError) as e:
        LOGGER.debug("input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KvPoissonError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE

    sys.stdout.write(reports.render(run, args.format))
    if args.output:
        save_report(run, args.output)
    return status


if __name__ == "__main__":
    sys.exit(main())
