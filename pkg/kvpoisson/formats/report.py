"""Run reports: one structured document per run, rendered as JSON or as text.

A report is a plain dict of JSON-safe values (rationals already written as
``p/q``). Both renderings read the same dict, so the numbers they show agree.
"""

from kvpoisson import config
from kvpoisson.formats.algebra_file import structure_entries
from kvpoisson.utils.serialization import convert_types, dumps


def new_report(command, **inputs):
    """An empty report for ``command`` echoing its inputs."""
    return {
        "schema_version": config.SCHEMA_VERSION,
        "command": command,
        "input": convert_types(inputs),
    }


def structure_section(mu):
    return {"dim": mu.dim, "entries": convert_types(structure_entries(mu))}


def add_section(report, name, value):
    """Attach a section, converting it to JSON-safe types."""
    report[name] = convert_types(value)
    return report


def to_json(report):
    return dumps(report)


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def _tuple(values):
    return "(" + ",".join(str(v) for v in values) + ")"


def _render_audit(audit):
    lines = [f"{'Axiom':<14} {'Verdict':<8} Witness"]
    for name, ok in audit["verdicts"].items():
        witness = audit["witnesses"].get(name)
        detail = ""
        if witness:
            detail = f"at {_tuple(witness['indices'])} residual {_tuple(witness['residual'])}"
        lines.append(f"{name:<14} {'pass' if ok else 'FAIL':<8} {detail}".rstrip())
    return lines


def _render_complex(table):
    lines = [f"{table['complex'].upper()} complex, dim {table['dim']}"]
    lines.append(f"{'q':>3} {'dim C^q':>8} {'rank':>6} {'kernel':>7} {'betti':>6}")
    for row in table["degrees"]:
        lines.append(
            f"{row['degree']:>3} {row['dim']:>8} {row['rank']:>6} {row['kernel']:>7} {row['betti']:>6}"
        )
    lines.append(f"betti = {_tuple(table['betti'])}")
    lines.extend(f"note: {note}" for note in table["notes"])
    return lines


def _render_matrices(matrices):
    lines = []
    for q, rows in enumerate(matrices):
        lines.append(f"delta^{q}:")
        lines.extend("  [" + " ".join(f"{v:>5}" for v in row) + "]" for row in rows)
    return lines


def _render_variety(variety):
    lines = [f"variety: {variety['variety']['description']}"]
    lines.append(f"monomial system: {'yes' if variety['monomial'] else 'no'}")
    lines.append("reduced system (x = c121, y = c122):")
    lines.extend(f"  {p} = 0" for p in variety["reduced_system"])
    for name, v in variety["per_axiom"].items():
        lines.append(f"  {name:<14} {v['description']}")
    readings = variety["jacobi_readings"]
    lines.append(
        f"Jacobi readings: cyclic {readings['cyclic']['description']}, "
        f"per-term {readings['per_term']['description']}"
    )
    for sample in variety["claimed_samples"]:
        failed = [name for name, ok in sample["verdicts"].items() if not ok]
        status = "passes" if not failed else "fails " + ", ".join(failed)
        lines.append(f"claimed point {_tuple(sample['point'])} {status}")
    for flag in variety["flags"]:
        if flag["kind"] == "solution_set":
            w = flag["witness"]
            side = "claimed but not a solution" if w["in_claim"] else "a solution but not claimed"
            lines.append(
                f"FLAG claimed {flag['claim']} but computed {flag['computed']}; "
                f"{_tuple(w['point'])} is {side}"
            )
        else:
            lines.append(f"FLAG {flag['kind']}: {flag['polynomial']}")
    return lines


def _render_scan(scan):
    lines = [
        f"grid scan bound {scan['bound']}/{scan['denominator']}: "
        f"{len(scan['survivors'])} structure(s){' up to scaling' if scan['dedup'] else ''}"
    ]
    for entries in scan["survivors"]:
        text = ", ".join(f"c{i}{j}{k}={v}" for i, j, k, v in entries) or "zero"
        lines.append(f"  {text}")
    if "disagreements" in scan:
        lines.append(f"variety/scan disagreements: {len(scan['disagreements'])}")
    return lines


def _render_pencil(pencil):
    status = "closed" if pencil["closed"] else f"NOT closed ({len(pencil['counterexamples'])} counterexamples)"
    return [f"pencil closure over {pencil['samples']} samples: {status}"]


def render_text(report):
    """Plain-text table rendering of a report."""
    lines = [f"kvpoisson {report['command']} (schema {report['schema_version']})"]
    structure = report.get("structure")
    if structure:
        text = ", ".join(f"c{i}{j}{k}={v}" for i, j, k, v in structure["entries"]) or "zero"
        lines.append(f"structure (dim {structure['dim']}): {text}")
    if "audit" in report:
        lines.append("")
        lines.extend(_render_audit(report["audit"]))
    if "refusal" in report:
        lines.append("")
        lines.append(f"refused: {report['refusal']['message']}")
    if "complex" in report:
        lines.append("")
        lines.extend(_render_complex(report["complex"]))
    if "matrices" in report:
        lines.append("")
        lines.extend(_render_matrices(report["matrices"]))
    if "system" in report:
        lines.append("")
        lines.append(f"constraint system ({len(report['system'])} polynomials):")
        lines.extend(f"  {p} = 0" for p in report["system"])
    if "variety" in report:
        lines.append("")
        lines.extend(_render_variety(report["variety"]))
    if "scan" in report:
        lines.append("")
        lines.extend(_render_scan(report["scan"]))
    if "pencil" in report:
        lines.extend(_render_pencil(report["pencil"]))
    if "suite" in report:
        lines.append("")
        for check in report["suite"]["checks"]:
            lines.append(f"{'PASS' if check['passed'] else 'FAIL'}  {check['name']}: {check['detail']}")
        lines.append(f"{report['suite']['passed']}/{len(report['suite']['checks'])} checks passed")
    return "\n".join(lines) + "\n"


def render(report, fmt):
    """Render as "json" or "text"."""
    return to_json(report) if fmt == "json" else render_text(report)
