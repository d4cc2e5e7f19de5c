"""Tests for the command line interface and run reports."""

import json

import pytest

from kvpoisson import config, reference_suite
from kvpoisson.cli import build_parser, main, parse_axioms, parse_grid
from kvpoisson.exceptions import MalformedInputError
from kvpoisson.formats import algebra_file, report as reports
from kvpoisson.utils.serialization import load_report


@pytest.fixture
def write_family(tmp_path, family):
    def write(x0, y0):
        path = tmp_path / f"family_{x0}_{y0}.alg".replace("/", "_")
        algebra_file.save_algebra(family(x0, y0), path)
        return str(path)
    return write


def run_json(capsys, argv):
    status = main(["--format", "json"] + argv)
    out = capsys.readouterr().out
    return status, json.loads(out)


def test_parse_axioms_accepts_hyphens():
    assert parse_axioms("kv-poisson, skew") == ["skew", "kv_poisson"]
    with pytest.raises(MalformedInputError):
        parse_axioms("skew,commutative")


def test_parse_grid():
    assert parse_grid("2/3") == (2, 3)
    assert parse_grid("4") == (4, 1)
    with pytest.raises(MalformedInputError):
        parse_grid("2/0")
    with pytest.raises(MalformedInputError):
        parse_grid("two")


def test_check_zero_family_passes(capsys, write_family):
    status, report = run_json(capsys, ["check", write_family(0, 0)])
    assert status == 0
    assert report["schema_version"] == config.SCHEMA_VERSION
    assert all(report["audit"]["verdicts"].values())


def test_check_kv_poisson_failure(capsys, write_family):
    status, report = run_json(capsys, ["check", write_family(1, 0), "--axioms", "kv-poisson"])
    assert status == 1
    assert report["audit"]["verdicts"] == {"kv_poisson": False}
    witness = report["audit"]["witnesses"]["kv_poisson"]
    assert witness["indices"] == [2, 1, 2]
    assert witness["residual"] == ["-1", "0"]


def test_check_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.alg"
    path.write_text("dim = 2\nmu(1,3) = 1:1\n")
    assert main(["check", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line 2, column 6" in err


def test_check_missing_file(capsys, tmp_path):
    assert main(["check", str(tmp_path / "missing.alg")]) == 2


@pytest.mark.parametrize("point, betti", [((1, 0), [0, 0, 0]), ((0, 0), [2, 4, 2])])
def test_ce_cohomology(capsys, write_family, point, betti):
    status, report = run_json(capsys, ["cohomology", write_family(*point), "--complex", "ce", "--max-q", "2"])
    assert status == 0
    assert report["complex"]["betti"] == betti


def test_kv_cohomology_of_zero_structure(capsys, write_family):
    status, report = run_json(capsys, ["cohomology", write_family(0, 0), "--complex", "kv", "--max-q", "2"])
    assert status == 0
    assert report["complex"]["betti"] == [2, 4, 8]


def test_cohomology_refusal_and_forced_matrices(capsys, write_family):
    path = write_family(1, 0)
    status, report = run_json(capsys, ["cohomology", path, "--complex", "kv", "--max-q", "1"])
    assert status == 1
    assert report["refusal"]["axiom"] == "kv"
    assert "complex" not in report

    status, report = run_json(capsys, ["cohomology", path, "--complex", "kv", "--max-q", "1", "--force-matrices"])
    assert status == 0
    assert "complex" not in report
    assert [len(m) for m in report["matrices"]] == [4, 8]


def test_cohomology_size_guard_is_an_input_error(capsys, write_family):
    assert main(["cohomology", write_family(0, 0), "--complex", "kv", "--max-q", "5"]) == 2


def test_classify_skew_nilpotent(capsys):
    status, report = run_json(capsys, ["classify", "--dim", "2", "--axioms", "skew,nilpotent"])
    assert status == 0
    variety = report["variety"]
    assert set(variety["reduced_system"]) == {"x**2", "x*y", "y**2"}
    assert variety["variety"]["description"] == "{(0,0)}"
    assert any(flag["kind"] == "solution_set" for flag in variety["flags"])
    assert report["scan"]["survivors"] == [[]]
    assert report["scan"]["disagreements"] == []
    assert report["pencil"]["closed"]


def test_classify_skew_jacobi(capsys):
    status, report = run_json(capsys, ["classify", "--dim", "2", "--axioms", "skew,jacobi", "--grid", "1/1"])
    assert status == 0
    assert report["variety"]["variety"]["whole_plane"]
    assert len(report["scan"]["survivors"]) == 5


def test_classify_dimension_one(capsys):
    status, report = run_json(capsys, ["classify", "--dim", "1", "--axioms", "skew"])
    assert status == 0
    assert report["system"] == ["v111"]
    assert report["scan"]["survivors"] == [[]]
    assert "variety" not in report


def test_classify_guard(capsys):
    assert main(["classify", "--dim", "4", "--axioms", "skew"]) == 2


def test_audit_family_zero(capsys):
    status, report = run_json(capsys, ["audit-family", "--x0", "0", "--y0", "0"])
    assert status == 0
    assert all(report["audit"]["verdicts"].values())
    assert report["complex"]["betti"] == [2, 4, 2]


@pytest.mark.parametrize("x0, y0", [("1", "0"), ("2", "3")])
def test_audit_family_nonzero(capsys, x0, y0):
    status, report = run_json(capsys, ["audit-family", "--x0", x0, "--y0", y0])
    assert status == 1
    verdicts = report["audit"]["verdicts"]
    assert verdicts["skew"] and verdicts["jacobi"]
    assert not verdicts["kv"] and not verdicts["nilpotent"]
    assert report["complex"]["betti"] == [0, 0, 0]


def test_audit_family_rational_input(capsys):
    status, report = run_json(capsys, ["audit-family", "--x0=-1/2", "--y0", "0"])
    assert status == 1
    assert report["input"] == {"x0": "-1/2", "y0": "0"}


def test_options_after_the_subcommand(capsys):
    status = main(["audit-family", "--x0", "0", "--y0", "0", "--format", "json"])
    assert status == 0
    assert json.loads(capsys.readouterr().out)["command"] == "audit-family"


def test_text_and_json_agree(capsys):
    main(["audit-family", "--x0", "0", "--y0", "0"])
    text = capsys.readouterr().out
    assert "betti = (2,4,2)" in text
    assert "skew" in text and "pass" in text


def test_reports_are_deterministic(capsys):
    argv = ["classify", "--dim", "2", "--axioms", "skew,kv", "--grid", "1/2"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_output_file_matches_stdout(capsys, tmp_path):
    path = tmp_path / "reports" / "family.json"
    status, report = run_json(capsys, ["audit-family", "--x0", "1", "--y0", "0", "--output", str(path)])
    assert load_report(str(path)) == report


def test_render_text_refusal():
    run = reports.new_report("cohomology", file="x.alg")
    reports.add_section(run, "refusal", {"message": "KV complex requires a KV algebra"})
    assert "refused: KV complex requires a KV algebra" in reports.render_text(run)


def test_no_command_is_an_input_error(capsys):
    assert main([]) == 2


def test_check_invalid_utf8_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "binary.alg"
    path.write_bytes(b"dim = 2\nmu(1,2) = 1:1\n\xff\n")
    assert main(["check", str(path)]) == 2
    err = capsys.readouterr().err
    assert "invalid UTF-8 byte 0xff at offset 22" in err
    assert "line 3, column 1" in err


def test_suite_alias_runs_the_reference_suite(capsys, monkeypatch):
    monkeypatch.setattr(reference_suite, "run_suite", lambda seed=None, progress=False: {
        "checks": [{"name": "stub", "passed": True, "detail": "ok"}], "passed": 1, "all_passed": True,
    })
    assert main(["--paper-suite"]) == 0
    assert "1/1 checks passed" in capsys.readouterr().out
    assert build_parser().parse_args(["--reference-suite"]).reference_suite


def test_negative_max_q_is_rejected(capsys, write_family):
    with pytest.raises(SystemExit) as excinfo:
        main(["cohomology", write_family(0, 0), "--complex", "kv", "--max-q", "-1"])
    assert excinfo.value.code == 2
    assert "non-negative" in capsys.readouterr().err


def test_render_saved_report(capsys, tmp_path):
    path = tmp_path / "family.json"
    assert main(["audit-family", "--x0", "0", "--y0", "0", "--output", str(path)]) == 0
    text = capsys.readouterr().out
    assert main(["render", str(path)]) == 0
    assert capsys.readouterr().out == text


def test_render_rejects_non_reports(capsys, tmp_path):
    path = tmp_path / "other.json"
    path.write_text('{"hello": 1}')
    assert main(["render", str(path)]) == 2
    assert main(["render", str(tmp_path / "missing.json")]) == 2
