import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from krullcheck import cli, monomial
from krullcheck.report import REPORT_SCHEMA, SCHEMA, Step, VerificationReport, emit_report
from krullcheck.scenarios import ScenarioError, list_scenarios, load_scenario, run_scenario

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_member_inline(capsys):
    code, out, _ = run(capsys, "member", "--ring", "QQ[x,y]", "--ideal", "x^2, y", "--element", "x*y")
    assert code == 0 and "is in the ideal" in out


def test_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "member", "--ring", "QQ[x,y]", "--ideal", "x^2 +", "--element", "x")
    assert code == 2 and "parse error" in err and "^" in err


def test_missing_fixture_entry_exits_2(capsys):
    code, _, err = run(capsys, "gb", "--ideal", f"{FIXTURES / 'monomial.txt'}:nope")
    assert code == 2


def test_bad_budget_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--budget", "0", "list"])
    assert exc.value.code == 2


def test_mono_closure_json(capsys):
    code, out, _ = run(capsys, "mono-closure", "--ideal", f"{FIXTURES / 'monomial.txt'}:fig1", "--format", "json")
    assert code == 0
    assert json.loads(out)["closure"] == ["x^2", "x*y", "y^2"]


def test_mono_decomp(capsys):
    code, out, _ = run(capsys, "mono-decomp", "--ideal", f"{FIXTURES / 'monomial.txt'}:contrast", "--format", "json")
    assert code == 0 and "z" in out


def test_integral_test_emits_certificate(capsys):
    f = FIXTURES / "krull_family_n1.txt"
    code, out, _ = run(capsys, "integral-test", "--ideal", f"{f}:I", "--element", f"{f}:r", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "integral"
    assert data["certificate"]["kind"] == "equation"


def test_isprimary_and_witness(capsys):
    f = FIXTURES / "krull_family_n1.txt"
    code, out, _ = run(capsys, "isprimary", "--pseudo", "--ideal", f"{f}:I", "--format", "json")
    assert code == 0 and json.loads(out)["primary"] is True
    code, out, _ = run(capsys, "witness-nonprimary", "--ideal", f"{f}:Ibar", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["witness"]["g"] == "x^2" and data["replayed"]


def test_whitney_command(capsys):
    code, out, _ = run(
        capsys, "whitney", "refute-a", "--ring", "QQ[x,y,z,t]", "--f", "x^6 + y^6 + x^4*z*t + z^3",
        "--locus", "x,y,z", "--direction", "t", "--curve", f"{FIXTURES / 'whitney_curve.txt'}:p", "--format", "json",
    )
    assert code == 0 and json.loads(out)["status"] == "FAILS_A"


def test_slice_tsv(tmp_path, capsys):
    out_file = tmp_path / "s.tsv"
    code, _, _ = run(capsys, "slice", "--t0", "-2", "--x-min", "1", "--x-max", "1", "--step", "1", "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    assert code == 0 and lines[0] == "x\tbranch\tz_lo\tz_hi" and len(lines) == 4


def test_list_names_every_scenario(capsys):
    code, out, _ = run(capsys, "list")
    ids = [sid for sid, _ in list_scenarios()]
    assert code == 0 and all(sid in out for sid in ids)
    assert set(ids) >= {
        "mono-closure-fig1", "krull-family", "nonprimary-with-primary-closure",
        "jacobian-example", "whitney-refute", "slice-cases",
    }


def test_scenario_json_validates(capsys):
    code, out, _ = run(capsys, "krull-family", "--n", "2", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    assert code == 0 and doc["status"] == "pass" and doc["schema"] == SCHEMA
    assert doc["params"]["n"] == 2


def test_scenario_reports_are_deterministic():
    docs = []
    for _ in range(2):
        d = run_scenario("slice-cases").to_json()
        d.pop("duration_seconds")
        docs.append(json.dumps(d, sort_keys=True))
    assert docs[0] == docs[1]


def test_failing_scenario_exits_1(capsys, monkeypatch):
    # break the closure so the first step's expectation no longer holds
    monkeypatch.setattr(monomial, "mono_integral_closure", lambda M: M)
    code, out, _ = run(capsys, "run", "mono-closure-fig1")
    assert code == 1
    assert "FAIL" in out and ">>" in out and "first failing step: 1." in out


def test_scenario_parameter_bounds():
    with pytest.raises(ScenarioError):
        load_scenario("krull-family", n=11)
    with pytest.raises(ScenarioError):
        load_scenario("mono-closure-fig1", n=1)


def test_unknown_scenario_exits_2(capsys):
    code, _, err = run(capsys, "run", "no-such-scenario")
    assert code == 2


def test_human_report_rendering():
    r = VerificationReport("demo", {}, [Step("a", 1, 1, True), Step("b", 1, 2, False, "mismatch")], 0.5)
    text = emit_report(r, "human")
    assert "✓ a" in text and "✗ b" in text and ">> expected: 1" in text
    assert r.exit_code == 1
    with pytest.raises(ValueError):
        emit_report(r, "xml")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "krullcheck.cli", "mono-isprimary", "--ring", "QQ[x,y]", "--ideal", "x^2, x*y, y^3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "primary" in proc.stdout
