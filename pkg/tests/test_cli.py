import io
import json
import subprocess
import sys
from importlib.resources import files

import pytest

from entwine import __version__
from entwine.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_USAGE, main
from entwine.session import parse_session

SAMPLE = str(files("entwine") / "samples" / "f2c2.json")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def sample_doc():
    return json.loads(open(SAMPLE, encoding="utf-8").read())


def write(tmp_path, d, name="input.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d), encoding="utf-8")
    return str(p)


def strip_batteries(report: dict) -> dict:
    return {
        **report,
        "sections": [strip_batteries(s) for s in report.get("sections", []) if not s["title"].startswith("battery")],
    }


def test_check_all_structures_pass():
    code, out = run("check", "--input", SAMPLE)
    assert code == EXIT_PASS
    assert out.startswith(f"entwine {__version__}  check  input sha256:")
    assert out.rstrip().endswith("overall: PASS")


@pytest.mark.parametrize("name", ["H", "regular", "flip", "H_regular", "H_entwined", "g"])
def test_check_single_structure(name):
    code, out = run("check", "--input", SAMPLE, "--structure", name)
    assert code == EXIT_PASS, out


def test_broken_unit_named_with_witness(tmp_path):
    d = sample_doc()
    d["morphisms"]["unit"]["rows"] = [["0"], ["1"]]
    code, out = run("check", "--input", write(tmp_path, d), "--structure", "H_alg")
    assert code == EXIT_FAIL
    assert "unit law" in out
    assert "witness" in out
    assert out.rstrip().endswith("overall: FAIL")


def test_unknown_structure_is_input_error(capsys):
    code, _ = run("check", "--input", SAMPLE, "--structure", "nothing")
    assert code == EXIT_INPUT
    assert "nothing" in capsys.readouterr().err


def test_missing_file_and_bad_json(tmp_path, capsys):
    assert run("check", "--input", str(tmp_path / "absent.json"))[0] == EXIT_INPUT
    p = tmp_path / "bad.json"
    p.write_text("{\n  oops\n}", encoding="utf-8")
    assert run("check", "--input", str(p))[0] == EXIT_INPUT
    assert "line 2" in capsys.readouterr().err


def test_usage_errors():
    assert run()[0] == EXIT_USAGE
    assert run("frobnicate")[0] == EXIT_USAGE
    assert run("galois", "--input", SAMPLE, "--structure", "regular")[0] == EXIT_USAGE
    assert run("check", "--input", SAMPLE, "--samples", "-1")[0] == EXIT_USAGE
    assert run("coring", "--input", SAMPLE)[0] == EXIT_INPUT


def test_grouplikes(tmp_path):
    code, out = run("grouplikes", "--input", SAMPLE, "--structure", "H_coalg", "--format", "json")
    assert code == EXIT_PASS
    rep = json.loads(out)["report"]
    assert rep["data"]["count"] == 2
    assert all(c["verdict"] == "pass" for c in rep["checks"])
    assert run("grouplikes", "--input", SAMPLE, "--structure", "H")[0] == EXIT_PASS


def test_grouplikes_budget(tmp_path):
    assert run("grouplikes", "--input", SAMPLE, "--structure", "H_coalg", "--budget", "3")[0] == EXIT_BUDGET
    d = sample_doc()
    d["field"] = "Q"
    assert run("grouplikes", "--input", write(tmp_path, d), "--structure", "H_coalg")[0] == EXIT_BUDGET


def test_coring_emit_round_trips(tmp_path):
    target = tmp_path / "coring.json"
    code, out = run("coring", "--input", SAMPLE, "--structure", "flip", "--emit", str(target))
    assert code == EXIT_PASS, out
    s = parse_session(target)
    assert s.objects["A"].total_dim == 2
    assert s.morphisms["comult"].map.dom.total_dim == 4
    code, out = run("coring", "--input", SAMPLE, "--structure", "regular")
    assert code == EXIT_PASS and "--- coring" in out


def test_coring_refuses_broken_entwining(tmp_path):
    d = sample_doc()
    d["morphisms"]["lambda_trivial"]["rows"][0] = ["0", "0", "0", "1"]
    code, out = run("coring", "--input", write(tmp_path, d), "--structure", "flip")
    assert code == EXIT_FAIL
    assert "entwining fails its axioms" in out


def test_galois_positive_and_negative():
    code, out = run("galois", "--input", SAMPLE, "--structure", "regular", "--grouplike", "one", "--samples", "4")
    assert code == EXIT_PASS, out
    code, out = run("galois", "--input", SAMPLE, "--structure", "flip", "--grouplike", "one", "--samples", "4")
    assert code == EXIT_FAIL
    assert "can invertible" in out


def test_galois_wrong_kind():
    assert run("galois", "--input", SAMPLE, "--structure", "H", "--grouplike", "one")[0] == EXIT_INPUT
    assert run("galois", "--input", SAMPLE, "--structure", "regular", "--grouplike", "H")[0] == EXIT_INPUT


def test_hopf_suite_catalog_and_file():
    assert run("hopf-suite", "--catalog", "group_algebra", "--param", "n=3", "--field", "F3", "--samples", "2")[0] == EXIT_PASS
    assert run("hopf-suite", "--catalog", "exterior", "--field", "F3", "--braiding", "super", "--samples", "2")[0] == EXIT_PASS
    assert run("hopf-suite", "--input", SAMPLE, "--structure", "H", "--samples", "2")[0] == EXIT_PASS


def test_hopf_suite_bad_catalog_input():
    assert run("hopf-suite", "--catalog", "sweedler4", "--field", "F2")[0] == EXIT_INPUT
    assert run("hopf-suite", "--catalog", "group_algebra", "--field", "F4")[0] == EXIT_INPUT
    assert run("hopf-suite", "--catalog", "group_algebra", "--param", "n")[0] == EXIT_INPUT
    assert run("hopf-suite")[0] == EXIT_INPUT


def test_json_shape():
    code, out = run("check", "--input", SAMPLE, "--structure", "H", "--format", "json")
    d = json.loads(out)
    assert set(d) == {"tool", "version", "command", "input_sha256", "verdict", "report"}
    assert d["verdict"] == "pass" and d["tool"] == "entwine"
    check = d["report"]["checks"][0]
    assert {"check", "anchor", "verdict"} <= set(check)


@pytest.mark.parametrize(
    "argv",
    [
        ("galois", "--input", SAMPLE, "--structure", "regular", "--grouplike", "one"),
        ("hopf-suite", "--catalog", "group_algebra", "--field", "F2"),
    ],
)
def test_reports_deterministic(argv):
    first = run(*argv, "--samples", "5", "--seed", "7")
    second = run(*argv, "--samples", "5", "--seed", "7")
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ("galois", "--input", SAMPLE, "--structure", "flip", "--grouplike", "one"),
        ("hopf-suite", "--catalog", "group_algebra", "--param", "n=3", "--field", "F3"),
    ],
)
def test_seeds_change_only_battery_sections(argv):
    a = json.loads(run(*argv, "--samples", "4", "--seed", "1", "--format", "json")[1])
    b = json.loads(run(*argv, "--samples", "4", "--seed", "2", "--format", "json")[1])
    assert strip_batteries(a["report"]) == strip_batteries(b["report"])
    assert {k: v for k, v in a.items() if k != "report"} == {k: v for k, v in b.items() if k != "report"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "entwine", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == f"entwine {__version__}"
