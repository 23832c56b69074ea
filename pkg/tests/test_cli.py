import json

import jsonschema
import pytest

from goldentiles import reference
from goldentiles.cli import main
from goldentiles.verify import CHECK_IDS, REPORT_SCHEMA, Report, run_all


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


@pytest.fixture(scope="module")
def default_report():
    return run_all()


# ---------------------------------------------------------------- verify-all


def test_verify_all_default_exits_zero(capsys):
    code, report, _ = run_json(capsys, "verify-all")
    failing = [c["id"] for c in report["checks"] if c["status"] != "pass"]
    assert failing == []
    assert code == 0


def test_verify_all_failures_are_only_the_printed_square(default_report):
    failing = [c.id for c in default_report.checks if c.status != "pass"]
    assert failing == ["powers.square"]
    assert default_report.exit_code == 1


def test_verify_all_json_is_schema_valid(capsys):
    _, report, _ = run_json(capsys, "verify-all")
    jsonschema.validate(report, REPORT_SCHEMA)
    assert [c["id"] for c in report["checks"]] == list(CHECK_IDS)
    s = report["summary"]
    assert s["pass"] + s["fail"] + s["error"] == len(report["checks"])
    for status in ("pass", "fail", "error"):
        assert s[status] == sum(c["status"] == status for c in report["checks"])


def test_report_round_trip(default_report):
    text = default_report.dumps()
    again = Report.from_json(json.loads(text))
    assert again == default_report
    assert again.dumps() == text


def test_report_ordering_independent_of_workers(default_report):
    threaded = run_all(workers=4)
    assert [c.id for c in threaded.checks] == [c.id for c in default_report.checks]
    assert [c.status for c in threaded.checks] == [c.status for c in default_report.checks]


def test_verify_all_corrupted_m2f(capsys):
    code, report, _ = run_json(capsys, "verify-all", "--corrupt-m2f")
    assert code == 1
    status = {c["id"]: c["status"] for c in report["checks"]}
    assert status["t2f.spot_entries"] == "fail"
    assert status["ms.induced_gt"] == "pass"


def test_verify_all_markdown(capsys):
    code, out, _ = run(capsys, "verify-all")
    assert code in (0, 1)
    assert "powers.square" in out and "t2f.intertwiner" in out


# ---------------------------------------------------------------- dehn


def test_dehn_cube(capsys, data_dir):
    code, out, _ = run_json(capsys, "dehn", str(data_dir / "cube.json"))
    assert code == 0
    assert out["dehn"]["beta"]["exact"] == "0" and out["dehn"]["delta"]["exact"] == "0"
    assert out["volume"]["exact"] == "1"


def test_dehn_a_star(capsys, data_dir):
    code, out, _ = run_json(capsys, "dehn", str(data_dir / "a_star.json"))
    assert code == 0
    assert out["dehn"]["beta"]["exact"] == "-1-τ"
    assert out["dehn"]["delta"]["exact"] == "-1+5·τ"
    assert out["sydler_pair"]["volume"] == "1/12+1/6·τ"


def test_dehn_h_tile(capsys, data_dir):
    code, out, _ = run_json(capsys, "dehn", str(data_dir / "h_tile.json"))
    assert code == 0
    assert out["dehn"]["beta"]["exact"] == "10"
    assert out["dehn"]["delta"]["exact"] == "10"
    assert out["volume"]["exact"] == "1/3+1/2·τ"


def test_dehn_malformed_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"edges": [\n  {"length": }\n]}')
    code, _, err = run(capsys, "dehn", str(bad))
    assert code == 2
    assert f"{bad}:2:" in err


def test_dehn_bad_field(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"edges": [{"angle": {"pi": "1/2"}}]}))
    code, _, err = run(capsys, "dehn", str(bad))
    assert code == 2
    assert "edges[0].length" in err


def test_dehn_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "dehn", str(tmp_path / "nope.json"))
    assert code == 2 and err


# ---------------------------------------------------------------- other commands


def test_catalog_and_export(capsys, tmp_path):
    code, out, _ = run_json(capsys, "catalog", "--export", str(tmp_path))
    assert code == 0
    assert [t["name"] for t in out["tetrahedra"]] == list(reference.GOLDEN_NAMES)
    assert out["classes"] == 7 and out["flat"] == "001101"
    assert (tmp_path / "catalog.json").exists()
    code, again, _ = run_json(capsys, "dehn", str(tmp_path / "a_star.json"))
    assert code == 0 and again["dehn"]["delta"]["exact"] == "-1+5·τ"


def test_volumes(capsys):
    code, out, _ = run_json(capsys, "volumes")
    assert code == 0
    assert out["tiles"]["z"]["exact"] == "1/6+1/3·τ"
    assert out["halves"]["m"]["exact"] == "1/4+1/6·τ"


@pytest.mark.parametrize("which, expected", [("gt", reference.M_GT), ("ms", reference.M_MS)])
def test_reconstruct(capsys, which, expected):
    code, out, _ = run_json(capsys, "reconstruct", "--set", which, "--check-eigen")
    assert code == 0
    assert out["eigen_relations_hold"] is True
    assert out["matrix"] == [[str(v) for v in r] for r in expected]


def test_power_and_integrality(capsys):
    code, out, _ = run_json(capsys, "power", "--k", "3")
    assert code == 0 and out["integer"] and out["reduction_identity_holds"]
    code, out, _ = run_json(capsys, "integrality", "--kmax", "12")
    assert code == 0 and out["integral_powers"] == [3, 6, 9, 12]


def test_covering(capsys):
    code, out, _ = run_json(capsys, "covering", "--k", "6", "--brute-force")
    assert code == 0
    assert out["certificate_valid"] and out["brute_force_solution"] is None
    code, _, err = run(capsys, "covering", "--k", "20", "--brute-force")
    assert code == 2 and err


def test_fields(capsys):
    code, out, _ = run_json(capsys, "fields")
    assert code == 0 and out["all_hold"]


def test_crs(capsys):
    code, out, _ = run_json(capsys, "crs", "--p", "3", "--d", "5")
    assert code == 0 and (out["s"], out["a"], out["b"]) == (2, 4, 2)
    code, out, _ = run_json(capsys, "crs")
    assert code == 0 and out["decompositions"]["independent"]
    code, _, err = run(capsys, "crs", "--p", "2", "--d", "3")
    assert code == 2 and err
    code, _, _ = run(capsys, "crs", "--p", "5")
    assert code == 2


def test_equivalent(capsys, data_dir):
    code, out, _ = run_json(capsys, "equivalent", "C*", "F*")
    assert code == 0
    assert out["equal_volume"] and not out["equal_dehn"] and not out["scissor_equivalent"]
    code, out, _ = run_json(capsys, "equivalent", "A*", str(data_dir / "a_star.json"))
    assert out["scissor_equivalent"]


def test_markdown_output(capsys):
    code, out, _ = run(capsys, "reconstruct", "--set", "gt")
    assert code == 0
    assert "1/2" in out and "|" in out


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "power", "--k", "0")[0] == 2
    assert run(capsys, "reconstruct", "--set", "xx")[0] == 2
    assert run(capsys, "--help")[0] == 0
