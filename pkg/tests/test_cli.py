import json

import jsonschema
import pytest

from ghzlab import __version__
from ghzlab.cli import CHECKS, main
from ghzlab.report import VerificationReport, report_schema

SCHEMA = report_schema()


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def load(text):
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    return doc


def test_verify_game_lemma1(capsys):
    code, out, _ = run(capsys, "verify-game", "--game", "r2ghz", "--strategy", "lemma1")
    doc = load(out)
    assert code == 0 and doc["passed"]
    assert doc["value_float"] == pytest.approx(1.0, abs=1e-12)
    assert len(doc["details"]["per_input"]) == 16
    assert doc["tool_version"] == __version__


def test_verify_game_sample(capsys):
    code, out, _ = run(capsys, "verify-game", "--game", "ghz-e", "--strategy", "table1-e",
                       "--mode", "sample", "--shots", "1000", "--seed", "7")
    doc = load(out)
    assert code == 0
    assert doc["details"]["wins"] == 1000 and doc["seed"] == 7
    assert (doc["value_num"], doc["value_den"]) == (1, 1)


def test_verify_game_chsh(capsys):
    code, out, _ = run(capsys, "verify-game", "--game", "chsh", "--strategy", "chsh-calibration")
    assert code == 0
    assert load(out)["value_float"] == pytest.approx(0.8535533906, abs=1e-9)


def test_verify_game_classical(capsys):
    code, out, _ = run(capsys, "verify-game", "--game", "rghz", "--strategy", "flip-alice")
    doc = load(out)
    assert code == 0 and (doc["value_num"], doc["value_den"]) == (3, 4)
    assert doc["details"]["wins"] == 6
    code, out, _ = run(capsys, "verify-game", "--game", "r2ghz", "--strategy", "switched",
                       "--mode", "sample", "--shots", "4000", "--seed", "3")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["verify-game", "--game", "nope", "--strategy", "lemma1"],
    ["verify-game", "--game", "ghz-e", "--strategy", "nope"],
    ["verify-game", "--game", "ghz-e", "--strategy", "lemma1"],
    ["verify-game", "--game", "r2ghz", "--strategy", "flip-alice"],
    ["verify-game", "--game", "ghz-e", "--strategy", "table1-e", "--mode", "sample", "--shots", "0"],
    ["commcomp", "--check", "theorem9"],
    ["bounds"],
    ["bounds", "--game", "ghz-e", "--workers", "0"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--game", "r2ghz")
    doc = load(out)
    assert code == 0
    assert (doc["value_num"], doc["value_den"], doc["examined"]) == (3, 4, 16384)
    assert len(doc["witnesses"]) == 16


def test_table2(capsys):
    code, out, err = run(capsys, "table2")
    doc = load(out)
    assert code == 0 and doc["details"]["wins"] == 6
    rows = {(r["r1"], tuple(r["xyz"])): r for r in doc["details"]["rows"]}
    row = rows[(0, (0, 1, 1))]
    assert row["abc"] == [1, 1, 1] and row["parity"] == 1 and row["win"]
    assert {k for k, r in rows.items() if not r["win"]} == {(0, (0, 0, 0)), (1, (1, 1, 1))}
    assert "r1 | x y z" in err and len(err.strip().splitlines()) == 10


@pytest.mark.parametrize("check", [c for c in CHECKS if not c.startswith("theorem4")])
def test_commcomp_checks_pass(capsys, check):
    code, out, _ = run(capsys, "commcomp", "--check", check)
    doc = load(out)
    assert code == 0 and doc["passed"]


def test_commcomp_theorem4_reports_counterexamples(capsys):
    code, out, _ = run(capsys, "commcomp", "--check", "theorem4-c1")
    doc = load(out)
    assert code == (0 if doc["passed"] else 1)
    assert doc["examined"] == 256


def test_compact_json_and_determinism(capsys):
    argv = ["commcomp", "--check", "theorem3", "--seed", "11", "--json", "compact"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and "\n" not in a.strip()


@pytest.mark.parametrize("argv", [
    ["bounds", "--game", "r2ghz"],
    ["commcomp", "--check", "theorem2-o"],
    ["commcomp", "--check", "theorem4-c2"],
])
def test_workers_do_not_change_output(capsys, argv):
    _, one, _ = run(capsys, *argv, "--workers", "1")
    _, four, _ = run(capsys, *argv, "--workers", "4")
    assert one == four


def test_all_aggregates(capsys):
    code, out, _ = run(capsys, "all", "--json", "compact")
    doc = load(out)
    for sub in doc["details"]["reports"]:
        jsonschema.validate(sub, SCHEMA)
    failed = {c["command"] for c in doc["counterexamples"]}
    assert doc["passed"] == (not failed)
    assert code == (0 if doc["passed"] else 1)


def test_failed_report_needs_evidence():
    with pytest.raises(ValueError):
        VerificationReport("x", passed=False).to_dict()
    doc = VerificationReport("x", passed=False, notes=["why"]).to_dict()
    jsonschema.validate(doc, SCHEMA)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({**doc, "notes": []}, SCHEMA)
