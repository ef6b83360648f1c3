import json
from pathlib import Path

import pytest

from mtair.cli import main, parse_set_value
from mtair.shipped import shipped_document_text

CYCLIC = json.dumps(
    {
        "format_version": 1,
        "meta": {"title": "loop", "horizon": [2022, 2032]},
        "modules": [],
        "nodes": [
            {"id": "a", "module": "m", "kind": "formula", "builtin": "NOT", "parents": ["b"],
             "value_kind": {"type": "bool"}, "paper_ref": "x"},
            {"id": "b", "module": "m", "kind": "formula", "builtin": "NOT", "parents": ["a"],
             "value_kind": {"type": "bool"}, "paper_ref": "x"},
        ],
        "outputs": [],
        "cruxes": [],
        "presets": {},
    }
)

NOT_DOC = json.dumps(
    {
        "format_version": 1,
        "meta": {"title": "not", "horizon": [2022, 2032]},
        "modules": [],
        "nodes": [
            {"id": "a", "module": "m", "kind": "chance", "dist": {"type": "bernoulli", "p": 0.5},
             "value_kind": {"type": "bool"}, "paper_ref": "x"},
            {"id": "b", "module": "m", "kind": "formula", "builtin": "NOT", "parents": ["a"],
             "value_kind": {"type": "bool"}, "paper_ref": "x"},
        ],
        "outputs": ["b"],
        "cruxes": ["a"],
        "presets": {},
    }
)


@pytest.fixture
def not_model(tmp_path):
    path = tmp_path / "not.mtair.json"
    path.write_text(NOT_DOC)
    return str(path)


@pytest.fixture
def shipped(tmp_path):
    path = tmp_path / "shipped.mtair.json"
    path.write_text(shipped_document_text())
    return str(path)


def test_set_value_literals():
    assert parse_set_value("true") is True
    assert parse_set_value("False") is False
    assert parse_set_value("2035") == 2035
    assert parse_set_value("0.25") == 0.25
    assert parse_set_value("never") == "never"
    assert parse_set_value("weeks_to_months") == "weeks_to_months"


def test_validate_cyclic_exits_one(tmp_path, capsys):
    path = tmp_path / "loop.mtair.json"
    path.write_text(CYCLIC)
    code = main(["validate", str(path)])
    captured = capsys.readouterr()
    assert code == 1
    assert "CYCLE" in captured.err


def test_validate_clean_exits_zero(not_model, capsys):
    assert main(["validate", not_model]) == 0
    assert "2 nodes" in capsys.readouterr().out


def test_run_reports_are_byte_identical(not_model, tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["run", not_model, "--samples", "100000", "--seed", "7", "--output", str(out1)]) == 0
    assert main(["run", not_model, "--samples", "100000", "--seed", "7", "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert abs(report["outputs"][0]["probability_true"] - 0.5) < 3 * (0.25 / 100000) ** 0.5


def test_run_with_set_forces_value(not_model, capsys):
    assert main(["run", not_model, "--samples", "500", "--seed", "1", "--set", "a=true"]) == 0
    out = capsys.readouterr().out
    assert "b: 0.00000" in out


def test_run_set_kind_mismatch_names_node(not_model, capsys):
    code = main(["run", not_model, "--samples", "10", "--seed", "1", "--set", "a=3.5"])
    assert code == 1
    assert "a" in capsys.readouterr().err


def test_run_json_error_channel(not_model, capsys):
    code = main(["run", not_model, "--samples", "10", "--seed", "1", "--set", "a=3.5", "--json"])
    assert code == 1
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(err)["code"] == "KIND_MISMATCH"


def test_usage_error_exits_two(not_model):
    assert main(["run", not_model, "--samples", "10", "--seed", "1", "--set", "nonsense"]) == 2


def test_preset_sets_documented_cruxes(shipped, tmp_path):
    out = tmp_path / "r.json"
    assert (
        main(
            [
                "run", shipped, "--samples", "400", "--seed", "3", "--preset", "Skeptic",
                "--targets", "takeoff.intelligence_explosion,takeoff.hlmi_distributed",
                "--output", str(out),
            ]
        )
        == 0
    )
    report = json.loads(out.read_text())
    assert report["config"]["preset"] == "Skeptic"
    by_node = {entry["node"]: entry for entry in report["outputs"]}
    assert by_node["takeoff.intelligence_explosion"]["probability_true"] == 0.0
    assert by_node["takeoff.hlmi_distributed"]["probability_true"] == 1.0
    assert report["config"]["overrides"] == {
        "takeoff.discontinuity": False,
        "takeoff.hlmi_distributed": True,
        "takeoff.intelligence_explosion": False,
        "takeoff.takeoff_speed_class": "years_or_longer",
    }


def test_sensitivity_sorted_rows(not_model, capsys):
    assert main(["sensitivity", not_model, "--target", "b", "--samples", "2000", "--seed", "2", "--json"]) == 0
    lines = [json.loads(line) for line in capsys.readouterr().out.strip().splitlines()]
    assert lines[0]["crux"] == "a"
    assert lines[0]["delta"] == -1.0


def test_missing_file_fails_cleanly(capsys):
    assert main(["validate", "/nonexistent/x.mtair.json"]) == 1
