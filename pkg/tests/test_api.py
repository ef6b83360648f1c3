import json

import pytest
from fastapi.testclient import TestClient

from mtair.io import build_run_report, serialize_report
from mtair.server import create_app
from mtair.shipped import load_shipped_model


@pytest.fixture(scope="module")
def graph():
    return load_shipped_model()


@pytest.fixture(scope="module")
def client(graph):
    return TestClient(create_app(graph, max_samples=200_000))


def test_health_reports_engine_version(client):
    body = client.get("/api/health").json()
    assert body["status"] == "ok"
    assert body["engine_version"]


def test_model_structure_complete_and_stable(client, graph):
    r1 = client.get("/api/model")
    r2 = client.get("/api/model")
    assert r1.content == r2.content
    body = r1.json()
    assert len(body["nodes"]) == len(graph.nodes)
    assert sorted(body["presets"]) == ["Christiano", "Hanson", "Skeptic", "Yudkowsky"]
    node = body["nodes"][0]
    for field in ("id", "kind", "value_kind", "parents", "doc", "tags", "paper_ref", "placeholder"):
        assert field in node
    assert body["outputs"] and body["cruxes"]


def test_run_forced_override(client):
    body = {
        "overrides": {"timelines.hlmi_arrives": False},
        "samples": 500,
        "seed": 7,
        "targets": ["outcomes.catastrophically_misaligned"],
    }
    out = client.post("/api/run", json=body).json()
    assert out["outputs"][0]["probability_true"] == 0.0


def test_repeated_requests_identical(client):
    body = {"samples": 1_000, "seed": 9, "targets": ["mesa.inner_failure"]}
    r1 = client.post("/api/run", json=body)
    r2 = client.post("/api/run", json=body)
    assert r1.content == r2.content


def test_statelessness_interleaved_requests(client):
    probe = {"samples": 800, "seed": 4, "targets": ["takeoff.discontinuity"]}
    before = client.post("/api/run", json=probe).content
    client.post("/api/run", json={"samples": 500, "seed": 1, "preset": "Yudkowsky"})
    client.post(
        "/api/sensitivity",
        json={"target": "takeoff.discontinuity", "cruxes": ["takeoff.hardware_overhang"], "samples": 300, "seed": 2},
    )
    after = client.post("/api/run", json=probe).content
    assert before == after


def test_cli_api_parity(client, graph):
    request = {"samples": 2_000, "seed": 11, "overrides": {"takeoff.hardware_overhang": True}}
    api_body = client.post("/api/run", json=request).json()
    report = build_run_report(graph, samples=2_000, seed=11, overrides=request["overrides"])
    assert api_body == json.loads(serialize_report(report))


def test_sample_cap_422(client):
    r = client.post("/api/run", json={"samples": 10**9, "seed": 1})
    assert r.status_code == 422
    assert r.json()["code"] == "SAMPLE_CAP"


def test_unknown_target_404(client):
    r = client.post("/api/run", json={"samples": 10, "seed": 1, "targets": ["nope.nope"]})
    assert r.status_code == 404


def test_bad_override_kind_400_names_field(client):
    r = client.post("/api/run", json={"samples": 10, "seed": 1, "overrides": {"takeoff.discontinuity": 4}})
    assert r.status_code == 400
    assert "takeoff.discontinuity" in r.json()["message"]


def test_sensitivity_matches_engine_example(client):
    r = client.post(
        "/api/sensitivity",
        json={
            "target": "outcomes.catastrophically_misaligned",
            "cruxes": ["outcomes.governance_prevents"],
            "samples": 1_500,
            "seed": 5,
        },
    )
    rows = r.json()["rows"]
    assert rows[0]["crux"] == "outcomes.governance_prevents"
    assert rows[0]["p_a"] == 0.0
    assert rows[0]["delta"] < 0


def test_sensitivity_unknown_target_404(client):
    r = client.post("/api/sensitivity", json={"target": "ghost", "samples": 10, "seed": 1})
    assert r.status_code == 404
