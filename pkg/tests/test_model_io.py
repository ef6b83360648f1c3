import json
import math

import pytest

from mtair.catalog import build_graph
from mtair.io import (
    build_run_report,
    dumps_stable,
    parse_model_document,
    parse_report,
    serialize_document,
    serialize_report,
)
from mtair.shipped import load_shipped_model, shipped_document_text

MINIMAL = {
    "format_version": 1,
    "meta": {"title": "tiny", "horizon": [2022, 2122]},
    "modules": [{"id": "m", "parent": None, "doc": ""}],
    "nodes": [
        {
            "id": "a",
            "module": "m",
            "kind": "chance",
            "dist": {"type": "bernoulli", "p": 0.5},
            "value_kind": {"type": "bool"},
            "paper_ref": "elicitation placeholder",
        },
        {
            "id": "b",
            "module": "m",
            "kind": "formula",
            "builtin": "NOT",
            "parents": ["a"],
            "value_kind": {"type": "bool"},
            "paper_ref": "elicitation placeholder",
        },
    ],
    "outputs": ["b"],
    "cruxes": ["a"],
    "presets": {},
}


def doc(**changes):
    data = json.loads(json.dumps(MINIMAL))
    data.update(changes)
    return json.dumps(data)


class TestParse:
    def test_minimal_two_node_document(self):
        graph, diags = parse_model_document(doc())
        assert graph is not None and diags == []
        assert len(graph.nodes) == 2
        assert graph.nodes["b"].parents == ("a",)

    def test_unknown_kind_reports_location(self):
        data = json.loads(doc())
        data["nodes"][0]["kind"] = "chnce"
        graph, diags = parse_model_document(json.dumps(data))
        assert graph is None
        bad = [d for d in diags if d.code == "UNKNOWN_KIND"]
        assert bad and "nodes[0]" in bad[0].node_id

    def test_syntax_error_carries_line_and_column(self):
        graph, diags = parse_model_document('{"format_version": 1,\n  "meta": }')
        assert graph is None
        assert diags[0].code == "SYNTAX"
        assert "line 2" in diags[0].node_id

    def test_unknown_top_level_field_strict_vs_lenient(self):
        text = doc(surprise=1)
        graph, diags = parse_model_document(text)
        assert graph is None
        assert any(d.code == "SYNTAX" and "surprise" in d.message for d in diags)
        graph, diags = parse_model_document(text, lenient=True)
        assert graph is not None
        assert any(d.severity == "warning" for d in diags)

    def test_unknown_node_field_strict(self):
        data = json.loads(doc())
        data["nodes"][0]["paper_reff"] = "typo"
        graph, diags = parse_model_document(json.dumps(data))
        assert graph is None
        assert any("paper_reff" in d.message for d in diags)

    def test_duplicate_id_at_parse(self):
        data = json.loads(doc())
        data["nodes"].append(data["nodes"][0])
        graph, diags = parse_model_document(json.dumps(data))
        assert graph is None
        assert any(d.code == "DUPLICATE_ID" for d in diags)

    def test_unsupported_format_version(self):
        graph, diags = parse_model_document(doc(format_version=99))
        assert graph is None
        assert any("format_version" in d.node_id for d in diags)

    def test_semantic_errors_delegate_to_validation(self):
        data = json.loads(doc())
        data["nodes"][1]["parents"] = ["ghost"]
        graph, diags = parse_model_document(json.dumps(data))
        assert graph is None
        assert any(d.code == "MISSING_PARENT" for d in diags)


class TestRoundTrip:
    def test_parse_serialize_parse_fixed_point(self):
        graph, _ = parse_model_document(doc())
        text = serialize_document(graph)
        graph2, diags = parse_model_document(text)
        assert diags == []
        assert serialize_document(graph2) == text
        assert graph2.nodes == graph.nodes
        assert graph2.outputs == graph.outputs

    def test_shipped_document_matches_catalog_builder(self):
        assert shipped_document_text() == serialize_document(build_graph())

    def test_shipped_document_parses_clean_with_expected_count(self):
        graph, diags = parse_model_document(shipped_document_text())
        assert graph is not None and diags == []
        assert len(graph.nodes) == 251
        assert sorted(graph.presets) == ["Christiano", "Hanson", "Skeptic", "Yudkowsky"]

    def test_every_shipped_node_documents_its_source(self):
        graph = load_shipped_model()
        for node in graph.nodes.values():
            assert node.paper_ref, node.id


class TestReports:
    def graph(self):
        graph, _ = parse_model_document(doc())
        return graph

    def test_report_bytes_reproducible(self):
        g = self.graph()
        r1 = serialize_report(build_run_report(g, samples=5_000, seed=42))
        r2 = serialize_report(build_run_report(g, samples=5_000, seed=42))
        assert r1 == r2

    def test_report_round_trip_equal(self):
        g = self.graph()
        report = build_run_report(g, samples=1_000, seed=7, overrides={"a": True})
        payload = serialize_report(report)
        parsed = parse_report(payload)
        assert parsed == report.to_json()
        assert parsed["outputs"][0]["probability_true"] == 0.0

    def test_dyadic_probability_exact(self):
        payload = dumps_stable({"p": 0.5})
        assert payload == '{"p":0.5}'
        assert json.loads(payload)["p"] == 0.5

    def test_seventeen_digit_floats_round_trip(self):
        for value in [1 / 3, math.pi, 2.0 / 88.0, 1e-300, 123456.789]:
            assert json.loads(dumps_stable({"x": value}))["x"] == value

    def test_empty_outputs_report_round_trips_byte_identically(self):
        g = self.graph()
        report = build_run_report(g, samples=10, seed=1, targets=["b"])
        report.outputs = []
        b1 = serialize_report(report)
        b2 = serialize_report(report)
        assert b1 == b2

    def test_preset_must_exist(self):
        from mtair.errors import MtairError

        with pytest.raises(MtairError) as err:
            build_run_report(self.graph(), samples=10, seed=1, preset="Nope")
        assert err.value.code == "NODE_NOT_FOUND"
