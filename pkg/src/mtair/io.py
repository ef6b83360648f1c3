"""Model-document file format (.mtair.json), parser/serializer, run reports.

The document is a single UTF-8 JSON text. Parsing is strict: unknown fields
are rejected so typos in elicited parameters cannot pass silently; a lenient
mode downgrades them to warnings. Serialization is canonical -- stable field
order, floats at 17 significant digits -- so identical runs produce
byte-identical reports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .dist import (
    Bernoulli,
    Categorical,
    DistributionSpec,
    LogNormal,
    Mixture,
    Normal,
    Point,
    Uniform,
)
from .engine import PosteriorSummary, RunConfig, SensitivityRow, estimate, run_monte_carlo, sensitivity_sweep
from .errors import MtairError
from .model import (
    Alias,
    BoolKind,
    CategoryKind,
    Chance,
    Classifier,
    Diagnostic,
    EvidenceItem,
    Formula,
    ModelGraph,
    ModuleDecl,
    NodeSpec,
    RealKind,
    SeriesKind,
    ValueKind,
    YearKind,
    validate_graph,
)

FORMAT_VERSION = 1

_TOP_FIELDS = {"format_version", "meta", "modules", "nodes", "outputs", "cruxes", "presets"}
_NODE_FIELDS = {
    "id",
    "module",
    "kind",
    "dist",
    "builtin",
    "params",
    "prior",
    "evidence",
    "target",
    "parents",
    "value_kind",
    "doc",
    "tags",
    "paper_ref",
    "placeholder",
}


# --- canonical JSON emission -------------------------------------------------


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise MtairError("SYNTAX", "non-finite float cannot be serialized; use 'never'")
        if value == int(value) and abs(value) < 1e16:
            out.append(f"{value:.1f}")
        else:
            out.append(format(value, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(":")
            _emit(item, out)
        out.append("}")
    else:
        raise MtairError("SYNTAX", f"cannot serialize {type(value).__name__}")


def dumps_stable(value) -> str:
    """Compact JSON with deterministic ordering and 17-significant-digit floats."""
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


# --- distribution and kind codecs --------------------------------------------


def dist_to_json(dist: DistributionSpec) -> dict:
    if isinstance(dist, Point):
        value = dist.value if isinstance(dist.value, bool) else float(dist.value)
        return {"type": "point", "value": value}
    if isinstance(dist, Bernoulli):
        return {"type": "bernoulli", "p": float(dist.p)}
    if isinstance(dist, Categorical):
        return {"type": "categorical", "labels": list(dist.labels), "probs": [float(p) for p in dist.probs]}
    if isinstance(dist, Uniform):
        return {"type": "uniform", "lo": float(dist.lo), "hi": float(dist.hi)}
    if isinstance(dist, LogNormal):
        return {"type": "lognormal", "median": float(dist.median), "sigma_log10": float(dist.sigma_log10)}
    if isinstance(dist, Normal):
        return {"type": "normal", "mean": float(dist.mean), "sd": float(dist.sd)}
    if isinstance(dist, Mixture):
        return {
            "type": "mixture",
            "components": [[w, dist_to_json(child)] for w, child in dist.components],
        }
    raise MtairError("SYNTAX", f"cannot serialize distribution {type(dist).__name__}")


def dist_from_json(data: Mapping, where: str, diags: list[Diagnostic]) -> DistributionSpec | None:
    tag = data.get("type")
    try:
        if tag == "point":
            return Point(value=data["value"])
        if tag == "bernoulli":
            return Bernoulli(p=float(data["p"]))
        if tag == "categorical":
            return Categorical(labels=tuple(data["labels"]), probs=tuple(float(p) for p in data["probs"]))
        if tag == "uniform":
            return Uniform(lo=float(data["lo"]), hi=float(data["hi"]))
        if tag == "lognormal":
            return LogNormal(median=float(data["median"]), sigma_log10=float(data["sigma_log10"]))
        if tag == "normal":
            return Normal(mean=float(data["mean"]), sd=float(data["sd"]))
        if tag == "mixture":
            components = []
            for w, child in data["components"]:
                sub = dist_from_json(child, where, diags)
                if sub is None:
                    return None
                components.append((float(w), sub))
            return Mixture(tuple(components))
    except (KeyError, TypeError, ValueError) as exc:
        diags.append(Diagnostic("SYNTAX", where, "error", f"bad distribution: {exc}"))
        return None
    diags.append(Diagnostic("UNKNOWN_KIND", where, "error", f"unknown distribution type {tag!r}"))
    return None


def kind_to_json(kind: ValueKind) -> dict:
    if isinstance(kind, BoolKind):
        return {"type": "bool"}
    if isinstance(kind, RealKind):
        return {"type": "real", "unit": kind.unit} if kind.unit else {"type": "real"}
    if isinstance(kind, CategoryKind):
        return {"type": "category", "labels": list(kind.labels)}
    if isinstance(kind, YearKind):
        return {"type": "year"}
    if isinstance(kind, SeriesKind):
        return {"type": "series", "start": kind.start, "end": kind.end}
    raise MtairError("SYNTAX", f"cannot serialize value kind {type(kind).__name__}")


def kind_from_json(data, where: str, horizon: tuple[int, int], diags: list[Diagnostic]) -> ValueKind | None:
    if not isinstance(data, Mapping):
        diags.append(Diagnostic("SYNTAX", where, "error", "value_kind must be an object"))
        return None
    tag = data.get("type")
    try:
        if tag == "bool":
            return BoolKind()
        if tag == "real":
            return RealKind(unit=str(data.get("unit", "")))
        if tag == "category":
            labels = data.get("labels", ())
            if not isinstance(labels, (list, tuple)):
                raise TypeError("labels must be a list")
            return CategoryKind(labels=tuple(str(l) for l in labels))
        if tag == "year":
            return YearKind()
        if tag == "series":
            return SeriesKind(start=int(data.get("start", horizon[0])), end=int(data.get("end", horizon[1])))
    except (TypeError, ValueError) as exc:
        diags.append(Diagnostic("SYNTAX", where, "error", f"bad value kind: {exc}"))
        return None
    diags.append(Diagnostic("UNKNOWN_KIND", where, "error", f"unknown value kind {tag!r}"))
    return None


# --- document parse / serialize -----------------------------------------------


def _string_list(data: Mapping, key: str, where: str, diags: list[Diagnostic]) -> tuple[str, ...]:
    raw = data.get(key, ())
    if not isinstance(raw, (list, tuple)) or not all(isinstance(x, str) for x in raw):
        diags.append(Diagnostic("SYNTAX", f"{where}.{key}", "error", f"{key} must be a list of strings"))
        return ()
    return tuple(raw)


def _node_from_json(record: Mapping, where: str, horizon: tuple[int, int], diags: list[Diagnostic], lenient: bool) -> NodeSpec | None:
    unknown = set(record) - _NODE_FIELDS
    if unknown:
        severity = "warning" if lenient else "error"
        diags.append(
            Diagnostic("SYNTAX", where, severity, f"unknown node fields: {sorted(unknown)}")
        )
        if not lenient:
            return None
    node_id = record.get("id")
    if not isinstance(node_id, str):
        diags.append(Diagnostic("SYNTAX", where, "error", "node is missing a string 'id'"))
        return None
    kind_tag = record.get("kind")
    value_kind = kind_from_json(record.get("value_kind", {"type": "bool"}), f"{where}.value_kind", horizon, diags)
    if value_kind is None:
        return None
    kind = None
    try:
        if kind_tag == "chance":
            dist_raw = record.get("dist", {})
            if not isinstance(dist_raw, Mapping):
                raise TypeError("dist must be an object")
            dist = dist_from_json(dist_raw, f"{where}.dist", diags)
            if dist is None:
                return None
            kind = Chance(dist=dist)
        elif kind_tag == "formula":
            builtin = record.get("builtin")
            if not isinstance(builtin, str):
                diags.append(Diagnostic("SYNTAX", where, "error", "formula node needs a 'builtin' name"))
                return None
            params = record.get("params", {})
            if not isinstance(params, Mapping):
                raise TypeError("params must be an object")
            kind = Formula(builtin=builtin, params=dict(params))
        elif kind_tag == "classifier":
            evidence_raw = record.get("evidence", [])
            if not isinstance(evidence_raw, list):
                raise TypeError("evidence must be a list")
            items = []
            for i, raw in enumerate(evidence_raw):
                try:
                    items.append(
                        EvidenceItem(
                            name=str(raw["name"]),
                            p_given_h=float(raw["p_given_h"]),
                            p_given_not_h=float(raw["p_given_not_h"]),
                            source=raw.get("source"),
                        )
                    )
                except (KeyError, TypeError, ValueError) as exc:
                    diags.append(Diagnostic("SYNTAX", f"{where}.evidence[{i}]", "error", str(exc)))
                    return None
            kind = Classifier(prior=float(record.get("prior", 0.5)), evidence=tuple(items))
        elif kind_tag == "alias":
            target = record.get("target")
            if not isinstance(target, str):
                diags.append(Diagnostic("SYNTAX", where, "error", "alias node needs a 'target' id"))
                return None
            kind = Alias(target=target)
        else:
            diags.append(Diagnostic("UNKNOWN_KIND", where, "error", f"unknown node kind {kind_tag!r}"))
            return None
    except (TypeError, ValueError) as exc:
        diags.append(Diagnostic("SYNTAX", where, "error", str(exc)))
        return None
    return NodeSpec(
        id=node_id,
        module=str(record.get("module", "")),
        kind=kind,
        parents=_string_list(record, "parents", where, diags),
        value_kind=value_kind,
        doc=str(record.get("doc", "")),
        tags=frozenset(_string_list(record, "tags", where, diags)),
        paper_ref=str(record.get("paper_ref", "")),
        placeholder=bool(record.get("placeholder", False)),
    )


def parse_model_document(text: str | bytes, lenient: bool = False) -> tuple[ModelGraph | None, list[Diagnostic]]:
    """Parse a document; returns (graph, diagnostics). The graph is None when
    any error-severity diagnostic was produced."""
    diags: list[Diagnostic] = []
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        diags.append(
            Diagnostic("SYNTAX", f"line {exc.lineno}, column {exc.colno}", "error", exc.msg)
        )
        return None, diags
    if not isinstance(data, dict):
        diags.append(Diagnostic("SYNTAX", "$", "error", "document root must be an object"))
        return None, diags

    unknown = set(data) - _TOP_FIELDS
    if unknown:
        severity = "warning" if lenient else "error"
        diags.append(Diagnostic("SYNTAX", "$", severity, f"unknown top-level fields: {sorted(unknown)}"))

    version = data.get("format_version")
    if version != FORMAT_VERSION:
        diags.append(
            Diagnostic("SYNTAX", "$.format_version", "error", f"unsupported format_version {version!r}")
        )

    meta = data.get("meta", {})
    horizon_raw = meta.get("horizon", [2022, 2122]) if isinstance(meta, dict) else [2022, 2122]
    try:
        horizon = (int(horizon_raw[0]), int(horizon_raw[1]))
    except (TypeError, ValueError, IndexError, KeyError):
        diags.append(Diagnostic("SYNTAX", "$.meta.horizon", "error", "horizon must be [start, end]"))
        horizon = (2022, 2122)

    for key in ("modules", "nodes"):
        if not isinstance(data.get(key, []), list):
            diags.append(Diagnostic("SYNTAX", f"$.{key}", "error", f"{key} must be a list"))
            data = {**data, key: []}
    modules = []
    for i, raw in enumerate(data.get("modules", [])):
        if not isinstance(raw, dict) or "id" not in raw:
            diags.append(Diagnostic("SYNTAX", f"$.modules[{i}]", "error", "module needs an 'id'"))
            continue
        modules.append(ModuleDecl(id=str(raw["id"]), parent=raw.get("parent"), doc=str(raw.get("doc", ""))))

    nodes: list[NodeSpec] = []
    seen_ids: set[str] = set()
    for i, raw in enumerate(data.get("nodes", [])):
        if not isinstance(raw, dict):
            diags.append(Diagnostic("SYNTAX", f"$.nodes[{i}]", "error", "node record must be an object"))
            continue
        node = _node_from_json(raw, f"$.nodes[{i}]", horizon, diags, lenient)
        if node is None:
            continue
        if node.id in seen_ids:
            diags.append(
                Diagnostic("DUPLICATE_ID", f"$.nodes[{i}]", "error", f"node id {node.id!r} already declared")
            )
            continue
        seen_ids.add(node.id)
        nodes.append(node)

    presets_raw = data.get("presets", {})
    if not isinstance(presets_raw, dict) or not all(isinstance(v, dict) for v in presets_raw.values()):
        diags.append(Diagnostic("SYNTAX", "$.presets", "error", "presets must map names to override objects"))
        presets_raw = {}
    graph = ModelGraph.from_nodes(
        nodes,
        modules=modules,
        horizon=horizon,
        outputs=_string_list(data, "outputs", "$", diags),
        cruxes=_string_list(data, "cruxes", "$", diags),
        presets={str(k): dict(v) for k, v in presets_raw.items()},
        title=str(meta.get("title", "")) if isinstance(meta, dict) else "",
    )
    if not any(d.severity == "error" for d in diags):
        diags.extend(validate_graph(graph))
    if any(d.severity == "error" for d in diags):
        return None, diags
    return graph, diags


def serialize_document(graph: ModelGraph) -> str:
    """Canonical document text for a graph; parse(serialize(g)) == g."""
    nodes = []
    for node in graph.nodes.values():
        record: dict = {"id": node.id, "module": node.module}
        kind = node.kind
        if isinstance(kind, Chance):
            record["kind"] = "chance"
            record["dist"] = dist_to_json(kind.dist)
        elif isinstance(kind, Formula):
            record["kind"] = "formula"
            record["builtin"] = kind.builtin
            if kind.params:
                record["params"] = dict(kind.params)
        elif isinstance(kind, Classifier):
            record["kind"] = "classifier"
            record["prior"] = kind.prior
            record["evidence"] = [
                {
                    "name": item.name,
                    "p_given_h": item.p_given_h,
                    "p_given_not_h": item.p_given_not_h,
                    "source": item.source,
                }
                for item in kind.evidence
            ]
        elif isinstance(kind, Alias):
            record["kind"] = "alias"
            record["target"] = kind.target
        if node.parents:
            record["parents"] = list(node.parents)
        record["value_kind"] = kind_to_json(node.value_kind)
        if node.doc:
            record["doc"] = node.doc
        if node.tags:
            record["tags"] = sorted(node.tags)
        if node.paper_ref:
            record["paper_ref"] = node.paper_ref
        if node.placeholder:
            record["placeholder"] = True
        nodes.append(record)
    doc = {
        "format_version": FORMAT_VERSION,
        "meta": {"title": graph.title, "horizon": [graph.horizon[0], graph.horizon[1]]},
        "modules": [
            {"id": m.id, "parent": m.parent, "doc": m.doc} for m in graph.modules
        ],
        "nodes": nodes,
        "outputs": list(graph.outputs),
        "cruxes": list(graph.cruxes),
        "presets": {name: dict(sorted(vals.items())) for name, vals in graph.presets.items()},
    }
    return dumps_stable(doc) + "\n"


# --- run reports ----------------------------------------------------------------


def _year_value(value: float | None):
    if value is None:
        return None
    if math.isinf(value):
        return "never"
    return value


def summary_to_json(summary: PosteriorSummary) -> dict:
    out: dict = {"node": summary.node, "kind": summary.kind, "n": summary.n}
    if summary.probability_true is not None:
        out["probability_true"] = summary.probability_true
        out["std_error"] = summary.std_error
    elif summary.kind == "category":
        out["category_probs"] = dict(sorted(summary.category_probs.items()))
        out["std_error"] = summary.std_error
    elif summary.kind == "series":
        out["series_means"] = summary.series_means
    else:
        out["mean"] = _year_value(summary.mean)
        out["std_error"] = summary.std_error
        if summary.p_never is not None:
            out["p_never"] = summary.p_never
        out["quantiles"] = {format(q, ".17g"): _year_value(v) for q, v in sorted(summary.quantiles.items())}
    return out


@dataclass
class RunReport:
    engine_version: str
    model_title: str
    samples: int
    seed: int
    preset: str | None
    overrides: dict
    outputs: list[dict]
    timelines: list[dict]
    sensitivity: list[dict] | None = None

    def to_json(self) -> dict:
        data = {
            "engine_version": self.engine_version,
            "model": self.model_title,
            "config": {
                "samples": self.samples,
                "seed": self.seed,
                "preset": self.preset,
                "overrides": dict(sorted(self.overrides.items())),
            },
            "outputs": self.outputs,
            "timelines": self.timelines,
        }
        if self.sensitivity is not None:
            data["sensitivity"] = self.sensitivity
        return data


def serialize_report(report: RunReport) -> bytes:
    return (dumps_stable(report.to_json()) + "\n").encode("utf-8")


def parse_report(text: str | bytes) -> dict:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return json.loads(text)


def resolve_preset(graph: ModelGraph, preset: str | None) -> dict:
    if preset is None:
        return {}
    if preset not in graph.presets:
        raise MtairError("NODE_NOT_FOUND", f"no preset named {preset!r}; have {sorted(graph.presets)}")
    return dict(graph.presets[preset])


def sensitivity_rows_to_json(rows: Sequence[SensitivityRow]) -> list[dict]:
    return [
        {
            "crux": row.crux,
            "value_a": row.value_a,
            "value_b": row.value_b,
            "p_a": row.p_a,
            "p_b": row.p_b,
            "delta": row.delta,
        }
        for row in rows
    ]


_CHUNK_SAMPLES = 25_000


def _summaries_for(
    graph: ModelGraph, config: RunConfig, wanted: Sequence[str], timeline_nodes: Sequence[str]
) -> dict[str, PosteriorSummary]:
    """Summaries for the requested nodes, chunking long runs so the wide
    per-year series columns never all sit in memory at once."""
    from .engine import SampleSet, evaluate_columns
    from .model import resolve_alias, topological_order

    keep = list(dict.fromkeys(list(wanted) + list(timeline_nodes)))
    n = config.samples
    if n <= _CHUNK_SAMPLES:
        sample_set = run_monte_carlo(graph, config, keep=keep)
        return {nid: estimate(sample_set, nid) for nid in keep}

    real_ids = {nid: resolve_alias(graph, nid) for nid in keep}
    series_ids = {
        real for real in real_ids.values() if isinstance(graph.nodes[real].value_kind, SeriesKind)
    }
    scalar_parts: dict[str, list[np.ndarray]] = {real: [] for real in set(real_ids.values()) - series_ids}
    series_sums: dict[str, np.ndarray] = {}
    for start in range(0, n, _CHUNK_SAMPLES):
        indices = np.arange(start, min(start + _CHUNK_SAMPLES, n), dtype=np.uint64)
        columns = evaluate_columns(graph, config, keep=keep, sample_indices=indices)
        for real in scalar_parts:
            scalar_parts[real].append(columns[real])
        for real in series_ids:
            total = columns[real].sum(axis=0)
            series_sums[real] = series_sums.get(real, 0.0) + total
    merged = {real: np.concatenate(parts) for real, parts in scalar_parts.items()}
    sample_set = SampleSet(graph=graph, config=config, order=topological_order(graph), columns=merged)
    out: dict[str, PosteriorSummary] = {}
    for nid in keep:
        real = real_ids[nid]
        if real in series_ids:
            means = series_sums[real] / float(n)
            out[nid] = PosteriorSummary(
                node=nid, kind="series", n=n, series_means=[float(v) for v in means]
            )
        else:
            out[nid] = estimate(sample_set, nid)
    return out


def build_run_report(
    graph: ModelGraph,
    samples: int,
    seed: int,
    overrides: Mapping[str, object] | None = None,
    preset: str | None = None,
    targets: Sequence[str] | None = None,
    sensitivity_target: str | None = None,
    sensitivity_cruxes: Sequence[str] | None = None,
) -> RunReport:
    """Run the model and summarize: the one code path the CLI and API share."""
    merged: dict = resolve_preset(graph, preset)
    merged.update(dict(overrides or {}))
    config = RunConfig(samples=samples, seed=seed, overrides=merged)
    wanted = list(targets) if targets else list(graph.outputs)
    for node_id in wanted:
        if node_id not in graph.nodes:
            raise MtairError("NODE_NOT_FOUND", f"no node named {node_id!r}")
    timeline_nodes = [
        nid
        for nid, node in graph.nodes.items()
        if "timeline" in node.tags and isinstance(node.value_kind, SeriesKind)
    ]
    summaries = _summaries_for(graph, config, wanted, timeline_nodes)
    outputs = [summary_to_json(summaries[nid]) for nid in wanted]
    timelines = []
    for nid in timeline_nodes:
        summary = summaries[nid]
        kind = graph.nodes[nid].value_kind
        timelines.append(
            {
                "node": nid,
                "start": kind.start,
                "end": kind.end,
                "cdf": summary.series_means,
                "never_mass": 1.0 - summary.series_means[-1],
            }
        )
    sensitivity = None
    if sensitivity_target is not None:
        cruxes = list(sensitivity_cruxes) if sensitivity_cruxes else list(graph.cruxes)
        rows = sensitivity_sweep(graph, sensitivity_target, cruxes, config)
        sensitivity = sensitivity_rows_to_json(rows)
    return RunReport(
        engine_version=__version__,
        model_title=graph.title,
        samples=samples,
        seed=seed,
        preset=preset,
        overrides=dict(overrides or {}) if preset is None else {**resolve_preset(graph, preset), **dict(overrides or {})},
        outputs=outputs,
        timelines=timelines,
        sensitivity=sensitivity,
    )
