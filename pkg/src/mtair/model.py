"""Typed hypothesis-graph data model and structural validation.

Node ids are globally unique dotted paths; edges point from parents to the
nodes whose probability estimates they inform. The graph must be acyclic.
Value kinds are checked statically here, never at sample time.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .dist import Bernoulli, Categorical, DistributionSpec, LogNormal, Mixture, Normal, Point, Uniform
from .errors import MtairError

_ID_RE = re.compile(r"^[a-z0-9_]+(\.[a-z0-9_]+)*$")


def valid_node_id(node_id: str) -> bool:
    return bool(node_id) and _ID_RE.match(node_id) is not None


# --- value kinds ---------------------------------------------------------


@dataclass(frozen=True)
class BoolKind:
    pass


@dataclass(frozen=True)
class RealKind:
    unit: str = ""


@dataclass(frozen=True)
class CategoryKind:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class YearKind:
    pass


@dataclass(frozen=True)
class SeriesKind:
    start: int
    end: int

    def __len__(self) -> int:
        return self.end - self.start + 1


ValueKind = Union[BoolKind, RealKind, CategoryKind, YearKind, SeriesKind]


# --- node kinds ----------------------------------------------------------


@dataclass(frozen=True)
class EvidenceItem:
    """One naive-Bayes evidence feature with likelihoods under H and not-H.

    `source` names the Boolean node supplying the observation; a literal
    True/False fixes it, and None marks the item unobserved (factor 1).
    """

    name: str
    p_given_h: float
    p_given_not_h: float
    source: str | bool | None


@dataclass(frozen=True)
class Chance:
    dist: DistributionSpec


@dataclass(frozen=True)
class Formula:
    builtin: str
    params: Mapping[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class Classifier:
    prior: float
    evidence: tuple[EvidenceItem, ...]


@dataclass(frozen=True)
class Alias:
    target: str


NodeKind = Union[Chance, Formula, Classifier, Alias]


@dataclass(frozen=True)
class NodeSpec:
    id: str
    module: str
    kind: NodeKind
    parents: tuple[str, ...] = ()
    value_kind: ValueKind = BoolKind()
    doc: str = ""
    tags: frozenset[str] = frozenset()
    paper_ref: str = ""
    placeholder: bool = False


@dataclass(frozen=True)
class ModuleDecl:
    id: str
    parent: str | None = None
    doc: str = ""


@dataclass
class ModelGraph:
    """Validated after construction via validate_graph; immutable by convention."""

    nodes: dict[str, NodeSpec]
    modules: tuple[ModuleDecl, ...] = ()
    horizon: tuple[int, int] = (2022, 2122)
    outputs: tuple[str, ...] = ()
    cruxes: tuple[str, ...] = ()
    presets: dict[str, dict[str, object]] = field(default_factory=dict)
    title: str = ""
    duplicate_ids: tuple[str, ...] = ()

    @staticmethod
    def from_nodes(
        nodes: Iterable[NodeSpec],
        modules: Iterable[ModuleDecl] = (),
        horizon: tuple[int, int] = (2022, 2122),
        outputs: Iterable[str] = (),
        cruxes: Iterable[str] = (),
        presets: Mapping[str, Mapping[str, object]] | None = None,
        title: str = "",
    ) -> "ModelGraph":
        by_id: dict[str, NodeSpec] = {}
        dups: list[str] = []
        for node in nodes:
            if node.id in by_id:
                dups.append(node.id)
            else:
                by_id[node.id] = node
        return ModelGraph(
            nodes=by_id,
            modules=tuple(modules),
            horizon=horizon,
            outputs=tuple(outputs),
            cruxes=tuple(cruxes),
            presets={k: dict(v) for k, v in (presets or {}).items()},
            title=title,
            duplicate_ids=tuple(dups),
        )


# --- diagnostics ----------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    code: str
    node_id: str
    severity: str  # "error" | "warning"
    message: str

    def __str__(self) -> str:
        return f"{self.severity.upper()} {self.code} [{self.node_id}]: {self.message}"


ValidationReport = list


def _err(code: str, node_id: str, message: str) -> Diagnostic:
    return Diagnostic(code=code, node_id=node_id, severity="error", message=message)


def _dist_kind_ok(dist: DistributionSpec, kind: ValueKind) -> bool:
    if isinstance(dist, Bernoulli):
        return isinstance(kind, BoolKind)
    if isinstance(dist, Categorical):
        return isinstance(kind, CategoryKind) and kind.labels == dist.labels
    if isinstance(dist, Point):
        if isinstance(dist.value, bool):
            return isinstance(kind, BoolKind)
        return isinstance(kind, (RealKind, YearKind))
    if isinstance(dist, (Uniform, LogNormal, Normal)):
        return isinstance(kind, (RealKind, YearKind))
    if isinstance(dist, Mixture):
        return all(_dist_kind_ok(child, kind) for _, child in dist.components)
    return False


def validate_graph(graph: ModelGraph) -> ValidationReport:
    """Check every structural invariant; never raises, returns diagnostics.

    Codes: CYCLE, MISSING_PARENT, DUP_ID, ALIAS_UNRESOLVED, KIND_MISMATCH,
    BAD_ARITY, plus BAD_ID for malformed identifiers, MISSING_NODE for
    dangling output/crux references, and UNKNOWN_BUILTIN for formulas
    naming no registered builtin.
    """
    from . import builtins as builtin_registry

    report: list[Diagnostic] = []
    for dup in graph.duplicate_ids:
        report.append(_err("DUP_ID", dup, "node id declared more than once"))

    for node in graph.nodes.values():
        if not valid_node_id(node.id):
            report.append(_err("BAD_ID", node.id, "id must be dotted lowercase [a-z0-9_] segments"))
        if isinstance(node.value_kind, SeriesKind) and node.value_kind.start > node.value_kind.end:
            report.append(_err("KIND_MISMATCH", node.id, "series start year must not exceed end year"))
        if isinstance(node.value_kind, CategoryKind):
            labels = node.value_kind.labels
            if not labels:
                report.append(_err("KIND_MISMATCH", node.id, "category label set must be nonempty"))
            elif len(labels) != len(set(labels)):
                report.append(_err("KIND_MISMATCH", node.id, "category labels must be unique"))
        for parent in node.parents:
            if parent not in graph.nodes:
                report.append(_err("MISSING_PARENT", node.id, f"parent {parent!r} does not exist"))
        kind = node.kind
        if isinstance(kind, Alias):
            if node.parents:
                report.append(_err("BAD_ARITY", node.id, "alias nodes take no parents"))
            if kind.target not in graph.nodes:
                report.append(_err("ALIAS_UNRESOLVED", node.id, f"alias target {kind.target!r} missing"))
        elif isinstance(kind, Chance):
            try:
                from .dist import validate_spec

                validate_spec(kind.dist)
            except MtairError as exc:
                report.append(_err("KIND_MISMATCH", node.id, f"bad distribution: {exc.message}"))
            else:
                if not _dist_kind_ok(kind.dist, node.value_kind):
                    report.append(
                        _err(
                            "KIND_MISMATCH",
                            node.id,
                            f"distribution output does not match value kind {node.value_kind}",
                        )
                    )
            if node.parents:
                report.append(_err("BAD_ARITY", node.id, "chance nodes take no parents"))
        elif isinstance(kind, Formula):
            spec = builtin_registry.get(kind.builtin)
            if spec is None:
                report.append(_err("UNKNOWN_BUILTIN", node.id, f"no builtin named {kind.builtin!r}"))
            else:
                arity_msg = spec.check_arity(len(node.parents))
                if arity_msg:
                    report.append(_err("BAD_ARITY", node.id, arity_msg))
        elif isinstance(kind, Classifier):
            if not (0.0 < kind.prior < 1.0):
                report.append(_err("KIND_MISMATCH", node.id, f"classifier prior {kind.prior} not in (0,1)"))
            for item in kind.evidence:
                if not (0.0 < item.p_given_h < 1.0 and 0.0 < item.p_given_not_h < 1.0):
                    report.append(
                        _err("KIND_MISMATCH", node.id, f"evidence {item.name!r} likelihoods must be in (0,1)")
                    )
                if isinstance(item.source, str) and item.source not in graph.nodes:
                    report.append(
                        _err("MISSING_PARENT", node.id, f"evidence source {item.source!r} does not exist")
                    )
            if not isinstance(node.value_kind, (BoolKind, RealKind)):
                report.append(_err("KIND_MISMATCH", node.id, "classifier nodes must be Bool or Real"))

    for out in graph.outputs:
        if out not in graph.nodes:
            report.append(_err("MISSING_NODE", out, "output id does not exist"))
    for crux in graph.cruxes:
        if crux not in graph.nodes:
            report.append(_err("MISSING_NODE", crux, "crux id does not exist"))
        elif not isinstance(graph.nodes[crux].value_kind, (BoolKind, CategoryKind)):
            report.append(_err("KIND_MISMATCH", crux, "cruxes must have Bool or Category value kind"))

    report.extend(_cycle_diagnostics(graph))
    return report


def _edges(graph: ModelGraph) -> dict[str, list[str]]:
    """parent -> children over both parent lists and alias targets."""
    children: dict[str, list[str]] = {nid: [] for nid in graph.nodes}
    for node in graph.nodes.values():
        for parent in node.parents:
            if parent in children:
                children[parent].append(node.id)
        if isinstance(node.kind, Alias) and node.kind.target in children:
            children[node.kind.target].append(node.id)
        if isinstance(node.kind, Classifier):
            for item in node.kind.evidence:
                if isinstance(item.source, str) and item.source in children:
                    children[item.source].append(node.id)
    return children


def dependency_ids(node: NodeSpec) -> tuple[str, ...]:
    """All upstream ids a node reads: parents, alias target, evidence sources."""
    deps = list(node.parents)
    if isinstance(node.kind, Alias):
        deps.append(node.kind.target)
    if isinstance(node.kind, Classifier):
        for item in node.kind.evidence:
            if isinstance(item.source, str):
                deps.append(item.source)
    return tuple(deps)


def _cycle_diagnostics(graph: ModelGraph) -> list[Diagnostic]:
    children = _edges(graph)
    indegree = {nid: 0 for nid in graph.nodes}
    for node in graph.nodes.values():
        for dep in dependency_ids(node):
            if dep in graph.nodes:
                indegree[node.id] += 1
    queue = [nid for nid, deg in indegree.items() if deg == 0]
    seen = 0
    while queue:
        nid = queue.pop()
        seen += 1
        for child in children[nid]:
            indegree[child] -= 1
            if indegree[child] == 0:
                queue.append(child)
    if seen == len(graph.nodes):
        return []
    members = sorted(nid for nid, deg in indegree.items() if deg > 0)
    return [
        _err("CYCLE", members[0] if members else "", "directed cycle through: " + ", ".join(members))
    ]


def topological_order(graph: ModelGraph) -> list[str]:
    """Every node after all its dependencies; ties broken lexicographically."""
    children = _edges(graph)
    indegree = {nid: 0 for nid in graph.nodes}
    for node in graph.nodes.values():
        for dep in dependency_ids(node):
            if dep in graph.nodes:
                indegree[node.id] += 1
    heap = [nid for nid, deg in indegree.items() if deg == 0]
    heapq.heapify(heap)
    order: list[str] = []
    while heap:
        nid = heapq.heappop(heap)
        order.append(nid)
        for child in sorted(children[nid]):
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(heap, child)
    if len(order) != len(graph.nodes):
        stuck = sorted(nid for nid, deg in indegree.items() if deg > 0)
        raise MtairError("CYCLE", "graph has a directed cycle through: " + ", ".join(stuck))
    return order


def resolve_alias(graph: ModelGraph, node_id: str) -> str:
    """Follow alias links to the terminal non-alias node."""
    if node_id not in graph.nodes:
        raise MtairError("NODE_NOT_FOUND", f"no node named {node_id!r}")
    seen = {node_id}
    current = node_id
    while isinstance(graph.nodes[current].kind, Alias):
        target = graph.nodes[current].kind.target
        if target not in graph.nodes:
            raise MtairError("ALIAS_UNRESOLVED", f"alias {current!r} points at missing node {target!r}")
        if target in seen:
            raise MtairError("CYCLE", f"alias chain loops at {target!r}")
        seen.add(target)
        current = target
    return current
