"""Monte Carlo evaluation of a hypothesis graph.

Nodes are evaluated column-wise (one numpy array per node holding all
samples) in topological order. Draws come from the counter-based generator
keyed by (seed, sample index, node position), so overriding a node leaves
every non-descendant's values bit-identical -- the common-random-numbers
property the sensitivity sweep relies on.

Overrides use intervention semantics: ancestors sample normally, the target
node is clamped in every sample, and descendants recompute from the clamped
value. There is no observational conditioning.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import builtins as builtin_registry
from .builtins import NEVER, BlockRng, EvalContext
from .errors import MtairError, require
from .model import (
    Alias,
    BoolKind,
    CategoryKind,
    Chance,
    Classifier,
    EvidenceItem,
    Formula,
    ModelGraph,
    NodeSpec,
    RealKind,
    SeriesKind,
    YearKind,
    dependency_ids,
    resolve_alias,
    topological_order,
)
from .dist import sample_block

DEFAULT_QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)


@dataclass(frozen=True)
class RunConfig:
    samples: int
    seed: int
    overrides: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        require(self.samples >= 1, "INVALID_PARAMS", f"samples must be >= 1, got {self.samples}")


@dataclass
class SampleSet:
    graph: ModelGraph
    config: RunConfig
    order: list[str]
    columns: dict[str, np.ndarray]

    @property
    def n(self) -> int:
        return self.config.samples

    def column(self, node_id: str) -> np.ndarray:
        if node_id not in self.graph.nodes:
            raise MtairError("NODE_NOT_FOUND", f"no node named {node_id!r}")
        if node_id not in self.columns:
            raise MtairError("NODE_NOT_FOUND", f"column for {node_id!r} was not retained")
        return self.columns[node_id]


@dataclass
class PosteriorSummary:
    node: str
    kind: str
    n: int
    mean: float | None = None
    std_error: float = 0.0
    quantiles: dict[float, float] = field(default_factory=dict)
    probability_true: float | None = None
    category_probs: dict[str, float] | None = None
    series_means: list[float] | None = None
    p_never: float | None = None


@dataclass(frozen=True)
class SensitivityRow:
    crux: str
    value_a: object
    value_b: object
    p_a: float
    p_b: float

    @property
    def delta(self) -> float:
        return self.p_a - self.p_b


# --- override plumbing ----------------------------------------------------


def coerce_value(node: NodeSpec, value: object):
    """Check an intervention value against the node's value kind."""
    kind = node.value_kind
    if isinstance(kind, BoolKind):
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        raise MtairError("KIND_MISMATCH", f"{node.id} expects a boolean, got {value!r}")
    if isinstance(kind, RealKind):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise MtairError("KIND_MISMATCH", f"{node.id} expects a number, got {value!r}")
    if isinstance(kind, YearKind):
        if value == "never":
            return NEVER
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise MtairError("KIND_MISMATCH", f"{node.id} expects a year or 'never', got {value!r}")
    if isinstance(kind, CategoryKind):
        if isinstance(value, str) and value in kind.labels:
            return kind.labels.index(value)
        raise MtairError(
            "KIND_MISMATCH", f"{node.id} expects one of {list(kind.labels)}, got {value!r}"
        )
    if isinstance(kind, SeriesKind):
        if isinstance(value, (list, tuple, np.ndarray)) and len(value) == len(kind):
            return np.asarray(value, dtype=np.float64)
        raise MtairError(
            "KIND_MISMATCH", f"{node.id} expects a series of length {len(kind)}, got {value!r}"
        )
    raise MtairError("KIND_MISMATCH", f"{node.id} has unsupported value kind {kind}")


def resolve_overrides(graph: ModelGraph, overrides: Mapping[str, object]) -> dict[str, object]:
    """Map override ids through aliases and validate values against kinds."""
    resolved: dict[str, object] = {}
    for node_id, value in overrides.items():
        if node_id not in graph.nodes:
            raise MtairError("NODE_NOT_FOUND", f"override target {node_id!r} does not exist")
        real = resolve_alias(graph, node_id)
        resolved[real] = coerce_value(graph.nodes[real], value)
    return resolved


def _broadcast(node: NodeSpec, value, n: int) -> np.ndarray:
    kind = node.value_kind
    if isinstance(kind, BoolKind):
        return np.full(n, bool(value), dtype=bool)
    if isinstance(kind, CategoryKind):
        return np.full(n, int(value), dtype=np.int64)
    if isinstance(kind, SeriesKind):
        return np.tile(np.asarray(value, dtype=np.float64), (n, 1))
    return np.full(n, float(value), dtype=np.float64)


# --- evaluation -----------------------------------------------------------


def _classifier_column(
    node: NodeSpec, kind: Classifier, columns: Mapping[str, np.ndarray], graph: ModelGraph, rng: BlockRng, n: int
) -> np.ndarray:
    if not (0.0 < kind.prior < 1.0):
        raise MtairError("DEGENERATE_PRIOR", f"{node.id} prior must be strictly inside (0,1)")
    log_odds = np.full(n, math.log(kind.prior / (1.0 - kind.prior)), dtype=np.float64)
    for item in kind.evidence:
        if item.source is None:
            continue
        if isinstance(item.source, str):
            obs = columns[resolve_alias(graph, item.source)].astype(bool)
        else:
            obs = np.full(n, bool(item.source), dtype=bool)
        lr_true = math.log(item.p_given_h / item.p_given_not_h)
        lr_false = math.log((1.0 - item.p_given_h) / (1.0 - item.p_given_not_h))
        log_odds = log_odds + np.where(obs, lr_true, lr_false)
    posterior = 1.0 / (1.0 + np.exp(-log_odds))
    if isinstance(node.value_kind, RealKind):
        return posterior
    return rng.uniform() < posterior


def _evaluate(
    graph: ModelGraph,
    config: RunConfig,
    order: list[str],
    node_positions: dict[str, int],
    only_nodes: set[str] | None = None,
    base_columns: Mapping[str, np.ndarray] | None = None,
    keep: set[str] | None = None,
    sample_indices: np.ndarray | None = None,
) -> dict[str, np.ndarray]:
    if sample_indices is None:
        sample_indices = np.arange(config.samples, dtype=np.uint64)
    n = sample_indices.shape[0]
    overrides = resolve_overrides(graph, config.overrides)
    columns: dict[str, np.ndarray] = dict(base_columns or {})

    remaining: dict[str, int] = {nid: 0 for nid in graph.nodes}
    targets = [nid for nid in order if only_nodes is None or nid in only_nodes]
    for nid in targets:
        for dep in dependency_ids(graph.nodes[nid]):
            remaining[resolve_alias(graph, dep)] += 1

    for nid in targets:
        node = graph.nodes[nid]
        if nid in overrides:
            columns[nid] = _broadcast(node, overrides[nid], n)
        else:
            kind = node.kind
            rng = BlockRng(config.seed, node_positions[nid], sample_indices)
            if isinstance(kind, Chance):
                columns[nid] = sample_block(kind.dist, rng)
            elif isinstance(kind, Alias):
                columns[nid] = columns[resolve_alias(graph, nid)]
            elif isinstance(kind, Classifier):
                columns[nid] = _classifier_column(node, kind, columns, graph, rng, n)
            elif isinstance(kind, Formula):
                spec = builtin_registry.get(kind.builtin)
                if spec is None:
                    raise MtairError("UNKNOWN_BUILTIN", f"{nid} names unknown builtin {kind.builtin!r}")
                args = [columns[resolve_alias(graph, p)] for p in node.parents]
                ctx = EvalContext(n=n, horizon=graph.horizon, rng=rng, node_id=nid)
                try:
                    columns[nid] = builtin_registry.apply(spec, kind.params, args, ctx)
                except MtairError as exc:
                    raise MtairError(
                        "BUILTIN_FAILURE", f"{kind.builtin} failed at node {nid!r}: {exc.message}"
                    ) from exc
                except Exception as exc:
                    raise MtairError(
                        "BUILTIN_FAILURE",
                        f"{kind.builtin} failed at node {nid!r}: {type(exc).__name__}: {exc}",
                    ) from exc
            else:
                raise MtairError("BUILTIN_FAILURE", f"{nid} has unsupported kind {type(kind).__name__}")
        if keep is not None:
            for dep in dependency_ids(node):
                real = resolve_alias(graph, dep)
                remaining[real] -= 1
                if remaining[real] == 0 and real not in keep and real in columns:
                    del columns[real]
    if keep is not None:
        for nid in list(columns):
            if nid not in keep:
                del columns[nid]
    return columns


def _worker_count() -> int:
    raw = os.environ.get("MTAIR_THREADS", "1").strip() or "1"
    try:
        threads = int(raw)
    except ValueError:
        return 1
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


def evaluate_columns(
    graph: ModelGraph,
    config: RunConfig,
    keep: Sequence[str] | None = None,
    sample_indices: np.ndarray | None = None,
) -> dict[str, np.ndarray]:
    """Raw per-node columns for an explicit set of absolute sample indexes.

    Because draws key on the absolute index, evaluating [0..n) in one call or
    in disjoint slices yields bit-identical values; callers can therefore
    chunk long runs to bound memory.
    """
    order = topological_order(graph)
    positions = {nid: i for i, nid in enumerate(order)}
    keep_set: set[str] | None = None
    if keep is not None:
        keep_set = {resolve_alias(graph, nid) for nid in keep}
        keep_set.update(k for k in keep if k in graph.nodes)
    return _evaluate(graph, config, order, positions, keep=keep_set, sample_indices=sample_indices)


def run_monte_carlo(
    graph: ModelGraph, config: RunConfig, keep: Sequence[str] | None = None
) -> SampleSet:
    """Evaluate every node for `config.samples` joint draws.

    `keep` limits which columns are retained (aliases resolved); by default
    all columns are kept. Results are a pure function of (graph, config):
    draws key on absolute sample indexes, so splitting the run across the
    MTAIR_THREADS workers cannot change any value.
    """
    order = topological_order(graph)
    positions = {nid: i for i, nid in enumerate(order)}
    keep_set: set[str] | None = None
    if keep is not None:
        keep_set = {resolve_alias(graph, nid) for nid in keep}
        keep_set.update(k for k in keep if k in graph.nodes)
    threads = _worker_count()
    n = config.samples
    if threads > 1 and n >= 2 * threads:
        bounds = np.linspace(0, n, threads + 1, dtype=np.int64)
        chunks = [np.arange(bounds[i], bounds[i + 1], dtype=np.uint64) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda idx: _evaluate(
                        graph, config, order, positions, keep=keep_set, sample_indices=idx
                    ),
                    chunks,
                )
            )
        columns = {
            nid: np.concatenate([part[nid] for part in parts]) for nid in parts[0]
        }
    else:
        columns = _evaluate(graph, config, order, positions, keep=keep_set)
    return SampleSet(graph=graph, config=config, order=order, columns=columns)


# --- classifier op --------------------------------------------------------


def naive_bayes_posterior(prior: float, evidence: Sequence[EvidenceItem]) -> float:
    """Posterior for a binary hypothesis from independent evidence items.

    Items with source None are unobserved and contribute factor 1; fixed
    Boolean sources are the observations. Likelihood factors are multiplied
    in sorted order so any permutation of the items gives bit-identical
    output.
    """
    if not (0.0 < prior < 1.0):
        raise MtairError("DEGENERATE_PRIOR", f"prior must be strictly inside (0,1), got {prior}")
    factors: list[float] = []
    for item in evidence:
        require(
            0.0 < item.p_given_h < 1.0 and 0.0 < item.p_given_not_h < 1.0,
            "INVALID_PARAMS",
            f"evidence {item.name!r} likelihoods must be strictly inside (0,1)",
        )
        if item.source is None:
            continue
        if isinstance(item.source, str):
            raise MtairError(
                "INVALID_PARAMS",
                f"evidence {item.name!r} still references node {item.source!r}; resolve it first",
            )
        if item.source:
            factors.append(item.p_given_h / item.p_given_not_h)
        else:
            factors.append((1.0 - item.p_given_h) / (1.0 - item.p_given_not_h))
    odds = prior / (1.0 - prior)
    for factor in sorted(factors):
        odds *= factor
    return odds / (1.0 + odds)


# --- posterior summaries --------------------------------------------------


def estimate(samples: SampleSet, node_id: str, quantiles: Sequence[float] = DEFAULT_QUANTILES) -> PosteriorSummary:
    """Summarize one node's sampled column with Monte Carlo standard error."""
    if node_id not in samples.graph.nodes:
        raise MtairError("NODE_NOT_FOUND", f"no node named {node_id!r}")
    node = samples.graph.nodes[node_id]
    col = samples.column(resolve_alias(samples.graph, node_id))
    n = samples.n
    kind = node.value_kind

    if isinstance(kind, BoolKind):
        p = float(np.mean(col))
        se = math.sqrt(p * (1.0 - p) / n)
        return PosteriorSummary(
            node=node_id, kind="bool", n=n, mean=p, std_error=se, probability_true=p
        )
    if isinstance(kind, CategoryKind):
        probs = {
            label: float(np.mean(col == idx)) for idx, label in enumerate(kind.labels)
        }
        top = max(probs.values())
        se = math.sqrt(top * (1.0 - top) / n)
        return PosteriorSummary(node=node_id, kind="category", n=n, std_error=se, category_probs=probs)
    if isinstance(kind, SeriesKind):
        means = np.mean(col, axis=0)
        return PosteriorSummary(node=node_id, kind="series", n=n, series_means=[float(v) for v in means])
    if isinstance(kind, YearKind):
        return _numeric_summary(node_id, "year", col, n, quantiles)
    return _numeric_summary(node_id, "real", col.astype(np.float64), n, quantiles)


def _numeric_summary(
    node_id: str, kind: str, col: np.ndarray, n: int, quantiles: Sequence[float]
) -> PosteriorSummary:
    """Mean/error/quantiles for a numeric column; +inf entries mean "never"
    and are excluded from the mean but kept as order statistics."""
    finite = np.isfinite(col)
    if finite.all():
        mean = float(np.mean(col))
        se = float(np.std(col, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
        qs = {float(q): float(np.quantile(col, q)) for q in quantiles}
        p_never = 0.0 if kind == "year" else None
    else:
        mean = float(np.mean(col[finite])) if finite.any() else None
        k = int(finite.sum())
        se = float(np.std(col[finite], ddof=1) / math.sqrt(k)) if k > 1 else 0.0
        qs = {float(q): float(np.quantile(col, q, method="lower")) for q in quantiles}
        p_never = float(np.mean(~finite))
    return PosteriorSummary(
        node=node_id, kind=kind, n=n, mean=mean, std_error=se, quantiles=qs, p_never=p_never
    )


# --- sensitivity ----------------------------------------------------------


def _descendants(graph: ModelGraph, root: str) -> set[str]:
    children: dict[str, list[str]] = {nid: [] for nid in graph.nodes}
    for node in graph.nodes.values():
        for dep in dependency_ids(node):
            if dep in children:
                children[dep].append(node.id)
    out: set[str] = set()
    stack = [root]
    while stack:
        current = stack.pop()
        for child in children[current]:
            if child not in out:
                out.add(child)
                stack.append(child)
    return out


def _crux_arm_values(node: NodeSpec) -> list[tuple[object, object]]:
    kind = node.value_kind
    if isinstance(kind, BoolKind):
        return [(True, False)]
    if isinstance(kind, CategoryKind):
        return [(kind.labels[0], kind.labels[-1])]
    raise MtairError("KIND_MISMATCH", f"crux {node.id} must be Bool or Category")


def sensitivity_sweep(
    graph: ModelGraph,
    target: str,
    cruxes: Sequence[str],
    config: RunConfig,
    all_pairs: bool = False,
) -> list[SensitivityRow]:
    """One-at-a-time intervention sweep over cruxes, tornado-ordered.

    Both arms share the base run's random numbers; only the crux's
    descendants are re-evaluated, so a crux with no path to the target gets
    a delta of exactly zero.
    """
    if target not in graph.nodes:
        raise MtairError("NODE_NOT_FOUND", f"no node named {target!r}")
    target_real = resolve_alias(graph, target)
    if not isinstance(graph.nodes[target_real].value_kind, BoolKind):
        raise MtairError("TARGET_NOT_BOOL", f"sensitivity target {target!r} must be Boolean")

    order = topological_order(graph)
    positions = {nid: i for i, nid in enumerate(order)}
    base = _evaluate(graph, config, order, positions)

    rows: list[SensitivityRow] = []
    for crux_id in cruxes:
        if crux_id not in graph.nodes:
            raise MtairError("NODE_NOT_FOUND", f"no crux named {crux_id!r}")
        crux_real = resolve_alias(graph, crux_id)
        node = graph.nodes[crux_real]
        pairs = _crux_arm_values(node)
        if all_pairs and isinstance(node.value_kind, CategoryKind):
            labels = node.value_kind.labels
            pairs = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1 :]]
        affected = _descendants(graph, crux_real) | {crux_real}
        for value_a, value_b in pairs:
            arm_p = []
            for value in (value_a, value_b):
                arm_config = RunConfig(
                    samples=config.samples,
                    seed=config.seed,
                    overrides={**dict(config.overrides), crux_id: value},
                )
                cols = _evaluate(
                    graph,
                    arm_config,
                    order,
                    positions,
                    only_nodes=affected | {target_real},
                    base_columns=base,
                )
                arm_p.append(float(np.mean(cols[target_real])))
            rows.append(
                SensitivityRow(
                    crux=crux_id, value_a=value_a, value_b=value_b, p_a=arm_p[0], p_b=arm_p[1]
                )
            )
    rows.sort(key=lambda r: (-abs(r.delta), r.crux))
    return rows
