"""Independent oracles used to fix expected values.

These deliberately avoid the engine's evaluation code: the enumeration
oracle propagates exact joint probabilities over dictionaries, and the
product oracle emulates IEEE-754 multiplication with exact rationals. They
exist so Monte Carlo answers are checked against something that cannot
share a bug with the sampler.
"""

from __future__ import annotations

import random
from fractions import Fraction

from mtair.dist import Bernoulli, Categorical
from mtair.model import BoolKind, CategoryKind, Chance, Formula, ModelGraph, NodeSpec, topological_order


def ieee_left_product(values: list[float]) -> float:
    """Left-associated product with correct rounding at every step."""
    acc = float(values[0])
    for v in values[1:]:
        acc = float(Fraction(acc) * Fraction(float(v)))
    return acc


def _formula_value(node: NodeSpec, assignment: dict) -> bool:
    kind = node.kind
    values = [assignment[p] for p in node.parents]
    if kind.builtin == "AND":
        return all(values)
    if kind.builtin == "OR":
        return any(values)
    if kind.builtin == "NOT":
        return not values[0]
    raise AssertionError(f"oracle cannot evaluate builtin {kind.builtin}")


def _cpt_prob(node: NodeSpec, assignment: dict) -> float:
    parts = []
    for p in node.parents:
        v = assignment[p]
        parts.append(("t" if v else "f") if isinstance(v, bool) else str(int(v)))
    return float(node.kind.params["table"][",".join(parts)])


def enumerate_bool_probabilities(graph: ModelGraph) -> dict[str, float]:
    """Exact P(node = True) for every Boolean node by joint enumeration."""
    order = topological_order(graph)
    worlds: list[tuple[dict, float]] = [({}, 1.0)]
    for nid in order:
        node = graph.nodes[nid]
        new_worlds: list[tuple[dict, float]] = []
        for assignment, prob in worlds:
            if isinstance(node.kind, Chance):
                dist = node.kind.dist
                if isinstance(dist, Bernoulli):
                    branches = [(True, dist.p), (False, 1.0 - dist.p)]
                elif isinstance(dist, Categorical):
                    branches = [(i, p) for i, p in enumerate(dist.probs)]
                else:
                    raise AssertionError("oracle handles only discrete chance nodes")
                for value, p in branches:
                    if p > 0.0:
                        new_worlds.append(({**assignment, nid: value}, prob * p))
            elif isinstance(node.kind, Formula):
                if node.kind.builtin == "CPT_BOOL":
                    p = _cpt_prob(node, assignment)
                    if p > 0.0:
                        new_worlds.append(({**assignment, nid: True}, prob * p))
                    if p < 1.0:
                        new_worlds.append(({**assignment, nid: False}, prob * (1.0 - p)))
                else:
                    new_worlds.append(({**assignment, nid: _formula_value(node, assignment)}, prob))
            else:
                raise AssertionError("oracle handles chance and formula nodes only")
        worlds = new_worlds
    out: dict[str, float] = {}
    for nid in order:
        if isinstance(graph.nodes[nid].value_kind, BoolKind):
            out[nid] = sum(prob for assignment, prob in worlds if assignment[nid] is True)
    return out


def random_discrete_model(seed: int, max_nodes: int = 12) -> ModelGraph:
    """Random all-discrete DAG: Bernoulli roots, logic gates, CPT rows."""
    rng = random.Random(seed)
    count = rng.randint(3, max_nodes)
    nodes: list[NodeSpec] = []
    ids: list[str] = []
    bool_ids: list[str] = []
    for i in range(count):
        nid = f"n{i}"
        roll = rng.random()
        if not bool_ids or roll < 0.35:
            p = rng.uniform(0.05, 0.95)
            if rng.random() < 0.15:
                labels = ("low", "mid", "high")
                raw = [rng.uniform(0.1, 1.0) for _ in labels]
                total = sum(raw)
                probs = tuple(x / total for x in raw)
                probs = probs[:-1] + (1.0 - sum(probs[:-1]),)
                nodes.append(
                    NodeSpec(
                        id=nid, module="m", kind=Chance(Categorical(labels, probs)),
                        value_kind=CategoryKind(labels),
                    )
                )
                ids.append(nid)
                continue  # categorical: not usable as a logic-gate parent
            nodes.append(NodeSpec(id=nid, module="m", kind=Chance(Bernoulli(p)), value_kind=BoolKind()))
        elif roll < 0.7:
            builtin = rng.choice(["AND", "OR", "NOT"])
            arity = 1 if builtin == "NOT" else rng.randint(1, min(3, len(bool_ids)))
            parents = tuple(rng.sample(bool_ids, arity))
            nodes.append(
                NodeSpec(id=nid, module="m", kind=Formula(builtin), parents=parents, value_kind=BoolKind())
            )
        else:
            arity = rng.randint(1, min(2, len(ids)))
            parents = tuple(rng.sample(ids, arity))
            combos = [[]]
            for p in parents:
                node = next(n for n in nodes if n.id == p)
                symbols = (
                    ["t", "f"]
                    if isinstance(node.value_kind, BoolKind)
                    else [str(k) for k in range(len(node.value_kind.labels))]
                )
                combos = [c + [s] for c in combos for s in symbols]
            table = {",".join(c): rng.uniform(0.05, 0.95) for c in combos}
            nodes.append(
                NodeSpec(
                    id=nid, module="m", kind=Formula("CPT_BOOL", {"table": table}),
                    parents=parents, value_kind=BoolKind(),
                )
            )
        ids.append(nid)
        if isinstance(nodes[-1].value_kind, BoolKind):
            bool_ids.append(nid)
    outputs = tuple(bool_ids)
    return ModelGraph.from_nodes(nodes, outputs=outputs, cruxes=())
