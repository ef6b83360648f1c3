"""Wiring checks on the shipped model: forcing a crux must move downstream
probabilities in the direction the map encodes. Common random numbers make
the comparisons sharp at modest sample counts.
"""

import numpy as np
import pytest

from mtair.dist import Bernoulli
from mtair.engine import RunConfig, estimate, naive_bayes_posterior, run_monte_carlo
from mtair.model import (
    BoolKind,
    Chance,
    Classifier,
    EvidenceItem,
    ModelGraph,
    NodeSpec,
    validate_graph,
)
from mtair.shipped import load_shipped_model

N = 8_000
SEED = 31


@pytest.fixture(scope="module")
def graph():
    return load_shipped_model()


def prob(graph, node, **forced):
    ss = run_monte_carlo(graph, RunConfig(samples=N, seed=SEED, overrides=forced), keep=[node])
    return estimate(ss, node).probability_true


def test_shipped_model_validates_clean(graph):
    assert validate_graph(graph) == []


def mass_by(graph, year, **forced):
    ss = run_monte_carlo(
        graph, RunConfig(samples=N, seed=SEED, overrides=forced), keep=["timelines.hlmi_year"]
    )
    return float(np.mean(ss.columns["timelines.hlmi_year"] <= year))


def test_difficulty_pushes_timelines_out(graph):
    # The catch-all pathway keeps century-scale arrival likely either way,
    # and total arriving mass is nearly shared, so the difficulty signal
    # lives in the near-to-mid horizon: less mass arrives early when
    # marginal improvements are hard.
    for year in (2035, 2040, 2050, 2060):
        hard = mass_by(graph, year, **{"analogies.difficult_at_hlmi": True})
        easy = mass_by(graph, year, **{"analogies.difficult_at_hlmi": False})
        assert easy > hard, year


def test_strongly_increasing_difficulty_defeats_explosion(graph):
    on = prob(graph, "takeoff.intelligence_explosion", **{"analogies.strongly_increasing_difficulty": True})
    off = prob(graph, "takeoff.intelligence_explosion", **{"analogies.strongly_increasing_difficulty": False})
    assert on < off


def test_discontinuity_forces_concentration(graph):
    assert prob(graph, "takeoff.hlmi_distributed", **{"takeoff.discontinuity": True}) == 0.0


def test_side_channels_delay_emulation(graph):
    # Messy side channels pick the long lag distribution and make skipping
    # high-level understanding unlikely: emulation arrival mass moves later.
    slow = run_monte_carlo(
        graph,
        RunConfig(samples=N, seed=SEED, overrides={"timelines.side_channels": True}),
        keep=["timelines.wbe_arrival"],
    ).columns["timelines.wbe_arrival"]
    fast = run_monte_carlo(
        graph,
        RunConfig(samples=N, seed=SEED, overrides={"timelines.side_channels": False}),
        keep=["timelines.wbe_arrival"],
    ).columns["timelines.wbe_arrival"]
    assert np.isfinite(fast).mean() > np.isfinite(slow).mean()
    for year in (2060, 2090):
        assert np.mean(fast <= year) > np.mean(slow <= year)


def test_reversible_computing_never_delays_arrival(graph):
    cheap = prob(graph, "timelines.hlmi_arrives", **{"hardware.reversible_computing": True})
    floored = prob(graph, "timelines.hlmi_arrives", **{"hardware.reversible_computing": False})
    assert cheap >= floored - 3.0 * (0.25 / N) ** 0.5


def test_generic_training_raises_inner_failure(graph):
    generic = prob(graph, "mesa.inner_failure", **{"mesa.training_task_generic": True})
    specific = prob(graph, "mesa.inner_failure", **{"mesa.training_task_generic": False})
    assert generic > specific


def test_convergent_maximizer_entails_influence_seeking(graph):
    got = prob(
        graph,
        "outcomes.influence_seeking",
        **{"outcomes.instrumental_convergence": True, "outcomes.utility_maximizer": True},
    )
    assert got == 1.0


def test_governance_zeroes_dsa_catastrophe_but_not_losses(graph):
    forced = {"outcomes.governance_prevents": True}
    assert prob(graph, "outcomes.catastrophically_misaligned", **forced) == 0.0
    assert prob(graph, "outcomes.loss_moloch", **forced) > 0.0


def test_safety_success_reduces_misalignment(graph):
    won = prob(graph, "outcomes.misaligned_hlmi", **{"safety.race_won": True})
    lost = prob(graph, "outcomes.misaligned_hlmi", **{"safety.race_won": False})
    assert won == 0.0  # aligned ahead of time blocks technical misalignment
    assert lost > 0.0


def test_hanson_preset_is_self_consistent(graph):
    ss = run_monte_carlo(
        graph,
        RunConfig(samples=2_000, seed=3, overrides=dict(graph.presets["Hanson"])),
        keep=["takeoff.takeoff_speed_class", "takeoff.hlmi_distributed"],
    )
    speed = estimate(ss, "takeoff.takeoff_speed_class").category_probs
    assert speed["weeks_to_months"] == 1.0
    assert estimate(ss, "takeoff.hlmi_distributed").probability_true == 1.0


def test_classifier_node_matches_analytic_posterior():
    # Engine classifier column vs the total-probability oracle over the
    # four evidence configurations.
    e1 = NodeSpec(id="e1", module="m", kind=Chance(Bernoulli(0.7)), value_kind=BoolKind())
    e2 = NodeSpec(id="e2", module="m", kind=Chance(Bernoulli(0.4)), value_kind=BoolKind())
    clf = NodeSpec(
        id="c",
        module="m",
        kind=Classifier(
            prior=0.3,
            evidence=(
                EvidenceItem("a", 0.8, 0.4, "e1"),
                EvidenceItem("b", 0.6, 0.5, "e2"),
            ),
        ),
        value_kind=BoolKind(),
    )
    g = ModelGraph.from_nodes([e1, e2, clf])
    expected = 0.0
    for v1 in (True, False):
        for v2 in (True, False):
            weight = (0.7 if v1 else 0.3) * (0.4 if v2 else 0.6)
            posterior = naive_bayes_posterior(
                0.3,
                [EvidenceItem("a", 0.8, 0.4, v1), EvidenceItem("b", 0.6, 0.5, v2)],
            )
            expected += weight * posterior
    n = 200_000
    ss = run_monte_carlo(g, RunConfig(samples=n, seed=5))
    p_hat = estimate(ss, "c").probability_true
    assert abs(p_hat - expected) <= 3.0 * (expected * (1 - expected) / n) ** 0.5
