"""Builder for the shipped hypothesis-map document.

Constructs the full model graph in code: analogy cruxes and their
classifiers, hardware economics, arrival pathways and outside-view methods,
takeoff dynamics, the learned-optimizer failure chain, the safety-research
race, and the terminal outcomes, plus the four named worldview presets.

Numeric elicitations marked placeholder=True are stand-ins pending real
expert input; values quoted from the published MTAIR report carry its
section number in paper_ref.
"""

from __future__ import annotations

from .dist import Bernoulli, LogNormal, Point, Uniform
from .model import (
    Alias,
    BoolKind,
    CategoryKind,
    Chance,
    Classifier,
    EvidenceItem,
    Formula,
    ModelGraph,
    ModuleDecl,
    NodeSpec,
    RealKind,
    SeriesKind,
    YearKind,
)
from .timelines import PATHWAY_ORDER

HORIZON = (2022, 2122)

HLMI_TYPE_LABELS = PATHWAY_ORDER + ("none",)

SPEED_CLASS_LABELS = (
    "hyperbolic_no_doublings",
    "hyperbolic_yearly_doublings",
    "weeks_to_months",
    "years_or_longer",
)

DSA_ROUTE_LABELS = ("economic", "capability", "coalition", "none")

BUCKET_KIND = CategoryKind(labels=("few", "intermediate", "huge"))


class _Builder:
    def __init__(self):
        self.nodes: list[NodeSpec] = []
        self.module = ""

    def add(self, node: NodeSpec) -> str:
        self.nodes.append(node)
        return node.id

    def chance(self, name, dist, kind=None, doc="", ref="elicitation placeholder", tags=(), placeholder=True):
        if kind is None:
            kind = BoolKind() if isinstance(dist, Bernoulli) else RealKind()
        return self.add(
            NodeSpec(
                id=f"{self.module}.{name}",
                module=self.module,
                kind=Chance(dist),
                value_kind=kind,
                doc=doc,
                tags=frozenset(tags),
                paper_ref=ref,
                placeholder=placeholder,
            )
        )

    def formula(self, name, builtin, parents, params=None, kind=None, doc="", ref="", tags=(), placeholder=False):
        return self.add(
            NodeSpec(
                id=f"{self.module}.{name}",
                module=self.module,
                kind=Formula(builtin=builtin, params=params or {}),
                parents=tuple(parents),
                value_kind=kind if kind is not None else BoolKind(),
                doc=doc,
                tags=frozenset(tags),
                paper_ref=ref or "invented: artifact plumbing",
                placeholder=placeholder,
            )
        )

    def classifier(self, name, prior, evidence, kind=None, doc="", ref="", tags=(), placeholder=True):
        return self.add(
            NodeSpec(
                id=f"{self.module}.{name}",
                module=self.module,
                kind=Classifier(prior=prior, evidence=tuple(EvidenceItem(*e) for e in evidence)),
                value_kind=kind if kind is not None else BoolKind(),
                doc=doc,
                tags=frozenset(tags),
                paper_ref=ref,
                placeholder=placeholder,
            )
        )

    def alias(self, name, target, kind, doc="", ref="", tags=()):
        return self.add(
            NodeSpec(
                id=f"{self.module}.{name}",
                module=self.module,
                kind=Alias(target=target),
                value_kind=kind,
                doc=doc,
                tags=frozenset(tags),
                paper_ref=ref or "invented: display alias",
            )
        )


def build_graph() -> ModelGraph:
    b = _Builder()
    series = SeriesKind(*HORIZON)
    year = YearKind()

    # ----- analogies and general priors -------------------------------------
    b.module = "analogies"
    evo_sel = b.chance(
        "evolution_no_extra_selection",
        Bernoulli(0.5),
        doc="Hominin evolution did not require hugely more selection pressure for intelligence than earlier primates.",
        ref="MTAIR 2.2.1",
    )
    evo_accel = b.chance(
        "evolution_acceleration",
        Bernoulli(0.5),
        doc="Intelligence accelerated rapidly during hominin evolution up to Homo sapiens.",
        ref="MTAIR 2.2.1",
    )
    ml_scaling = b.chance(
        "ml_scaling_breakthroughs",
        Bernoulli(0.6),
        doc="Cutting-edge ML systems show capability and generality scaling rapidly with compute and minor algorithm changes.",
        ref="MTAIR 2.2.2",
    )
    ml_citations = b.chance(
        "ml_citations_concentrated",
        Bernoulli(0.4),
        doc="Citations in ML research concentrate on a few breakthrough papers.",
        ref="MTAIR 2.2.2",
    )
    ml_simple = b.chance(
        "ml_simple_algorithms",
        Bernoulli(0.5),
        doc="ML successes indicate the fundamental algorithms behind general intelligence are simpler than expected.",
        ref="MTAIR 2.2.2",
    )
    culture_trick = b.chance(
        "culture_science_trick",
        Bernoulli(0.6),
        doc="Organizational insights like the scientific method suddenly and greatly increased human control over nature.",
        ref="MTAIR 2.2.3",
    )
    culture_limits = b.chance(
        "culture_ai_fewer_limits",
        Bernoulli(0.7),
        doc="Machine intelligence avoids human organizational and communication limits.",
        ref="MTAIR 2.2.3",
    )
    bitter_lesson = b.chance(
        "history_bitter_lesson",
        Bernoulli(0.6),
        doc="General compute-leveraging methods keep beating hand-crafted domain knowledge.",
        ref="MTAIR 2.2.4",
        tags=("crux",),
    )
    small_genome = b.chance(
        "brain_small_genome",
        Bernoulli(0.5),
        doc="The small human genome suggests brain design is simple.",
        ref="MTAIR 2.2.5",
        tags=("crux",),
    )
    uniform_cortex = b.chance(
        "brain_uniform_cortex",
        Bernoulli(0.5),
        doc="Neuroscience evidence (cortical uniformity, region retargeting) points to one simple core algorithm.",
        ref="MTAIR 2.2.5",
    )
    scaled_primate = b.chance(
        "brain_scaled_primate",
        Bernoulli(0.6),
        doc="The human brain is mostly a scaled-up primate brain.",
        ref="MTAIR 2.2.5",
    )
    small_changes = b.chance(
        "brain_small_changes_help",
        Bernoulli(0.6),
        doc="Small blunt changes (drugs, mood, variation among humans) can improve cognition, so humans are not at a local maximum.",
        ref="MTAIR 2.2.5",
    )
    minds_comparable = b.chance(
        "priors_intelligence_comparable",
        Bernoulli(0.7),
        doc="Minds can be compared on the generality of their intelligence.",
        ref="MTAIR 2.2.6",
        tags=("crux",),
    )
    constrained = b.chance(
        "priors_capability_constrained",
        Bernoulli(0.4),
        doc="Agent capabilities are strongly constrained by factors other than intelligence.",
        ref="MTAIR 2.2.6",
    )

    difficult = b.classifier(
        "difficult_at_hlmi",
        prior=0.5,
        evidence=[
            ("evolution_no_extra_selection", 0.35, 0.6, evo_sel),
            ("evolution_acceleration", 0.3, 0.65, evo_accel),
            ("ml_scaling_breakthroughs", 0.35, 0.7, ml_scaling),
            ("ml_citations_concentrated", 0.6, 0.4, ml_citations),
            ("ml_simple_algorithms", 0.35, 0.6, ml_simple),
            ("culture_science_trick", 0.4, 0.6, culture_trick),
            ("culture_ai_fewer_limits", 0.45, 0.6, culture_limits),
            ("brain_small_genome", 0.4, 0.6, small_genome),
            ("brain_uniform_cortex", 0.35, 0.6, uniform_cortex),
            ("brain_scaled_primate", 0.4, 0.65, scaled_primate),
            ("brain_small_changes_help", 0.4, 0.65, small_changes),
        ],
        doc="Marginal intelligence improvements are difficult around the arrival level. Posterior from a naive Bayes vote over the analogy areas, then sampled.",
        ref="MTAIR 2.3.1",
        tags=("crux",),
    )
    strongly_increasing = b.classifier(
        "strongly_increasing_difficulty",
        prior=0.4,
        evidence=[
            ("evolution_acceleration", 0.3, 0.6, evo_accel),
            ("ml_scaling_breakthroughs", 0.4, 0.65, ml_scaling),
            ("culture_science_trick", 0.4, 0.55, culture_trick),
            ("brain_small_changes_help", 0.4, 0.6, small_changes),
            ("priors_capability_constrained", 0.7, 0.45, constrained),
        ],
        doc="Marginal intelligence improvements become exponentially-or-faster more difficult past the arrival level.",
        ref="MTAIR 2.3.1",
        tags=("crux",),
    )
    upper_limit = b.classifier(
        "upper_limit_far_above",
        prior=0.8,
        evidence=[
            ("priors_intelligence_comparable", 0.85, 0.5, minds_comparable),
            ("brain_small_changes_help", 0.7, 0.45, small_changes),
            ("priors_capability_constrained", 0.35, 0.6, constrained),
        ],
        doc="Any practical upper limit to intelligence sits far above the human level.",
        ref="MTAIR 2.3.3",
        tags=("crux",),
    )
    prev_bottleneck = b.classifier(
        "previous_intelligence_bottleneck",
        prior=0.5,
        evidence=[
            ("priors_capability_constrained", 0.25, 0.65, constrained),
            ("culture_ai_fewer_limits", 0.65, 0.45, culture_limits),
        ],
        doc="Further intelligence improvements are bottlenecked by previous intelligence rather than external physical processes.",
        ref="MTAIR 2.3.2",
        tags=("crux",),
    )

    # ----- hardware progression ----------------------------------------------
    b.module = "hardware"
    base_cost = b.chance("base_cost", Point(1e-17), RealKind("$/FLOP"), doc="Cost per FLOP in the base year.", ref="MTAIR 3.1.1")
    moore_growth = b.chance(
        "moore_growth", Uniform(0.3, 0.7), RealKind("doublings/yr"),
        doc="Compute-per-dollar doublings per year while the 2D-silicon trend persists.", ref="MTAIR 3.1.1",
    )
    moore_end = b.chance(
        "moore_end_year", Uniform(2026, 2040), year,
        doc="Year through which the current transistor-density trend can mostly be sustained.", ref="MTAIR 3.1.1",
    )
    post_moore = b.chance(
        "post_moore_growth", Uniform(0.0, 0.5), RealKind("doublings/yr"),
        doc="Compute-per-dollar growth after the current paradigm ends.", ref="MTAIR 3.1.1",
    )
    p_post_end = b.chance(
        "p_post_moore_end", Uniform(0.02, 0.10), RealKind("prob/yr"),
        doc="Yearly chance that post-trend compute-per-dollar growth ends.", ref="MTAIR 3.1.1",
    )
    reversible = b.chance(
        "reversible_computing", Bernoulli(0.3),
        doc="Reversible computing surmounts the thermodynamic bit-erasure bound.", ref="MTAIR 3.1.1", tags=("crux",),
    )
    floor_cost = b.chance(
        "landauer_floor_cost", LogNormal(1e-21, 1.0), RealKind("$/FLOP"),
        doc="Lower bound on cost per compute from the bit-erasure energy limit.", ref="MTAIR 3.1.1",
    )
    cost = b.formula(
        "cost_per_compute",
        "COST_PER_COMPUTE",
        [moore_growth, moore_end, post_moore, p_post_end, reversible, floor_cost, base_cost],
        params={"base_year": HORIZON[0]},
        kind=series,
        doc="Dollars per FLOP by year: trend decline, post-trend decline until a sampled stop year, floored unless reversible computing works.",
        ref="MTAIR 3.1.1",
    )
    gdp_growth = b.chance("gdp_growth", Point(0.03), RealKind("fraction/yr"), doc="Average annual world GDP growth.", ref="MTAIR 3.1.2")
    world_gdp_base = b.chance("world_gdp_base", Point(9.6e13), RealKind("$"), doc="World GDP in the base year.", ref="MTAIR 3.1.2")
    richest_gdp_base = b.chance("richest_gdp_base", Point(2.3e13), RealKind("$"), doc="GDP of the richest country in the base year.", ref="MTAIR 3.1.2")
    world_gdp = b.formula("world_gdp", "GDP_SERIES", [world_gdp_base, gdp_growth], kind=series, ref="MTAIR 3.1.2")
    richest_gdp = b.formula("richest_gdp", "GDP_SERIES", [richest_gdp_base, gdp_growth], kind=series, ref="MTAIR 3.1.2")
    base_budget = b.chance("base_budget", Point(6e7), RealKind("$"), doc="Cost of the most expensive AI project in the base year.", ref="MTAIR 3.1.2")
    trend_years = b.chance(
        "compute_trend_years", Uniform(2, 12), RealKind("years"),
        doc="How long the fast AI-compute spending trend continues.", ref="MTAIR 3.1.2",
    )
    trend_growth = b.chance(
        "compute_trend_growth", Uniform(0.5, 1.8), RealKind("doublings/yr"),
        doc="Budget doublings per year while the spending trend lasts.", ref="MTAIR 3.1.2",
    )
    corporate_race = b.chance(
        "corporate_race", Bernoulli(0.6),
        doc="Companies race toward advanced AI, pushing budgets toward tech-firm R&D scale.", ref="MTAIR 3.1.2", tags=("crux",),
    )
    government_race = b.chance(
        "government_race", Bernoulli(0.25),
        doc="A large government project raises budgets toward one percent of the richest country's GDP.", ref="MTAIR 3.1.2", tags=("crux",),
    )
    budget = b.formula(
        "budget",
        "BUDGET_SERIES",
        [base_budget, trend_years, trend_growth, gdp_growth, corporate_race, government_race, world_gdp, richest_gdp],
        params={"government_fraction": 0.01, "tech_rd_gdp_fraction": 3e-4},
        kind=series,
        doc="Potential budget for a leading project by year; race conditions impose GDP-share floors; never declines.",
        ref="MTAIR 3.1.2",
    )
    compute = b.formula(
        "compute_available",
        "COMPUTE_AVAILABLE",
        [budget, cost],
        kind=series,
        doc="FLOP purchasable per year by the leading project.",
        ref="MTAIR 3.1",
    )

    # ----- arrival pathways and anchors ---------------------------------------
    b.module = "timelines"
    evo_years = b.chance("evo_years", LogNormal(6e8, 0.15), RealKind("years"), doc="Years from the first neurons to humans.", ref="MTAIR 3.2.1.1")
    evo_neurons = b.chance("evo_neuron_population", LogNormal(1e20, 1.5), RealKind("count"), doc="Average number of neurons alive on Earth.", ref="MTAIR 3.2.1.1")
    flop_per_neuron = b.chance(
        "flop_per_neuron_year", LogNormal(3e11, 1.0), RealKind("FLOP/neuron/yr"),
        doc="Brain-compute performed per neuron per year.", ref="MTAIR 3.2.1.1",
    )
    evo_animals = b.chance("evo_animal_population", LogNormal(1e19, 1.5), RealKind("count"), doc="Average animal population.", ref="MTAIR 3.2.1.1")
    env_flop = b.chance(
        "env_flop_per_animal_year", LogNormal(1e8, 2.0), RealKind("FLOP/animal/yr"),
        doc="Compute to simulate the local environment around one animal for one year.", ref="MTAIR 3.2.1.1",
    )
    hard_step = b.chance(
        "hard_step", Bernoulli(0.3),
        doc="A great-filter style hard step lies between the first neurons and human-level intelligence.",
        ref="MTAIR 3.2.1.1", tags=("crux",),
    )
    hard_step_env = b.chance(
        "hard_step_environmental", Bernoulli(0.5),
        doc="Any hard step was strictly about Earth's unusual environment rather than the difficulty of evolving intelligence.",
        ref="MTAIR 3.2.1.1",
    )
    luck_magnitude = b.chance(
        "luck_magnitude", LogNormal(1e3, 1.0), RealKind("factor"),
        doc="How lucky evolution on Earth got, as planets with jellyfish-level intelligence per planet with technological intelligence.",
        ref="MTAIR 3.2.1.1",
    )
    luck = b.formula(
        "evo_luck_factor", "LUCK_FACTOR", [hard_step, hard_step_env, luck_magnitude], kind=RealKind("factor"),
        doc="One when there is no hard step or it was environmental; otherwise the sampled magnitude.",
        ref="MTAIR 3.2.1.1",
    )
    s_pop_raw = b.chance("speedup_population_raw", LogNormal(10, 0.7), RealKind("factor"), doc="Population-size speedup available to engineers over evolution.", ref="MTAIR 3.2.1.1")
    s_gen_raw = b.chance("speedup_generations_raw", LogNormal(10, 0.7), RealKind("factor"), doc="Generation-count speedup from deliberate selection for intelligence.", ref="MTAIR 3.2.1.1")
    s_cap_raw = b.chance("speedup_per_capita_raw", LogNormal(5, 0.7), RealKind("factor"), doc="Per-individual compute savings from short tests instead of full lifetimes.", ref="MTAIR 3.2.1.1")
    s_pop = b.formula("speedup_population", "CLAMP_MIN", [s_pop_raw], params={"value": 1.0}, kind=RealKind("factor"), ref="MTAIR 3.2.1.1")
    s_gen = b.formula("speedup_generations", "CLAMP_MIN", [s_gen_raw], params={"value": 1.0}, kind=RealKind("factor"), ref="MTAIR 3.2.1.1")
    s_cap = b.formula("speedup_per_capita", "CLAMP_MIN", [s_cap_raw], params={"value": 1.0}, kind=RealKind("factor"), ref="MTAIR 3.2.1.1")
    evo_anchor = b.formula(
        "evolutionary_anchor",
        "EVOLUTIONARY_ANCHOR",
        [evo_years, evo_neurons, flop_per_neuron, evo_animals, env_flop, luck, s_pop, s_gen, s_cap],
        kind=RealKind("FLOP"),
        doc="(brain-compute + environment compute) x luck, divided by the engineer speedup product.",
        ref="MTAIR 3.2.1.1",
    )
    brain_neurons = b.chance("brain_neurons", Point(8.6e10), RealKind("count"), doc="Neurons in a human brain.", ref="MTAIR 3.2.1.2", placeholder=False)
    training_years = b.chance("training_years", Point(18.0), RealKind("years"), doc="Years to train a human from birth to adulthood.", ref="MTAIR 3.2.1.2", placeholder=False)
    pretraining = b.chance(
        "pretraining_factor", LogNormal(100, 1.0), RealKind("factor"),
        doc="Markup for newborns arriving pretrained by evolution.", ref="MTAIR 3.2.1.2",
    )
    lifetime_anchor_id = b.formula(
        "lifetime_anchor",
        "LIFETIME_ANCHOR",
        [brain_neurons, flop_per_neuron, training_years, pretraining],
        kind=RealKind("FLOP"),
        doc="Neurons x brain-compute per neuron-year x training years x pretraining factor.",
        ref="MTAIR 3.2.1.2",
    )
    genome_params = b.chance("genome_params", Point(7.5e8), RealKind("count"), doc="Parameter count anchored to the bytes of the human genome.", ref="MTAIR 2.2.5", placeholder=False)
    brain_flop_rate = b.chance("brain_flop_rate", LogNormal(1e15, 1.0), RealKind("FLOP/s"), doc="Brain-compute per subjective second.", ref="MTAIR 3.2.1.2")
    efficiency = b.chance("anchor_efficiency_factor", LogNormal(10, 0.7), RealKind("factor"), doc="Engineered artifacts' inefficiency relative to natural analogs.", ref="MTAIR 3.2.1.2")
    genome_horizon = b.chance(
        "genome_horizon_seconds", LogNormal(3e7, 1.0), RealKind("s"),
        doc="Effective horizon length for the genome anchor, near animal generation times.", ref="MTAIR 3.2.1.2",
    )
    genome_anchor = b.formula(
        "genome_anchor", "SCALING_ANCHOR",
        [genome_params, brain_flop_rate, efficiency, genome_horizon],
        params={"scaling_coeff": 1.0, "scaling_exponent": 1.0},
        kind=RealKind("FLOP"),
        doc="Data points from the parameter-data scaling law times compute per data point.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    nn_params = b.chance(
        "nn_params", LogNormal(3e14, 0.7), RealKind("count"),
        doc="Parameter count for networks using brain-scale compute.", ref="MTAIR 3.2.1.2",
    )
    nn_horizon = b.chance(
        "nn_horizon_seconds", LogNormal(1e4, 1.5), RealKind("s"),
        doc="Effective horizon length for the neural-network anchor, seconds to years.", ref="MTAIR 3.2.1.2",
    )
    nn_anchor = b.formula(
        "nn_anchor", "SCALING_ANCHOR",
        [nn_params, brain_flop_rate, efficiency, nn_horizon],
        params={"scaling_coeff": 1.0, "scaling_exponent": 1.0},
        kind=RealKind("FLOP"),
        doc="Like the genome anchor with parameters set by brain-compute parity.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    dl_anchor = b.formula(
        "dl_extrapolation_anchor", "DL_EXTRAPOLATION_ANCHOR", [],
        params={"benchmark_points": [[22.0, 0.30], [24.0, 0.45], [26.0, 0.60]], "human_level": 1.0},
        kind=RealKind("FLOP"),
        doc="Compute where the fitted capability-versus-log-compute line reaches human level on current benchmarks.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    stat_efficient = b.chance(
        "statistical_more_efficient", Bernoulli(0.7),
        doc="Statistical learning finds intelligence more efficiently than evolution did.",
        ref="MTAIR 3.2.1.2", tags=("crux",),
    )
    get_stuck = b.formula(
        "methods_get_stuck", "CPT_BOOL", [difficult, ml_scaling],
        params={"table": {"t,t": 0.35, "t,f": 0.55, "f,t": 0.15, "f,f": 0.3}},
        doc="Our statistical methods dead-end via separated local minima or proxy hacking before general intelligence.",
        ref="MTAIR 3.2.1.2", placeholder=True, tags=("crux",),
    )
    evo_modifier = b.formula(
        "evo_modifier", "EVO_MODIFIER", [stat_efficient, get_stuck],
        params={"efficient_factor": 0.1, "stuck_factor": 10.0},
        kind=RealKind("factor"),
        doc="Scales the evolutionary anchor for use by engineered statistical methods.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    required_dl = b.formula(
        "required_compute_dl", "REQUIRED_COMPUTE",
        [evo_anchor, lifetime_anchor_id, genome_anchor, nn_anchor, dl_anchor, evo_modifier,
         difficult, ml_scaling, small_genome, uniform_cortex],
        params={
            "base_weights": [0.15, 0.2, 0.1, 0.35, 0.2],
            "sigmas": [1.0, 1.0, 1.0, 1.0, 1.0],
            "evo_index": 0,
            "tilts": [[0, 0, 2.0], [1, 4, 2.5], [2, 2, 2.5], [3, 1, 2.0]],
        },
        kind=RealKind("FLOP"),
        doc="Training compute for current-methods arrival: anchor mixture with crux-tilted weights and per-anchor spread.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    algo_rate = b.chance(
        "algo_trend_rate", LogNormal(0.5, 0.3), RealKind("doublings/yr"),
        doc="Trend rate of algorithmic efficiency improvement.", ref="MTAIR 3.2.1.2",
    )
    hw_drives = b.chance(
        "hardware_drives_algorithms", Bernoulli(0.4),
        doc="Hardware progress is the main driver of algorithmic progress.",
        ref="MTAIR 3.2.2", tags=("crux",),
    )
    race = b.formula("race_to_hlmi", "OR", [corporate_race, government_race], doc="Any race dynamic toward advanced AI.", ref="MTAIR 3.1.2")
    ai_accel = b.chance(
        "ai_accelerates_algorithms", Bernoulli(0.5),
        doc="Pre-arrival AI speeds up AI algorithmic progress.", ref="MTAIR 3.2.1.2", tags=("crux",),
    )
    algo = b.formula(
        "algo_progress", "ALGO_PROGRESS", [algo_rate, hw_drives, compute, race, ai_accel],
        params={"race_factor": 1.25, "ai_factor": 1.5},
        kind=series,
        doc="Effective-compute multiplier from algorithmic progress, extrapolated in time or in compute.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    embodiment = b.classifier(
        "embodiment_required", prior=0.4,
        evidence=[("priors_intelligence_comparable", 0.25, 0.6, minds_comparable)],
        doc="Evolving intelligence depends on embodiment in a body and rich environment.",
        ref="MTAIR 3.2.1.1",
    )
    hard_paths = b.classifier(
        "hard_paths", prior=0.4,
        evidence=[
            ("hard_step", 0.8, 0.45, hard_step),
            ("embodiment_required", 0.75, 0.45, embodiment),
            ("difficult_at_hlmi", 0.7, 0.45, difficult),
        ],
        doc="It is rare for environments or datasets to straightforwardly select for general intelligence.",
        ref="MTAIR 3.2.1.1", tags=("crux",),
    )
    evo_software = b.formula(
        "evo_software_year", "READY_YEAR", [hard_paths],
        params={"base_hazard": 0.06, "factors": [0.25]}, kind=year,
        doc="First year a suitable environment or dataset for evolved arrival exists.",
        ref="MTAIR 3.2.1.1", placeholder=True,
    )
    dl_software = b.formula(
        "dl_software_year", "READY_YEAR", [hard_paths],
        params={"base_hazard": 0.09, "factors": [0.3]}, kind=year,
        doc="First year sufficient data of the right kind exists for current methods.",
        ref="MTAIR 3.2.1.2", placeholder=True,
    )
    hybrid_software = b.formula(
        "hybrid_software_year", "READY_YEAR", [bitter_lesson, difficult],
        params={"base_hazard": 0.04, "factors": [0.35, 0.5]}, kind=year,
        doc="First year the symbolic side of a statistical-symbolic hybrid is worked out; the compute-leveraging lesson counts against it.",
        ref="MTAIR 3.2.1.3", placeholder=True,
    )
    cogsci_software = b.formula(
        "cogsci_software_year", "READY_YEAR", [uniform_cortex, difficult],
        params={"base_hazard": 0.025, "factors": [2.0, 0.5]}, kind=year,
        doc="First year cognitive-science understanding suffices; easier if the brain runs one simple algorithm.",
        ref="MTAIR 3.2.1.4", placeholder=True,
    )
    wbe_scan = b.formula(
        "wbe_scanning_year", "READY_YEAR", [],
        params={"base_hazard": 0.03}, kind=year,
        doc="First year scanning technology can produce a structural brain model at the needed scale.",
        ref="MTAIR 3.2.1.5", placeholder=True,
    )
    side_channels = b.chance(
        "side_channels", Bernoulli(0.5),
        doc="The brain's functional parts leak through many messy input-output side channels.",
        ref="MTAIR 3.2.1.5", tags=("crux",),
    )
    lag_long = b.chance("wbe_lag_long", LogNormal(25, 0.3), RealKind("years"), doc="Scan-to-neuroscience lag when side channels abound.", ref="MTAIR 3.2.1.5")
    lag_short = b.chance("wbe_lag_short", LogNormal(8, 0.3), RealKind("years"), doc="Scan-to-neuroscience lag with clean part behavior.", ref="MTAIR 3.2.1.5")
    wbe_lag = b.formula("wbe_lag", "IF_ELSE", [side_channels, lag_long, lag_short], kind=RealKind("years"), doc="Lag from scanning technology to the needed neuroscience.", ref="MTAIR 3.2.1.5")
    wbe_neuro = b.formula("wbe_neuroscience_year", "SUM", [wbe_scan, wbe_lag], kind=year, doc="Scanning year plus the research lag.", ref="MTAIR 3.2.1.5")
    wbe_no_highlevel = b.formula(
        "wbe_no_highlevel_needed", "CPT_BOOL", [side_channels],
        params={"table": {"t": 0.2, "f": 0.8}},
        doc="Emulation works without understanding high-level brain function.",
        ref="MTAIR 3.2.1.5", placeholder=True,
    )
    cogsci_ever = b.formula("cogsci_arrives", "YEAR_ARRIVES", [cogsci_software], doc="Cognitive-science understanding lands within the horizon.", ref="MTAIR 3.2.1.5")
    wbe_legal = b.chance("wbe_legal_ok", Bernoulli(0.7), doc="Legal and social barriers to emulation are overcome.", ref="MTAIR 3.2.1.5")
    wbe_body = b.chance("wbe_body_ok", Bernoulli(0.85), doc="A body and environment can be modeled well enough.", ref="MTAIR 3.2.1.5")
    wbe_highlevel_ok = b.formula("wbe_highlevel_ok", "OR", [wbe_no_highlevel, cogsci_ever], ref="MTAIR 3.2.1.5")
    wbe_gate = b.formula("wbe_gate", "AND", [wbe_legal, wbe_body, wbe_highlevel_ok], ref="MTAIR 3.2.1.5")
    wbe_software = b.formula(
        "wbe_software_year", "GATE_YEAR", [wbe_gate, wbe_neuro], kind=year,
        doc="Emulation software readiness; never if any gate fails.", ref="MTAIR 3.2.1.5",
    )
    brain_intricate = b.formula(
        "brain_intricate", "CPT_BOOL", [difficult, scaled_primate],
        params={"table": {"t,t": 0.5, "t,f": 0.75, "f,t": 0.25, "f,f": 0.5}},
        doc="The brain is so intricate and interconnected that large changes almost surely degrade capability.",
        ref="MTAIR 3.2.1.6", placeholder=True,
    )
    nagi_on_path = b.formula(
        "nagi_on_path_to_wbe", "CPT_BOOL", [brain_intricate],
        params={"table": {"t": 0.15, "f": 0.7}},
        doc="Brain-inspired general AI falls out on the way to emulation.",
        ref="MTAIR 3.2.1.6", placeholder=True,
    )
    nagi_adv_frac = b.chance("nagi_advantage_fraction", Uniform(0.0, 1.0), RealKind("fraction"), doc="How much of the scan-to-neuroscience lag brain-inspired AI skips.", ref="MTAIR 3.2.1.6")
    nagi_advantage = b.formula("nagi_advantage_years", "PRODUCT", [nagi_adv_frac, wbe_lag], kind=RealKind("years"), doc="Head start over emulation neuroscience, bounded by the lag.", ref="MTAIR 3.2.1.6")
    nagi_neuro = b.formula("nagi_neuroscience_year", "DIFF", [wbe_neuro, nagi_advantage], kind=year, ref="MTAIR 3.2.1.6")
    nagi_indep = b.formula(
        "nagi_independent_year", "READY_YEAR", [],
        params={"base_hazard": 0.012}, kind=year,
        doc="Readiness hazard when brain-inspired AI is not on the emulation path.",
        ref="MTAIR 3.2.1.6", placeholder=True,
    )
    nagi_software = b.formula("nagi_software_year", "IF_ELSE", [nagi_on_path, nagi_neuro, nagi_indep], kind=year, ref="MTAIR 3.2.1.6")
    other_p_new = b.chance("other_p_new_method", Point(0.09), RealKind("prob/yr"), doc="Yearly chance a brand-new method toward general machine intelligence appears.", ref="MTAIR 3.2.1.7", placeholder=False)
    other_hazard = b.chance("other_method_hazard", Point(0.02), RealKind("prob/yr"), doc="Yearly success chance per matured unlisted method.", ref="MTAIR 3.2.1.7")
    other_year = b.formula(
        "other_methods_year", "OTHER_METHODS", [other_p_new, other_hazard],
        params={"scale_up_delay": 20.0}, kind=year,
        doc="Catch-all pathway with a twenty-year scale-up delay per method.",
        ref="MTAIR 3.2.1.7",
    )
    hybrid_factor = b.chance("hybrid_compute_factor", LogNormal(1.0, 0.5), RealKind("factor"), doc="Hybrid methods' compute needs relative to current methods.", ref="MTAIR 3.2.1.3")
    required_hybrid = b.formula("required_compute_hybrid", "PRODUCT", [required_dl, hybrid_factor], kind=RealKind("FLOP"), ref="MTAIR 3.2.1.3")
    wbe_overhead = b.chance("wbe_overhead", LogNormal(1e3, 1.0), RealKind("factor"), doc="Emulation overhead above the brain's own compute.", ref="MTAIR 3.2.1.5")
    wbe_flop_s = b.formula("wbe_flop_per_second", "PRODUCT", [brain_flop_rate, wbe_overhead], kind=RealKind("FLOP/s"), ref="MTAIR 3.2.1.5")
    required_wbe = b.formula(
        "required_compute_wbe", "SCALE", [wbe_flop_s], params={"factor": 3.15e7},
        kind=RealKind("FLOP"),
        doc="A year of real-time emulation at the required scale.", ref="MTAIR 3.2.1.5", placeholder=True,
    )
    arrivals = {}
    arrivals["evolutionary"] = b.formula(
        "evolutionary_arrival", "PATHWAY_ARRIVAL", [evo_anchor, algo, compute, evo_software], kind=year,
        doc="Evolved arrival: enough hardware for the evolutionary anchor plus a suitable environment.", ref="MTAIR 3.2.1.1",
    )
    arrivals["dl"] = b.formula(
        "dl_arrival", "PATHWAY_ARRIVAL", [required_dl, algo, compute, dl_software], kind=year,
        doc="Current methods plus business-as-usual advances.", ref="MTAIR 3.2.1.2",
    )
    arrivals["hybrid"] = b.formula(
        "hybrid_arrival", "PATHWAY_ARRIVAL", [required_hybrid, algo, compute, hybrid_software], kind=year,
        doc="Statistical-symbolic hybrid arrival.", ref="MTAIR 3.2.1.3",
    )
    arrivals["cogsci"] = b.formula(
        "cogsci_arrival", "PATHWAY_ARRIVAL", [lifetime_anchor_id, algo, compute, cogsci_software], kind=year,
        doc="Cognitive-science arrival; hardware need follows the lifetime anchor.", ref="MTAIR 3.2.1.4",
    )
    arrivals["wbe"] = b.formula(
        "wbe_arrival", "PATHWAY_ARRIVAL", [required_wbe, algo, compute, wbe_software], kind=year,
        doc="Whole brain emulation or simulation arrival.", ref="MTAIR 3.2.1.5",
    )
    arrivals["neuromorphic"] = b.formula(
        "neuromorphic_arrival", "PATHWAY_ARRIVAL", [lifetime_anchor_id, algo, compute, nagi_software], kind=year,
        doc="Brain-inspired general AI; hardware need follows the lifetime anchor.", ref="MTAIR 3.2.1.6",
    )
    arrivals["other"] = b.alias("other_arrival", other_year, kind=year, doc="Catch-all pathway arrival.", ref="MTAIR 3.2.1.7")
    pathway_args = [arrivals[label] for label in PATHWAY_ORDER]
    inside_year = b.formula(
        "inside_view_year", "INSIDE_VIEW_MIN", pathway_args, kind=year,
        doc="Earliest pathway success.", ref="MTAIR 3.2.1",
    )
    hlmi_type = b.formula(
        "hlmi_type", "ARGMIN_LABEL", pathway_args,
        kind=CategoryKind(labels=HLMI_TYPE_LABELS),
        doc="Which pathway wins; ties break in the declared pathway order.",
        ref="MTAIR 3.3", tags=("crux",),
    )
    stem_rate = b.formula(
        "stem_baseline", "REFERENCE_RATE", [],
        params={"successes": 2, "exposures": [8, 50, 30]},
        kind=RealKind("prob/yr"),
        doc="Ambitious-STEM-project reference class: two successes over the summed years of serious pursuit.",
        ref="MTAIR 3.2.2.1", placeholder=False,
    )
    transform_rate = b.formula(
        "transformative_per_doubling", "REFERENCE_RATE", [],
        params={"successes": 2, "exposures": [6, 8]},
        kind=RealKind("prob/doubling"),
        doc="Radically-transformative-events class: two transitions over the economic doublings between them.",
        ref="MTAIR 3.2.2.1", placeholder=False,
    )
    transform_yearly = b.formula(
        "transformative_yearly", "PER_DOUBLING_TO_YEARLY", [transform_rate],
        params={"growth": 0.03}, kind=RealKind("prob/yr"),
        doc="Per-doubling rate converted through the doubling time at three percent growth.",
        ref="MTAIR 3.2.2.1", placeholder=False,
    )
    semi_stem_years = b.formula(
        "semi_stem_years", "SEMI_TIMELINE", [stem_rate],
        params={"origin_year": 1956}, kind=series,
        doc="Hazard one over trials-plus-offset, trials counted in years since the field began.",
        ref="MTAIR 3.2.2.1", tags=("timeline",),
    )
    semi_transform_years = b.formula(
        "semi_transform_years", "SEMI_TIMELINE", [transform_yearly],
        params={"origin_year": 1840}, kind=series,
        doc="Same construction anchored at the end of the industrial transition.",
        ref="MTAIR 3.2.2.1", tags=("timeline",),
    )
    stem_hist = b.chance("stem_hist_doublings", Point(30.0), RealKind("doublings"), doc="Relevant compute doublings accumulated before the base year.", ref="MTAIR 3.2.2.1")
    conversion = b.chance("stem_doubling_conversion", Point(1.0), RealKind("ratio"), doc="Years of other projects' progress equivalent to one compute doubling.", ref="MTAIR 3.2.2.1")
    transform_hist = b.chance("transform_hist_doublings", Point(8.0), RealKind("doublings"), doc="Doublings since the industrial transition on the compute basis.", ref="MTAIR 3.2.2.1")
    semi_stem_compute = b.formula(
        "semi_stem_compute", "SEMI_TIMELINE_COMPUTE", [stem_rate, compute, stem_hist, conversion],
        kind=series, doc="Compute-doubling trial variant for the STEM class.", ref="MTAIR 3.2.2.1", placeholder=True,
    )
    semi_transform_compute = b.formula(
        "semi_transform_compute", "SEMI_TIMELINE_COMPUTE", [transform_rate, compute, transform_hist, conversion],
        kind=series, doc="Compute-doubling trial variant for the transformative class.", ref="MTAIR 3.2.2.1", placeholder=True,
    )
    semi_stem = b.formula(
        "semi_stem", "IF_ELSE", [hw_drives, semi_stem_compute, semi_stem_years], kind=series,
        doc="STEM-class curve; compute-based when hardware drives algorithmic progress.", ref="MTAIR 3.2.2.1", tags=("timeline",),
    )
    semi_transform = b.formula(
        "semi_transform", "IF_ELSE", [hw_drives, semi_transform_compute, semi_transform_years], kind=series,
        doc="Transformative-class curve; compute-based when hardware drives algorithmic progress.", ref="MTAIR 3.2.2.1", tags=("timeline",),
    )
    automation_level = b.chance("automation_level", Point(0.25), RealKind("fraction"), doc="Portion of economically relevant tasks automated at the base year.", ref="MTAIR 3.2.2.2")
    automation_rate = b.chance("automation_rate", LogNormal(0.008, 0.3), RealKind("fraction/yr"), doc="Automation trend rate.", ref="MTAIR 3.2.2.2")
    extrap_automation = b.formula(
        "extrap_automation", "EXTRAP_AUTOMATION", [automation_level, automation_rate, hw_drives, compute],
        params={"acceleration": "constant"}, kind=series,
        doc="Arrival when extrapolated automation reaches everything.", ref="MTAIR 3.2.2.2", tags=("timeline",), placeholder=True,
    )
    need_all = b.chance(
        "subfields_need_all", Bernoulli(0.3),
        doc="All subfields, not just the median, must reach human level to count.",
        ref="MTAIR 3.2.2.2", tags=("crux",),
    )
    thresh_all = b.formula("subfield_threshold_all", "CONST", [], params={"value": 1.0}, kind=RealKind("fraction"), ref="MTAIR 3.2.2.2")
    thresh_med = b.formula("subfield_threshold_median", "CONST", [], params={"value": 0.5}, kind=RealKind("fraction"), ref="MTAIR 3.2.2.2")
    threshold = b.formula("subfield_threshold", "IF_ELSE", [need_all, thresh_all, thresh_med], kind=RealKind("fraction"), ref="MTAIR 3.2.2.2")
    extrap_subfields = b.formula(
        "extrap_subfields", "EXTRAP_SUBFIELDS", [threshold, hw_drives, compute],
        params={
            "subfield_levels": [0.5, 0.35, 0.6, 0.3, 0.45, 0.55, 0.4, 0.25, 0.65, 0.2],
            "subfield_rates": [0.012, 0.01, 0.008, 0.012, 0.009, 0.011, 0.007, 0.01, 0.013, 0.006],
        },
        kind=series,
        doc="Arrival when the threshold fraction of subfield trends reach human level.",
        ref="MTAIR 3.2.2.2", tags=("timeline",), placeholder=True,
    )
    inside_cdf = b.formula("inside_view_cdf", "YEAR_TO_CDF", [inside_year], kind=series, doc="Inside-view arrival as a degenerate per-sample curve.", ref="MTAIR 3.2.1", tags=("timeline",))
    disruption = b.chance(
        "expect_disruption", Bernoulli(0.5),
        doc="If arrival were close we would already see much more disruption from AI.",
        ref="MTAIR 3.2", tags=("crux",),
    )
    research_disc = b.chance("research_discontinuity_prior", Bernoulli(0.3), doc="Research discontinuities could let arrival come out of nowhere.", ref="MTAIR 3.2")
    no_research_disc = b.formula("no_research_discontinuity", "NOT", [research_disc], ref="MTAIR 3.2")
    adjust_enabled = b.formula("short_timeline_adjustment", "AND", [disruption, no_research_disc], doc="Damp early arrival mass only when disruption is expected and discontinuities are not.", ref="MTAIR 3.2")
    hlmi_cdf = b.formula(
        "hlmi_cdf", "COMBINE_TIMELINES",
        [adjust_enabled, inside_cdf, semi_stem, semi_transform, extrap_automation, extrap_subfields],
        params={"weights": [0.5, 0.15, 0.15, 0.1, 0.1], "adjust_horizon_years": 10, "damping": 0.5},
        kind=series,
        doc="Linear combination of the forecasting methods with the short-timeline adjustment.",
        ref="MTAIR 3.2", tags=("timeline", "output"), placeholder=True,
    )
    hlmi_year = b.formula(
        "hlmi_year", "CDF_SAMPLE", [hlmi_cdf], kind=year,
        doc="Sampled arrival year for this run of the world.", ref="MTAIR 3.2", tags=("output",),
    )
    hlmi_arrives = b.formula("hlmi_arrives", "YEAR_ARRIVES", [hlmi_year], doc="Arrival happens within the modeled horizon.", ref="MTAIR 3.2", tags=("output",))

    # ----- takeoff -------------------------------------------------------------
    b.module = "takeoff"
    overhang = b.chance(
        "hardware_overhang", Bernoulli(0.25),
        doc="At arrival, enough hardware exists to scale the first system far past its initial level.",
        ref="MTAIR 4.1.1", tags=("crux",),
    )
    hw_bottleneck = b.formula(
        "hardware_bottlenecked", "CPT_BOOL", [hlmi_type],
        params={"table": {"0": 0.7, "1": 0.6, "2": 0.45, "3": 0.4, "4": 0.35, "5": 0.45, "6": 0.5, "7": 0.5}},
        doc="Hardware, not software, is the last requirement to fall into place.",
        ref="MTAIR 4.1.1", placeholder=True,
    )
    near_capable = b.formula(
        "prehlmi_near_capable", "CPT_BOOL", [hlmi_type],
        params={"table": {"1": 0.75, "0": 0.65, "2": 0.6, "*": 0.5}},
        doc="Systems with almost enough compute have almost arrival-level capability.",
        ref="MTAIR 4.1.1", placeholder=True,
    )
    missing_gears = b.formula(
        "missing_gears", "CPT_BOOL", [hlmi_type],
        params={"table": {"4": 0.85, "3": 0.4, "5": 0.45, "*": 0.2}},
        doc="The last software steps act like missing gears: almost-done confers little capability.",
        ref="MTAIR 4.1.1", placeholder=True, tags=("crux",),
    )
    overshoot = b.formula(
        "overshoot", "CPT_BOOL", [hlmi_type, difficult],
        params={"table": {"1,f": 0.35, "*,t": 0.1, "*,f": 0.2}},
        doc="The first arrival-level system lands well past the threshold.",
        ref="MTAIR 4.1.1", placeholder=True,
    )
    bucket = b.formula(
        "breakthrough_bucket", "BUCKET", [hlmi_type, difficult, hard_paths, hlmi_year],
        params={
            "type_labels": list(HLMI_TYPE_LABELS),
            "year_cut": 2040.0,
            "table": {
                "4,*,*,*": [0.15, 0.5, 0.35],
                "*,f,f,t": [0.55, 0.35, 0.1],
                "*,f,f,f": [0.4, 0.42, 0.18],
                "*,t,f,t": [0.35, 0.45, 0.2],
                "*,t,f,f": [0.2, 0.5, 0.3],
                "*,f,t,t": [0.35, 0.45, 0.2],
                "*,f,t,f": [0.25, 0.5, 0.25],
                "*,t,t,*": [0.1, 0.5, 0.4],
            },
        },
        kind=BUCKET_KIND,
        doc="Remaining fundamental advances: few is up to two paradigms and nine breakthroughs, intermediate three to nine paradigms and ten to a hundred, huge anything more.",
        ref="MTAIR 4.1.1.1", placeholder=True,
    )
    disc = b.formula(
        "discontinuity", "DISCONTINUITY", [hw_bottleneck, near_capable, missing_gears, bucket, overshoot, overhang],
        doc="A very large, very sudden capability jump to or from the arrival level, without self-improvement.",
        ref="MTAIR 4.1.1", tags=("crux", "output"),
    )
    hw_scales = b.chance("hw_scales_with_researchers", Bernoulli(0.5), doc="Hardware improvements scale with the number of (machine) researchers.", ref="MTAIR 4.1.2", tags=("crux",))
    hw_not_harder = b.chance("hw_not_strongly_harder", Bernoulli(0.5), doc="Hardware improvements do not get strongly increasingly difficult.", ref="MTAIR 4.1.2")
    hw_room = b.chance("hw_room_for_improvement", Bernoulli(0.7), doc="Plenty of room remains for hardware improvement.", ref="MTAIR 4.1.2")
    explosion = b.formula(
        "intelligence_explosion", "INTELLIGENCE_EXPLOSION",
        [strongly_increasing, upper_limit, prev_bottleneck, hw_scales, hw_not_harder, hw_room],
        doc="Roughly hyperbolic capability growth through software self-improvement or a hardware population explosion.",
        ref="MTAIR 4.1.2", tags=("crux", "output"),
    )
    doubling_days = b.formula(
        "doubling_days", "DOUBLING_DAYS", [explosion, strongly_increasing, upper_limit, difficult],
        params={"outside_median_days": 14.0, "sigma_log10": 1.0, "condition_multiplier": 3.0},
        kind=RealKind("days"),
        doc="Economic doubling time after arrival; zero encodes hyperbolic growth. Median default sits in the days-to-weeks outside-view band.",
        ref="MTAIR 4.3.1", placeholder=True, tags=("output",),
    )
    speed_class = b.formula(
        "takeoff_speed_class", "SPEED_CLASS", [explosion, disc, doubling_days],
        kind=CategoryKind(labels=SPEED_CLASS_LABELS),
        doc="Worldview-level takeoff speed bucket.",
        ref="MTAIR 4.3.1", tags=("crux",),
    )
    high_fixed = b.formula(
        "high_fixed_costs", "CPT_BOOL", [hlmi_type],
        params={"table": {"4": 0.7, "0": 0.6, "*": 0.4}},
        doc="Fixed costs dominate total costs for the arrival technology.",
        ref="MTAIR 4.3.2", placeholder=True,
    )
    easy_trade = b.formula(
        "easy_trade", "CPT_BOOL", [hlmi_type],
        params={"table": {"1": 0.75, "2": 0.65, "*": 0.5}},
        doc="Systems can easily trade cognitive content and code tweaks.",
        ref="MTAIR 4.3.2", placeholder=True,
    )
    hw_gains = b.formula(
        "large_hw_scaling_gains", "CPT_BOOL", [hlmi_type, difficult],
        params={"table": {"1,f": 0.65, "1,t": 0.45, "*,f": 0.45, "*,t": 0.25}},
        doc="Large capability gains from scaling onto more hardware.",
        ref="MTAIR 4.3.2", placeholder=True,
    )
    catchup = b.chance("catchup_easier", Bernoulli(0.7), doc="Imitating leaders is easier than the original discovery.", ref="MTAIR 4.3.2")
    secrecy = b.formula(
        "secrecy", "CPT_BOOL", [race],
        params={"table": {"t": 0.55, "f": 0.3}},
        doc="Major innovations are kept secret.", ref="MTAIR 4.3.2", placeholder=True,
    )
    eliminate = b.formula(
        "eliminate_laggards", "CPT_BOOL", [race],
        params={"table": {"t": 0.35, "f": 0.15}},
        doc="Leading projects eliminate or agglomerate laggards.", ref="MTAIR 4.3.2", placeholder=True,
    )
    distributed = b.formula(
        "hlmi_distributed", "HLMI_DISTRIBUTED",
        [disc, explosion, high_fixed, easy_trade, hw_gains, catchup, secrecy, eliminate],
        doc="Capability dispersed across many comparable systems rather than one or a few leaders.",
        ref="MTAIR 4.3.2", tags=("crux", "output"),
    )

    # ----- learned-optimizer failure chain --------------------------------------
    b.module = "mesa"
    ev_rl = b.chance("ev_rl_emergence", Bernoulli(0.6), doc="Learning algorithms emerge spontaneously inside reinforcement learners.", ref="MTAIR 5.1.1.1")
    ev_meta = b.chance("ev_meta_learning", Bernoulli(0.8), doc="Deliberate meta-learning works and is common.", ref="MTAIR 5.1.1.1")
    ev_gpt = b.chance("ev_gpt_fewshot", Bernoulli(0.75), doc="Large language models do few-shot learning that looks like inner search.", ref="MTAIR 5.1.1.1")
    ev_alphazero = b.chance("ev_alphazero_search", Bernoulli(0.5), doc="Game players gain substantially from explicit search over bigger models.", ref="MTAIR 5.1.1.1")
    ev_firms = b.chance("ev_firms_optimize", Bernoulli(0.7), doc="Firms inside market economies act as optimizers within an optimizer.", ref="MTAIR 5.1.1.1")
    ev_humans = b.chance("ev_humans_mesa", Bernoulli(0.9), doc="Humans are optimizers produced by natural selection.", ref="MTAIR 5.1.1.1")
    mesa_analogy = b.classifier(
        "analogy_classifier", prior=0.4,
        evidence=[
            ("ev_rl_emergence", 0.7, 0.45, ev_rl),
            ("ev_meta_learning", 0.85, 0.7, ev_meta),
            ("ev_gpt_fewshot", 0.8, 0.55, ev_gpt),
            ("ev_alphazero_search", 0.6, 0.45, ev_alphazero),
            ("ev_firms_optimize", 0.75, 0.6, ev_firms),
            ("ev_humans_mesa", 0.93, 0.8, ev_humans),
        ],
        doc="Analogy vote on whether trained systems contain inner optimizers.",
        ref="MTAIR 5.1.1.1",
    )
    base_optimizer = b.formula(
        "trained_with_base_optimizer", "CPT_BOOL", [hlmi_type],
        params={"table": {"0": 0.95, "1": 0.95, "2": 0.8, "3": 0.5, "4": 0.05, "5": 0.6, "6": 0.6, "7": 0.5}},
        doc="The arrival system is (partly) a learned algorithm produced by a training process.",
        ref="MTAIR 5.1.1", placeholder=True,
    )
    generic = b.chance("training_task_generic", Bernoulli(0.7), doc="The training task is generic rather than domain-specific.", ref="MTAIR 5.1.1", tags=("crux",))
    inductive = b.chance("inductive_bias_favors", Bernoulli(0.5), doc="Architecture and training inductive biases favor inner optimizers.", ref="MTAIR 5.1.1")
    search_eff = b.chance("search_more_efficient", Bernoulli(0.6), doc="Inner search generalizes better than highly tuned pile-of-heuristics algorithms.", ref="MTAIR 5.1.1")
    argument = b.formula(
        "first_principles_argument", "CPT_BOOL", [generic, inductive, search_eff],
        params={"table": {
            "t,t,t": 0.9, "t,t,f": 0.6, "t,f,t": 0.65, "t,f,f": 0.35,
            "f,t,t": 0.55, "f,t,f": 0.3, "f,f,t": 0.35, "f,f,f": 0.1,
        }},
        doc="The structural argument for inner optimization going through.",
        ref="MTAIR 5.1.1", placeholder=True,
    )
    mesa_likely = b.formula(
        "mesa_likely", "CPT_BOOL", [mesa_analogy, argument],
        params={"table": {"t,t": 0.9, "t,f": 0.6, "f,t": 0.55, "f,f": 0.2}},
        doc="Inner optimizer present, given a base optimizer: analogy and argument combined.",
        ref="MTAIR 5.1.1", placeholder=True,
    )
    contains = b.formula("contains_mesa_optimizer", "AND", [base_optimizer, mesa_likely], doc="The arrival system contains an inner optimizer.", ref="MTAIR 5.1.1")
    ev_robust = b.chance("ev_ml_robustness_fails", Bernoulli(0.85), doc="Objective robustness under distribution shift is a standing failure in ML.", ref="MTAIR 5.1.2")
    ev_firm_pseudo = b.chance("ev_firm_pseudo", Bernoulli(0.7), doc="Employees and firms act aligned under observation without robust alignment.", ref="MTAIR 5.1.2")
    ev_human_pseudo = b.chance("ev_human_pseudo", Bernoulli(0.9), doc="Humans are pseudo-aligned with genetic fitness at best.", ref="MTAIR 5.1.2")
    pseudo_vote = b.classifier(
        "pseudo_classifier", prior=0.7,
        evidence=[
            ("ev_ml_robustness_fails", 0.9, 0.6, ev_robust),
            ("ev_firm_pseudo", 0.75, 0.55, ev_firm_pseudo),
            ("ev_human_pseudo", 0.92, 0.75, ev_human_pseudo),
        ],
        doc="Analogy vote that an inner optimizer is pseudo-aligned rather than robustly aligned.",
        ref="MTAIR 5.1.2",
    )
    pseudo = b.formula("pseudo_aligned", "AND", [contains, pseudo_vote], doc="Acts aligned in training without robust alignment.", ref="MTAIR 5.1.2")
    modeling_ease = b.chance("modeling_ease_ratio", Point(3.0), RealKind("odds"), doc="Odds of modeling the objective from rich input data over internalizing it.", ref="MTAIR 5.1.3")
    rd_objective = b.chance("rd_objective_robustness", Point(1.5), RealKind("factor"), doc="Objective-robustness research reduces the relative ease of modeling.", ref="MTAIR 5.1.3.1")
    modeling_p = b.formula("modeling_p", "MODELING_P", [modeling_ease, rd_objective], kind=RealKind("prob"), ref="MTAIR 5.1.3")
    uses_modeling = b.formula("uses_modeling", "BERNOULLI_GATED", [modeling_p, contains], doc="The inner optimizer points at a world-model representation of the objective.", ref="MTAIR 5.1.3")
    count_ratio = b.chance("deceptive_count_ratio", Point(10.0), RealKind("odds"), doc="Relative number of ways to get a deceptive rather than corrigible inner optimizer.", ref="MTAIR 5.1.3.1")
    ease_ratio = b.chance("deceptive_ease_ratio", Point(3.0), RealKind("odds"), doc="Ease of finding deceptive rather than corrigible inner optimizers.", ref="MTAIR 5.1.3.1")
    persistence_ratio = b.chance("deceptive_persistence_ratio", Point(2.0), RealKind("odds"), doc="Relative likelihood that a deceptive rather than corrigible optimizer persists.", ref="MTAIR 5.1.3.1")
    rd_myopia = b.chance("rd_myopia", Point(1.5), RealKind("factor"), doc="Myopic-cognition research cuts the ease of deception.", ref="MTAIR 5.1.3.1")
    deception_p = b.formula("deception_p", "DECEPTION_P", [count_ratio, ease_ratio, persistence_ratio, rd_myopia], kind=RealKind("prob"), ref="MTAIR 5.1.3.1")
    deceptive = b.formula(
        "deceptive", "BERNOULLI_GATED", [deception_p, uses_modeling],
        doc="Optimizes the training objective instrumentally, to defect later.",
        ref="MTAIR 5.1.3.1", tags=("output",),
    )
    basin = b.chance("corrigibility_basin", Bernoulli(0.45), doc="Corrigibility has a broad basin of attraction.", ref="MTAIR 5.1.3", tags=("crux",))
    malign = b.chance("malign_by_default", Bernoulli(0.5), doc="Default proxy objectives are harmful in effect.", ref="MTAIR 5.1.3")
    unsafe_base = b.formula(
        "unsafe_base", "CPT_BOOL", [basin, malign],
        params={"table": {"t,t": 0.5, "t,f": 0.25, "f,t": 0.8, "f,f": 0.5}},
        doc="Pseudo-alignment too harmful for iterative correction, before deception.",
        ref="MTAIR 5.1.3", placeholder=True,
    )
    unsafe_or = b.formula("unsafe_path", "OR", [deceptive, unsafe_base], ref="MTAIR 5.1.3")
    unsafe = b.formula("not_safe_enough", "AND", [pseudo, unsafe_or], doc="The pseudo-aligned optimizer is not safe enough for corrigibility.", ref="MTAIR 5.1.3")
    fail_stop = b.formula(
        "fail_stop_deployment", "FAIL_STOP", [unsafe, deceptive],
        params={"p_fail_stop": 0.4, "p_fail_stop_deceptive": 0.85, "rd_transparency_detection": 0.8},
        doc="Nobody notices or coordinates in time to stop deployment; deception makes noticing much harder.",
        ref="MTAIR 5.1.4", placeholder=True,
    )
    inner_failure = b.formula(
        "inner_failure", "AND", [contains, pseudo, unsafe, fail_stop],
        doc="All four chain conditions hold: the deployed system has an inner alignment failure.",
        ref="MTAIR 5.1", tags=("output",),
    )
    p_contains = b.chance("p_contains_elicited", Point(0.6), RealKind("prob"), doc="Elicited marginal for the analytic chain summary.", ref="MTAIR 5.1")
    p_pseudo = b.chance("p_pseudo_elicited", Point(0.75), RealKind("prob"), ref="MTAIR 5.1")
    p_unsafe = b.chance("p_unsafe_elicited", Point(0.55), RealKind("prob"), ref="MTAIR 5.1")
    p_fail = b.chance("p_fail_stop_elicited", Point(0.5), RealKind("prob"), ref="MTAIR 5.1")
    rd_transparency = b.chance("rd_transparency_detection", Point(0.8), RealKind("factor"), doc="Transparency tooling's multiplier on failing to stop; above one it backfires.", ref="MTAIR 5.1.4")
    p_inner_analytic = b.formula(
        "p_inner_failure_analytic", "MESA_CHAIN",
        [p_contains, p_pseudo, p_unsafe, p_fail, count_ratio, ease_ratio, persistence_ratio,
         modeling_ease, rd_objective, rd_myopia, rd_transparency],
        kind=RealKind("prob"),
        doc="Closed-form chain product over the elicited terms, with the deception and transparency adjustments.",
        ref="MTAIR 5.1", tags=("output",),
    )

    # ----- safety-research race ---------------------------------------------------
    b.module = "safety"
    investment = b.chance("investment_high", Bernoulli(0.5), doc="Alignment research is unusually well funded and staffed.", ref="MTAIR 6.2.2")
    research_year = b.formula(
        "research_ready_year", "READY_YEAR", [investment],
        params={"base_hazard": 0.035, "factors": [1.6]}, kind=year,
        doc="First year the iterated-amplification style agenda has a clear vetted procedure.",
        ref="MTAIR 6.2.2", placeholder=True,
    )
    extra_time = b.chance("extra_time_years", Uniform(0.0, 5.0), RealKind("years"), doc="Fire-alarm credit: years of accelerated work once arrival looks close.", ref="MTAIR 6.2.2")
    not_expensive = b.chance("not_prohibitively_expensive", Bernoulli(0.6), doc="Aligned training is not prohibitively expensive.", ref="MTAIR 6.2.2")
    runtime_comp = b.chance("runtime_competitive", Bernoulli(0.7), doc="The aligned system is competitive at runtime.", ref="MTAIR 6.2.2")
    team_scales = b.chance("team_scales", Bernoulli(0.6), doc="Teams of aligned agents reach arbitrary capability levels.", ref="MTAIR 6.2.2")
    competitive = b.formula("competitive_ok", "AND", [not_expensive, runtime_comp, team_scales], ref="MTAIR 6.2.2")
    outer_aligned = b.chance("outer_aligned_at_optimum", Bernoulli(0.4), doc="All training-objective optima are intent aligned.", ref="MTAIR 6.2.2", tags=("crux",))
    race_won = b.formula(
        "race_won", "SAFETY_RACE", [research_year, extra_time, hlmi_year, competitive, outer_aligned],
        doc="The research lands in time, is competitive, and is outer aligned at optimum.",
        ref="MTAIR 6.2.2", tags=("output",),
    )

    # ----- terminal outcomes ---------------------------------------------------------
    b.module = "outcomes"
    aligned_ahead = b.alias("aligned_ahead", race_won, kind=BoolKind(), doc="Alignment locked in before arrival.", ref="MTAIR 7.1.2", tags=("output",))
    automatable = b.formula(
        "automatable_safety", "CPT_BOOL", [hlmi_type],
        params={"table": {"4": 0.6, "3": 0.5, "*": 0.25}},
        doc="Near-arrival systems can push safety research faster than capabilities.",
        ref="MTAIR 7.1.1", placeholder=True,
    )
    fast = b.formula("fast_progress", "OR", [disc, explosion], doc="Progress too fast to leave correction time.", ref="MTAIR 7.1.1")
    correct_course = b.formula(
        "correct_course", "CPT_BOOL", [inner_failure, deceptive, fast, automatable],
        params={"table": {
            "f,*,f,*": 0.75, "f,*,t,*": 0.5,
            "t,t,*,t": 0.25, "t,t,*,f": 0.08,
            "t,f,f,t": 0.5, "t,f,f,f": 0.3, "t,f,t,t": 0.3, "t,f,t,f": 0.15,
        }},
        doc="Misbehavior gets caught and fixed as it arises: corrigible systems, visible failures, enough time.",
        ref="MTAIR 7.1.1", placeholder=True, tags=("output",),
    )
    maximizer = b.chance(
        "utility_maximizer", Bernoulli(0.5),
        doc="The arrival system behaves like an agentic utility maximizer. Kept as a bare crux.",
        ref="MTAIR 7.4", tags=("crux",),
    )
    instrumental = b.chance(
        "instrumental_convergence", Bernoulli(0.7),
        doc="The instrumental-convergence thesis applies to this kind of system.",
        ref="MTAIR 7.4", tags=("crux",),
    )
    analogy_posterior = b.chance(
        "influence_analogy_posterior", Point(0.45), RealKind("prob"),
        doc="Influence-seeking propensity read off organisms, companies, and states.",
        ref="MTAIR 7.4",
    )
    influence = b.formula(
        "influence_seeking", "INFLUENCE_SEEKING", [instrumental, maximizer, deceptive, analogy_posterior],
        doc="Accumulates power and manipulates for instrumental reasons.",
        ref="MTAIR 7.4", tags=("output",),
    )
    governance = b.chance(
        "governance_prevents", Bernoulli(0.3),
        doc="Governing systems, including other AI, stop any single project from amassing decisive power.",
        ref="MTAIR 7.3", tags=("crux",),
    )
    coalition = b.chance("coalition_forms", Bernoulli(0.2), doc="Multiple systems form a coalition that could take over together.", ref="MTAIR 7.3")
    lead_share = b.formula(
        "lead_share", "SHARE_AT", [budget, world_gdp, hlmi_year],
        kind=RealKind("fraction"),
        doc="Lead project's slice of world output when arrival happens.",
        ref="MTAIR 7.3", placeholder=True,
    )
    lead_growth = b.formula(
        "lead_growth", "GROWTH_FROM_DOUBLING", [doubling_days],
        params={"cap": 1000.0}, kind=RealKind("1/yr"),
        doc="Lead project growth rate implied by the post-arrival doubling time.",
        ref="MTAIR 7.3",
    )
    world_growth = b.formula(
        "world_growth", "IF_ELSE", [distributed, lead_growth, gdp_growth],
        kind=RealKind("1/yr"),
        doc="Rest-of-world growth: matches the lead when capability is distributed, otherwise stays on trend.",
        ref="MTAIR 7.3", placeholder=True,
    )
    lead_time_base = b.chance("lead_time_baseline", LogNormal(2.0, 0.3), RealKind("years"), doc="Typical lead time of large engineering projects.", ref="MTAIR 7.3")
    lead_kept = b.chance("lead_kept_fraction", Uniform(0.2, 1.0), RealKind("fraction"), doc="Portion of the lead kept through takeoff.", ref="MTAIR 7.3")
    lead_time = b.formula("lead_time_years", "PRODUCT", [lead_time_base, lead_kept], kind=RealKind("years"), ref="MTAIR 7.3")
    takeover_years = b.formula(
        "economic_takeover_years", "ECON_TAKEOVER_YEARS", [lead_share, lead_growth, world_growth],
        kind=RealKind("years"),
        doc="Years of compounding needed to pass half of world output: the lower-bound route to decisive advantage.",
        ref="MTAIR 7.3",
    )
    p_single = b.chance(
        "p_single_dsa", Point(0.3), RealKind("prob"),
        doc="Directly elicited chance a single system achieves decisive advantage given takeoff; very wide uncertainty.",
        ref="MTAIR 7.3",
    )
    dsa_route = b.formula(
        "dsa_route", "DSA_ROUTE", [governance, distributed, lead_time, takeover_years, p_single, coalition],
        kind=CategoryKind(labels=DSA_ROUTE_LABELS),
        doc="Which route, if any, gives the lead project decisive strategic advantage.",
        ref="MTAIR 7.3", tags=("output",),
    )
    dsa_none = b.formula("dsa_none", "EQ_LABEL", [dsa_route], params={"index": 3}, ref="MTAIR 7.3")
    can_dsa = b.formula("lead_can_dsa", "NOT", [dsa_none], doc="Some route to decisive advantage is open.", ref="MTAIR 7.3", tags=("output",))
    directed = b.chance("directed_to_pursue_dsa", Bernoulli(0.3), doc="Humans direct the project to pursue decisive advantage.", ref="MTAIR 7.5")
    pursues = b.formula("pursues_dsa", "OR", [influence, directed], doc="The project actually goes for it.", ref="MTAIR 7.5")
    humans_misaligned = b.chance(
        "humans_misaligned", Bernoulli(0.1),
        doc="The humans running the lead project are sufficiently misaligned with humanity.",
        ref="MTAIR 7.5", tags=("crux",),
    )
    out_of_loop = b.chance("incentive_out_of_loop", Bernoulli(0.7), doc="Strong incentives push humans out of the loop.", ref="MTAIR 7.6")
    dependency = b.formula(
        "dependency", "CPT_BOOL", [out_of_loop, fast],
        params={"table": {"t,t": 0.85, "t,f": 0.6, "f,t": 0.5, "f,f": 0.3}},
        doc="The economy and society become dependent on AI; pulling the plug stops being an option.",
        ref="MTAIR 7.6", placeholder=True,
    )
    proxies = b.chance("proxies_diverge", Bernoulli(0.6), doc="Pursued proxies drift far enough from what we want.", ref="MTAIR 7.6")
    moloch = b.chance("moloch_burn", Bernoulli(0.3), doc="Extreme competition burns down most things of value even with aligned systems.", ref="MTAIR 7.6")
    outcome_parents = [
        hlmi_arrives, correct_course, aligned_ahead, can_dsa, pursues,
        humans_misaligned, influence, dependency, proxies, moloch,
    ]
    misaligned = b.formula(
        "misaligned_hlmi", "FINAL_OUTCOME", outcome_parents,
        params={"which": "misaligned_hlmi"},
        doc="Arrival happens with neither course correction nor ahead-of-time alignment.",
        ref="MTAIR 7.2", tags=("output",),
    )
    b.formula(
        "catastrophically_misaligned", "FINAL_OUTCOME", outcome_parents,
        params={"which": "catastrophically_misaligned"},
        doc="A misaligned project achieves decisive strategic advantage.",
        ref="MTAIR 7.5", tags=("output",),
    )
    b.formula(
        "loss_slow_rolling", "FINAL_OUTCOME", outcome_parents,
        params={"which": "loss_slow_rolling"},
        doc="No decisive advantage, but dependency plus diverging proxies sends civilization off the rails.",
        ref="MTAIR 7.6", tags=("output",),
    )
    b.formula(
        "loss_correlated", "FINAL_OUTCOME", outcome_parents,
        params={"which": "loss_correlated"},
        doc="Influence-seeking systems across a dependent economy take power together.",
        ref="MTAIR 7.6", tags=("output",),
    )
    b.formula(
        "loss_moloch", "FINAL_OUTCOME", outcome_parents,
        params={"which": "loss_moloch"},
        doc="Competition between human groups armed with capable AI burns the future down.",
        ref="MTAIR 7.6", tags=("output",),
    )

    modules = [
        ModuleDecl("analogies", None, "Analogies and general priors on intelligence; the four output cruxes."),
        ModuleDecl("hardware", None, "Hardware progression: cost per compute, budget, compute available."),
        ModuleDecl("timelines", None, "Arrival pathways, anchors, outside-view methods, combined arrival curve."),
        ModuleDecl("takeoff", None, "Discontinuity, intelligence explosion, takeoff speed, distribution."),
        ModuleDecl("mesa", None, "Learned-optimization failure chain and deception."),
        ModuleDecl("safety", None, "Generic safety-research race against arrival."),
        ModuleDecl("outcomes", None, "Decisive-advantage routes, influence-seeking, and the five failure outputs."),
    ]
    outputs = [n.id for n in b.nodes if "output" in n.tags]
    cruxes = [n.id for n in b.nodes if "crux" in n.tags]
    presets = {
        "Yudkowsky": {
            "takeoff.intelligence_explosion": True,
            "takeoff.discontinuity": True,
            "takeoff.takeoff_speed_class": "hyperbolic_no_doublings",
            "takeoff.hlmi_distributed": False,
        },
        "Christiano": {
            "takeoff.intelligence_explosion": True,
            "takeoff.discontinuity": False,
            "takeoff.takeoff_speed_class": "hyperbolic_yearly_doublings",
            "takeoff.hlmi_distributed": True,
        },
        "Hanson": {
            "takeoff.intelligence_explosion": False,
            "takeoff.discontinuity": False,
            "takeoff.takeoff_speed_class": "weeks_to_months",
            "takeoff.hlmi_distributed": True,
        },
        "Skeptic": {
            "takeoff.intelligence_explosion": False,
            "takeoff.discontinuity": False,
            "takeoff.takeoff_speed_class": "years_or_longer",
            "takeoff.hlmi_distributed": True,
        },
    }
    return ModelGraph.from_nodes(
        b.nodes,
        modules=modules,
        horizon=HORIZON,
        outputs=outputs,
        cruxes=cruxes,
        presets=presets,
        title="MTAIR quantitative risk map",
    )
