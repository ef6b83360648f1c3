"""Post-arrival dynamics and terminal outcome logic.

Covers the jump/explosion distinction, economic doubling after arrival,
concentration versus distribution of capability, the four-step learned-
optimizer failure chain with its deception odds, the safety-research race,
decisive-strategic-advantage routes, and the final failure-mode outputs.
Every function is a total function of its inputs given the stream, and the
Boolean logic works elementwise on numpy arrays as well as on scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .builtins import NEVER, EvalContext, register
from .errors import MtairError, require
from .rng import RngStream

BUCKET_LABELS = ("few", "intermediate", "huge")
# Bucket meanings: few = 0-2 major paradigms and 0-9 new breakthroughs;
# intermediate = 3-9 paradigms and 10-100 breakthroughs; huge = more than
# 10 paradigms or 100 breakthroughs.

ROUTE_LABELS = ("economic", "capability", "coalition", "none")

SPEED_LABELS = (
    "hyperbolic_no_doublings",
    "hyperbolic_yearly_doublings",
    "weeks_to_months",
    "years_or_longer",
)


# --- breakthrough buckets ---------------------------------------------------


def validate_bucket_table(table: Mapping[str, tuple[float, float, float]]) -> None:
    for key, row in table.items():
        require(len(row) == 3, "BAD_TABLE", f"row {key!r} must have three probabilities")
        require(all(0.0 <= p <= 1.0 for p in row), "BAD_TABLE", f"row {key!r} not in [0,1]")
        require(abs(sum(row) - 1.0) <= 1e-9, "BAD_TABLE", f"row {key!r} sums to {sum(row)}")


def _bucket_row(
    table: Mapping[str, tuple[float, float, float]], hlmi_type: str, difficult: bool, hard_paths: bool, early: bool
) -> tuple[float, float, float]:
    key = ",".join([hlmi_type, "t" if difficult else "f", "t" if hard_paths else "f", "t" if early else "f"])
    if key in table:
        return table[key]
    parts = key.split(",")
    for pattern, row in table.items():
        pparts = pattern.split(",")
        if len(pparts) == 4 and all(p == "*" or p == q for p, q in zip(pparts, parts)):
            return row
    raise MtairError("BAD_TABLE", f"no bucket row matches {key!r}")


def breakthroughs_bucket(
    hlmi_type: str,
    difficult_at_hlmi: bool,
    hard_paths: bool,
    timeline_year: float,
    table: Mapping[str, tuple[float, float, float]],
    stream: RngStream,
    year_cut: float = 2040.0,
) -> str:
    """Sample how many fundamental advances remain: few, intermediate, or huge."""
    validate_bucket_table(table)
    early = timeline_year <= year_cut
    row = _bucket_row(table, hlmi_type, difficult_at_hlmi, hard_paths, early)
    u = stream.uniform()
    cum = 0.0
    for label, p in zip(BUCKET_LABELS, row):
        cum += p
        if u < cum:
            return label
    return BUCKET_LABELS[-1]


# --- discontinuity and explosion ---------------------------------------------


def discontinuity(
    hardware_bottlenecked,
    prehlmi_near_capable,
    missing_gears,
    bucket_is_few,
    overshoot,
    hardware_overhang,
):
    """Large sudden jump to or from the arrival-level system.

    Hardware-limited paths jump when almost-enough compute does not buy
    almost-enough capability; software-limited paths jump on missing gears
    or when few breakthroughs remain. Jumps from arrival come from
    overshoot or a hardware overhang.
    """
    to_jump = np.where(
        hardware_bottlenecked,
        np.logical_not(prehlmi_near_capable),
        np.logical_or(missing_gears, bucket_is_few),
    )
    from_jump = np.logical_or(overshoot, hardware_overhang)
    return np.logical_or(to_jump, from_jump)


def intelligence_explosion(
    strongly_increasing_difficulty,
    upper_limit_far_above,
    previous_intelligence_bottleneck,
    scales_with_researchers,
    hw_not_strongly_harder,
    room_for_improvement,
):
    """Runaway feedback through software self-improvement or hardware growth."""
    software_path = np.logical_and(
        np.logical_not(strongly_increasing_difficulty),
        np.logical_and(upper_limit_far_above, previous_intelligence_bottleneck),
    )
    hardware_path = np.logical_and(
        scales_with_researchers, np.logical_and(hw_not_strongly_harder, room_for_improvement)
    )
    return np.logical_or(software_path, hardware_path)


@dataclass(frozen=True)
class Hyperbolic:
    pass


@dataclass(frozen=True)
class LognormalDoublingTime:
    median_days: float
    sigma_log10: float


def post_hlmi_doubling_time(
    explosion: bool,
    strongly_increasing_difficulty: bool,
    upper_limit_far_above: bool,
    difficult_at_hlmi: bool,
    outside_median_days: float = 14.0,
    sigma_log10: float = 1.0,
    condition_multiplier: float = 3.0,
):
    """Economic doubling after arrival: hyperbolic under an explosion, else a
    lognormal around the outside-view median, slowed by a declared multiplier
    for each of the three ease conditions that fails.

    The 14-day default sits inside the historical-transitions band; it is a
    configuration default, not an elicited fact.
    """
    require(outside_median_days > 0, "INVALID_PARAMS", "outside_median_days must be > 0")
    require(sigma_log10 > 0, "INVALID_PARAMS", "sigma_log10 must be > 0")
    require(condition_multiplier > 0, "INVALID_PARAMS", "condition_multiplier must be > 0")
    if explosion:
        return Hyperbolic()
    failing = (
        int(bool(strongly_increasing_difficulty))
        + int(not upper_limit_far_above)
        + int(bool(difficult_at_hlmi))
    )
    return LognormalDoublingTime(
        median_days=outside_median_days * condition_multiplier**failing, sigma_log10=sigma_log10
    )


def hlmi_distributed(
    disc,
    doubling,
    hlmi_type,
    high_fixed_costs,
    easy_trade,
    large_hw_scaling_gains,
    catchup_easier,
    secrecy,
    eliminate_laggards,
):
    """Scored vote over concentration pressures; a discontinuity wins outright.

    `doubling` is the takeoff-speed outcome; hyperbolic growth flips the
    catch-up advantage off. `hlmi_type` enters only through the elicited
    factor nodes upstream, but is kept in the signature for symmetry with
    the graph wiring.
    """
    if isinstance(doubling, (np.ndarray, bool, np.bool_)):
        hyperbolic = doubling
    else:
        hyperbolic = isinstance(doubling, Hyperbolic)
    catchup = np.logical_and(catchup_easier, np.logical_not(hyperbolic))
    score = (
        _as_int(easy_trade)
        + _as_int(catchup)
        - _as_int(high_fixed_costs)
        - _as_int(large_hw_scaling_gains)
        - _as_int(secrecy)
        - _as_int(eliminate_laggards)
    )
    return np.logical_and(np.logical_not(disc), score >= 0)


def _as_int(x):
    return np.asarray(x).astype(np.int64) if isinstance(x, np.ndarray) else int(bool(x))


# --- learned-optimizer failure chain -----------------------------------------


@dataclass(frozen=True)
class MesaChainParams:
    p_contains_mesa: float
    p_pseudo_given_mesa: float
    p_unsafe_given_pseudo: float
    p_fail_stop_given_unsafe: float
    count_ratio: float = 1.0  # ways to be deceptive vs corrigible
    ease_ratio: float = 1.0  # ease of finding deceptive vs corrigible
    persistence_ratio: float = 1.0  # deceptive vs corrigible persistence
    modeling_ease_ratio: float = 1.0  # modeling vs internalizing the objective
    rd_reduction_objective_robustness: float = 1.0
    rd_reduction_myopia: float = 1.0
    rd_transparency_detection: float = 1.0

    def validate(self) -> None:
        for name in (
            "p_contains_mesa",
            "p_pseudo_given_mesa",
            "p_unsafe_given_pseudo",
            "p_fail_stop_given_unsafe",
        ):
            require(0.0 <= getattr(self, name) <= 1.0, "INVALID_PARAMS", f"{name} must be in [0,1]")
        for name in (
            "count_ratio",
            "ease_ratio",
            "persistence_ratio",
            "modeling_ease_ratio",
            "rd_reduction_objective_robustness",
            "rd_reduction_myopia",
            "rd_transparency_detection",
        ):
            require(getattr(self, name) > 0.0, "INVALID_PARAMS", f"{name} must be > 0")


def deception_probability(
    count_ratio: float, ease_ratio: float, persistence_ratio: float, rd_reduction_myopia: float
) -> float:
    """P(deceptive | modeling) from the odds of deceptive over corrigible."""
    odds = count_ratio * (ease_ratio / rd_reduction_myopia) * persistence_ratio
    return odds / (1.0 + odds)


def modeling_probability(modeling_ease_ratio: float, rd_reduction_objective_robustness: float) -> float:
    odds = modeling_ease_ratio / rd_reduction_objective_robustness
    return odds / (1.0 + odds)


def mesa_failure_probability(p: MesaChainParams) -> tuple[float, float]:
    """(probability of an inner-alignment failure, probability of deception).

    The failure chain multiplies four terms: contains a mesa-optimizer,
    pseudo-aligned, not safe enough, and deployment not stopped. Deception
    raises the unsafe term toward 1 (the chain takes the max of the elicited
    value and the deception path) and makes stopping harder; transparency
    R&D scales the stop-failure term and may backfire above 1 before
    clamping.
    """
    p.validate()
    p_deceptive_given_modeling = deception_probability(
        p.count_ratio, p.ease_ratio, p.persistence_ratio, p.rd_reduction_myopia
    )
    p_modeling = modeling_probability(p.modeling_ease_ratio, p.rd_reduction_objective_robustness)
    p_unsafe = max(p.p_unsafe_given_pseudo, p_deceptive_given_modeling * p_modeling)
    p_fail_stop = min(1.0, max(0.0, p.p_fail_stop_given_unsafe * p.rd_transparency_detection))
    p_inner = p.p_contains_mesa * p.p_pseudo_given_mesa * p_unsafe * p_fail_stop
    p_deceptive = p.p_contains_mesa * p.p_pseudo_given_mesa * p_modeling * p_deceptive_given_modeling
    return p_inner, p_deceptive


# --- decisive strategic advantage --------------------------------------------


def economic_takeover_years(initial_share: float, lead_growth: float, world_growth: float) -> float:
    """Years for the lead project's share to pass half of world output.

    Both economies grow exponentially; the share s0 reaches 50% after
    ln((1-s0)/s0) / (lead - world) years. No growth edge means never.
    """
    require(0.0 < initial_share < 1.0, "BAD_SHARE", f"share must be in (0,1), got {initial_share}")
    delta = lead_growth - world_growth
    if delta <= 0.0:
        return NEVER
    return max(0.0, math.log((1.0 - initial_share) / initial_share) / delta)


def dsa_assessment(
    governance_prevents: bool,
    distributed: bool,
    lead_time_years: float,
    takeover_time: float,
    p_single_dsa_given_takeoff: float,
    coalition: bool,
    stream: RngStream,
) -> tuple[bool, str]:
    """Whether the lead project can reach decisive advantage, and by which route.

    Routes are checked economic > capability > coalition. Concentrated
    capability raises the single-project chance: the failure probability is
    squared when capability is not distributed.
    """
    require(lead_time_years >= 0.0, "INVALID_PARAMS", "lead_time_years must be >= 0")
    require(
        0.0 <= p_single_dsa_given_takeoff <= 1.0, "INVALID_PARAMS", "p_single must be in [0,1]"
    )
    u = stream.uniform()  # always drawn so counters do not depend on the route
    if governance_prevents:
        return False, "none"
    if lead_time_years >= takeover_time:
        return True, "economic"
    p_eff = p_single_dsa_given_takeoff
    if not distributed:
        p_eff = 1.0 - (1.0 - p_eff) ** 2
    if u < p_eff:
        return True, "capability"
    if coalition:
        return True, "coalition"
    return False, "none"


def influence_seeking(
    instrumental_convergence_applies: bool,
    utility_maximizer: bool,
    deceptive: bool,
    analogy_posterior: float,
    stream: RngStream,
) -> bool:
    """Deception entails it; a convergent utility maximizer implies it; the
    remaining mass comes from analogy to organisms, firms, and states."""
    require(0.0 <= analogy_posterior <= 1.0, "INVALID_PARAMS", "posterior must be in [0,1]")
    u = stream.uniform()
    if deceptive:
        return True
    if instrumental_convergence_applies and utility_maximizer:
        return True
    return bool(u < analogy_posterior)


def safety_race(
    research_ready_year: float,
    extra_time_years: float,
    hlmi_year: float,
    competitive_ok: bool,
    outer_aligned_at_optimum: bool,
) -> bool:
    """Alignment research wins iff it lands (with fire-alarm credit) before
    arrival and the resulting method is competitive and aligned at optimum."""
    require(extra_time_years >= 0.0, "INVALID_PARAMS", "extra_time_years must be >= 0")
    if math.isinf(research_ready_year):
        return False
    in_time = research_ready_year - extra_time_years <= hlmi_year
    return bool(in_time and competitive_ok and outer_aligned_at_optimum)


# --- terminal outcomes ---------------------------------------------------------


def final_outcomes(
    hlmi,
    correct_course,
    aligned_ahead,
    lead_can_dsa,
    pursues_dsa,
    humans_misaligned,
    influence,
    dependency,
    proxies_diverge,
    moloch_burn,
):
    """The five red outputs: technical misalignment, the DSA catastrophe, and
    the three no-DSA loss-of-control variants. DSA and no-DSA branches are
    mutually exclusive by construction, and nothing fires without arrival.
    """
    land = np.logical_and
    lnot = np.logical_not
    misaligned_hlmi = land(hlmi, land(lnot(correct_course), lnot(aligned_ahead)))
    lead_misaligned = np.logical_or(misaligned_hlmi, humans_misaligned)
    achieves = land(hlmi, land(lead_can_dsa, pursues_dsa))
    catastrophically = land(achieves, lead_misaligned)
    no_dsa = lnot(achieves)
    loss_slow = land(no_dsa, land(misaligned_hlmi, land(dependency, proxies_diverge)))
    loss_correlated = land(no_dsa, land(misaligned_hlmi, land(dependency, influence)))
    loss_moloch = land(no_dsa, land(hlmi, moloch_burn))
    return misaligned_hlmi, catastrophically, loss_slow, loss_correlated, loss_moloch


# --- graph builtins -------------------------------------------------------------


@register("BUCKET", 4, needs_stream=True, result="category")
def _bucket_builtin(params, args, ctx: EvalContext):
    """Parents: hlmi_type (category), difficult (bool), hard_paths (bool),
    timeline year. Params: table rows keyed 'type,difficult,hard,early' with
    wildcards, labels for the type axis, year_cut."""
    from .builtins import unique_combo_rows

    hlmi_type, difficult, hard_paths, year = args
    table = {k: tuple(v) for k, v in params["table"].items()}
    validate_bucket_table(table)
    labels = params.get("type_labels", [])
    year_cut = float(params.get("year_cut", 2040.0))
    early = year <= year_cut
    u = ctx.draws().uniform()
    type_idx = hlmi_type.astype(np.int64)
    first, inverse = unique_combo_rows([type_idx, difficult, hard_paths, early])
    rows = np.empty((first.shape[0], 3), dtype=np.float64)
    for k, i in enumerate(first):
        t = int(type_idx[i])
        label = labels[t] if t < len(labels) else "*"
        rows[k] = np.cumsum(_bucket_row(table, label, bool(difficult[i]), bool(hard_paths[i]), bool(early[i])))
    cum = rows[inverse]
    out = (u[:, None] >= cum).sum(axis=1)
    return np.minimum(out, 2)


@register("DISCONTINUITY", 6, result="bool")
def _discontinuity_builtin(params, args, ctx):
    hardware_bottlenecked, near_capable, missing_gears, bucket, overshoot, overhang = args
    return discontinuity(
        hardware_bottlenecked, near_capable, missing_gears, bucket.astype(np.int64) == 0, overshoot, overhang
    )


@register("INTELLIGENCE_EXPLOSION", 6, result="bool")
def _explosion_builtin(params, args, ctx):
    return intelligence_explosion(*args)


@register("DOUBLING_DAYS", 4, needs_stream=True, result="real")
def _doubling_days_builtin(params, args, ctx):
    """Days per economic doubling; 0 encodes hyperbolic growth."""
    explosion, strongly_increasing, upper_limit, difficult = args
    median = float(params.get("outside_median_days", 14.0))
    sigma = float(params.get("sigma_log10", 1.0))
    mult = float(params.get("condition_multiplier", 3.0))
    failing = (
        strongly_increasing.astype(np.int64)
        + np.logical_not(upper_limit).astype(np.int64)
        + difficult.astype(np.int64)
    )
    from scipy.special import ndtri

    z = ndtri(np.clip(ctx.draws().uniform(), 1e-16, 1.0 - 1e-16))
    days = median * np.power(mult, failing) * np.power(10.0, sigma * z)
    return np.where(explosion, 0.0, days)


@register("SPEED_CLASS", 3, result="category")
def _speed_class_builtin(params, args, ctx):
    """Labels: hyperbolic with/without intermediate doublings, weeks-to-months,
    years-or-longer. The no-doublings variant pairs with a discontinuity."""
    explosion, disc, doubling_days = args
    cut_days = float(params.get("slow_cut_days", 180.0))
    out = np.full(ctx.n, 3, dtype=np.int64)
    out = np.where(doubling_days < cut_days, 2, out)
    out = np.where(explosion & ~disc, 1, out)
    out = np.where(explosion & disc, 0, out)
    return out


@register("HLMI_DISTRIBUTED", 8, result="bool")
def _distributed_builtin(params, args, ctx):
    disc, hyperbolic, high_fixed, easy_trade, hw_gains, catchup, secrecy, eliminate = args
    return hlmi_distributed(
        disc, hyperbolic, None, high_fixed, easy_trade, hw_gains, catchup, secrecy, eliminate
    )


@register("DECEPTION_P", 4, result="real")
def _deception_p_builtin(params, args, ctx):
    count_ratio, ease_ratio, persistence, rd_myopia = args
    odds = count_ratio * (ease_ratio / rd_myopia) * persistence
    return odds / (1.0 + odds)


@register("MODELING_P", 2, result="real")
def _modeling_p_builtin(params, args, ctx):
    ease, rd_objective = args
    odds = ease / rd_objective
    return odds / (1.0 + odds)


@register("FAIL_STOP", 2, needs_stream=True, result="bool")
def _fail_stop_builtin(params, args, ctx):
    """Parents: unsafe (bool), deceptive (bool). Deception makes the danger
    harder to see; transparency tooling scales both chances and may backfire."""
    unsafe, deceptive = args
    rd = float(params.get("rd_transparency_detection", 1.0))
    p_plain = min(1.0, max(0.0, float(params.get("p_fail_stop", 0.4)) * rd))
    p_deceptive = min(1.0, max(0.0, float(params.get("p_fail_stop_deceptive", 0.85)) * rd))
    u = ctx.draws().uniform()
    p = np.where(deceptive, p_deceptive, p_plain)
    return unsafe & (u < p)


@register("MESA_CHAIN", 11, result="real")
def _mesa_chain_builtin(params, args, ctx):
    """Analytic inner-failure probability from the elicited chain terms."""
    (
        p_contains,
        p_pseudo,
        p_unsafe,
        p_fail,
        count_ratio,
        ease_ratio,
        persistence,
        modeling_ease,
        rd_objective,
        rd_myopia,
        rd_transparency,
    ) = args
    dec_odds = count_ratio * (ease_ratio / rd_myopia) * persistence
    p_dec = dec_odds / (1.0 + dec_odds)
    mod_odds = modeling_ease / rd_objective
    p_mod = mod_odds / (1.0 + mod_odds)
    p_unsafe_eff = np.maximum(p_unsafe, p_dec * p_mod)
    p_fail_eff = np.clip(p_fail * rd_transparency, 0.0, 1.0)
    return p_contains * p_pseudo * p_unsafe_eff * p_fail_eff


@register("SHARE_AT", 3, result="real")
def _share_at_builtin(params, args, ctx):
    """Parents: numerator series, denominator series, year. The ratio at the
    given year; a never-year falls back to the end of the horizon."""
    numerator, denominator, year = args
    idx = np.clip(np.nan_to_num(year, posinf=ctx.horizon[1]) - ctx.horizon[0], 0, None)
    idx = idx.astype(np.int64)
    idx = np.minimum(idx, numerator.shape[1] - 1)
    num = np.take_along_axis(numerator, idx[:, None], axis=1)[:, 0]
    den = np.take_along_axis(denominator, idx[:, None], axis=1)[:, 0]
    return np.clip(num / den, 1e-12, 1.0 - 1e-12)


@register("GROWTH_FROM_DOUBLING", 1, result="real")
def _growth_from_doubling_builtin(params, args, ctx):
    """Yearly growth rate implied by a doubling time in days; a zero doubling
    time (hyperbolic) saturates at the declared cap."""
    days = args[0]
    cap = float(params.get("cap", 1000.0))
    with np.errstate(divide="ignore"):
        growth = math.log(2.0) * 365.25 / days
    return np.minimum(growth, cap)


@register("ECON_TAKEOVER_YEARS", 3, result="real")
def _takeover_builtin(params, args, ctx):
    share, lead_growth, world_growth = args
    if not bool(np.all((share > 0.0) & (share < 1.0))):
        raise MtairError("BAD_SHARE", "initial share must be strictly inside (0,1)")
    delta = lead_growth - world_growth
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        t = np.log((1.0 - share) / share) / delta
    t = np.where(np.isnan(t), 0.0, t)  # infinite edge over a finite gap closes now
    return np.where(delta <= 0.0, NEVER, np.maximum(t, 0.0))


@register("DSA_ROUTE", 6, needs_stream=True, result="category")
def _dsa_route_builtin(params, args, ctx):
    """Parents: governance_prevents, distributed, lead_time, takeover_years,
    p_single, coalition. Labels: economic, capability, coalition, none."""
    governance, distributed, lead_time, takeover_years, p_single, coalition = args
    u = ctx.draws().uniform()
    economic = lead_time >= takeover_years
    p_eff = np.where(distributed, p_single, 1.0 - (1.0 - p_single) ** 2)
    capability = u < p_eff
    out = np.full(ctx.n, 3, dtype=np.int64)
    out = np.where(coalition, 2, out)
    out = np.where(capability, 1, out)
    out = np.where(economic, 0, out)
    return np.where(governance, 3, out)


@register("INFLUENCE_SEEKING", 4, needs_stream=True, result="bool")
def _influence_builtin(params, args, ctx):
    instrumental, maximizer, deceptive, posterior = args
    u = ctx.draws().uniform()
    analogy = u < posterior
    return deceptive | (instrumental & maximizer) | analogy


@register("SAFETY_RACE", 5, result="bool")
def _safety_race_builtin(params, args, ctx):
    research, extra, hlmi_year, competitive, outer_aligned = args
    ready = np.isfinite(research) & ((research - extra) <= hlmi_year)
    return ready & competitive & outer_aligned


_OUTCOME_INDEX = {
    "misaligned_hlmi": 0,
    "catastrophically_misaligned": 1,
    "loss_slow_rolling": 2,
    "loss_correlated": 3,
    "loss_moloch": 4,
}


@register("FINAL_OUTCOME", 10, result="bool")
def _final_outcome_builtin(params, args, ctx):
    """Parents: hlmi, correct_course, aligned_ahead, lead_can_dsa, pursues,
    humans_misaligned, influence, dependency, proxies_diverge, moloch_burn.
    Params: which (one of the five outcome names)."""
    which = params["which"]
    if which not in _OUTCOME_INDEX:
        raise MtairError("INVALID_PARAMS", f"unknown outcome {which!r}")
    return final_outcomes(*args)[_OUTCOME_INDEX[which]]
