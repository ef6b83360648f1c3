"""Arrival-time forecasting: inside-view pathways, outside-view methods,
and their combination into year-indexed cumulative arrival curves.

Inside-view: seven pathways each gated on hardware (compute crossing an
anchor-derived requirement, boosted by algorithmic progress) and software
readiness; the earliest success wins. Outside-view: reference-class hazard
sequences of the form 1/(trials + m) with m calibrated so the arrival curve
reaches 50% at the reference class's expected duration, plus trend
extrapolation of automation and subfield progress. The methods are mixed as
a weighted sum of curves, optionally damping mass on very short horizons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .builtins import NEVER, EvalContext, register, register_variadic
from .errors import MtairError, require
from .rng import BlockRng, RngStream

PATHWAY_ORDER = ("evolutionary", "dl", "hybrid", "cogsci", "wbe", "neuromorphic", "other")


# --- anchors ---------------------------------------------------------------


@dataclass(frozen=True)
class EvolutionaryAnchorParams:
    evo_years: float  # years from first neurons to humans
    avg_neuron_population: float
    flop_per_neuron_year: float
    avg_animal_population: float
    env_flop_per_animal_year: float
    luck_factor: float = 1.0  # >= 1; 1 means no hard step
    speedup_population: float = 1.0
    speedup_generations: float = 1.0
    speedup_per_capita: float = 1.0

    def validate(self) -> None:
        for name in (
            "evo_years",
            "avg_neuron_population",
            "flop_per_neuron_year",
            "avg_animal_population",
            "env_flop_per_animal_year",
        ):
            require(getattr(self, name) > 0, "INVALID_PARAMS", f"{name} must be > 0")
        require(self.luck_factor >= 1.0, "INVALID_PARAMS", "luck_factor must be >= 1")
        for name in ("speedup_population", "speedup_generations", "speedup_per_capita"):
            require(getattr(self, name) >= 1.0, "INVALID_PARAMS", f"{name} must be >= 1")


def evolutionary_anchor(p: EvolutionaryAnchorParams) -> float:
    """Compute-equivalent of evolving intelligence, divided by engineer speedups.

    Brain-compute and environment-simulation terms add; the luck factor
    scales the total up when a hard step is hypothesized; the three speedup
    factors divide it back down.
    """
    p.validate()
    brain = p.evo_years * p.avg_neuron_population * p.flop_per_neuron_year
    env = p.evo_years * p.avg_animal_population * p.env_flop_per_animal_year
    speedup = p.speedup_population * p.speedup_generations * p.speedup_per_capita
    return (brain + env) * p.luck_factor / speedup


@dataclass(frozen=True)
class LifetimeAnchorParams:
    neurons: float = 8.6e10
    flop_per_neuron_year: float = 3e11
    training_years: float = 18.0
    pretraining_factor: float = 1.0

    def validate(self) -> None:
        for name in ("neurons", "flop_per_neuron_year", "training_years", "pretraining_factor"):
            require(getattr(self, name) > 0, "INVALID_PARAMS", f"{name} must be > 0")


def lifetime_anchor(p: LifetimeAnchorParams) -> float:
    """Brain-compute spent training a human to adulthood, times pretraining."""
    p.validate()
    return p.neurons * p.flop_per_neuron_year * p.training_years * p.pretraining_factor


@dataclass(frozen=True)
class ScalingAnchorParams:
    kind: str  # "genome" | "neural_net"
    param_count: float = 7.5e8
    scaling_coeff: float = 1.0  # data points D = a * P^b
    scaling_exponent: float = 1.0
    brain_flop_rate: float = 1e15  # FLOP per subjective second
    efficiency_factor: float = 1.0
    horizon_seconds: float = 1.0  # subjective seconds per training update
    horizon_linear: bool = True

    def validate(self) -> None:
        for name in (
            "param_count",
            "scaling_coeff",
            "scaling_exponent",
            "brain_flop_rate",
            "efficiency_factor",
            "horizon_seconds",
        ):
            require(getattr(self, name) > 0, "INVALID_PARAMS", f"{name} must be > 0")


def scaling_law_anchor(p: ScalingAnchorParams) -> float:
    """Training compute = data points from a scaling law, times cost per point."""
    p.validate()
    if not p.horizon_linear:
        raise MtairError(
            "UNSUPPORTED_SUBLINEAR", "sublinear horizon-length scaling is not modeled"
        )
    data_points = p.scaling_coeff * p.param_count**p.scaling_exponent
    per_point = p.brain_flop_rate * p.efficiency_factor * p.horizon_seconds
    return data_points * per_point


def dl_extrapolation_anchor(
    benchmark_points: Sequence[tuple[float, float]], human_level: float
) -> float:
    """Compute where the fitted (log10 compute -> score) line hits human level."""
    require(len(benchmark_points) >= 2, "INVALID_PARAMS", "need at least two benchmark points")
    xs = np.asarray([x for x, _ in benchmark_points], dtype=np.float64)
    ys = np.asarray([y for _, y in benchmark_points], dtype=np.float64)
    order = np.argsort(xs)
    if not np.all(np.diff(ys[order]) > 0):
        raise MtairError("NONMONOTONE_INPUT", "benchmark scores must increase with compute")
    slope, intercept = np.polyfit(xs, ys, 1)
    if slope <= 0:
        raise MtairError("UNREACHABLE", "fitted capability slope is not positive")
    return float(10.0 ** ((human_level - intercept) / slope))


def required_compute_distribution(
    anchors: Sequence[tuple[float, float, float]], evo_modifier: float, evo_index: int = 0
):
    """Mixture of lognormals centered on the anchor medians.

    `anchors` rows are (weight, FLOP median, sigma_log10); the component at
    `evo_index` has its median multiplied by `evo_modifier` before mixing.
    """
    from .dist import LogNormal, Mixture, Point

    require(len(anchors) > 0, "BAD_WEIGHTS", "need at least one anchor")
    weights = [w for w, _, _ in anchors]
    require(all(w >= 0 for w in weights), "BAD_WEIGHTS", "anchor weights must be >= 0")
    require(abs(sum(weights) - 1.0) <= 1e-9, "BAD_WEIGHTS", f"weights sum to {sum(weights)}")
    require(evo_modifier >= 0, "INVALID_PARAMS", "evo_modifier must be >= 0")
    components = []
    for idx, (w, median, sigma) in enumerate(anchors):
        if idx == evo_index:
            median = median * evo_modifier
        child = LogNormal(median, sigma) if sigma > 0 else Point(median)
        components.append((w, child))
    if len(components) == 1:
        return components[0][1]
    return Mixture(tuple(components))


# --- pathway arrival -------------------------------------------------------


def pathway_arrival_year(
    required: float,
    algo_progress: np.ndarray,
    compute: np.ndarray,
    software_ready: float,
    horizon: tuple[int, int],
) -> float:
    """First year with enough boosted compute, no earlier than software readiness."""
    algo_progress = np.asarray(algo_progress, dtype=np.float64)
    compute = np.asarray(compute, dtype=np.float64)
    if algo_progress.shape != compute.shape:
        raise MtairError("HORIZON_MISMATCH", "algorithmic progress and compute series differ")
    years = np.arange(horizon[0], horizon[1] + 1, dtype=np.float64)
    if years.shape != compute.shape:
        raise MtairError("HORIZON_MISMATCH", "series length does not match horizon")
    ok = (compute * algo_progress >= required) & (years >= software_ready)
    if not ok.any():
        return NEVER
    return float(years[int(np.argmax(ok))])


def inside_view_timeline(pathways: Mapping[str, float]) -> tuple[float, str]:
    """Earliest pathway arrival; ties broken by the fixed pathway order."""
    require(len(pathways) > 0, "EMPTY_INPUT", "no pathway samples given")
    best_year = NEVER
    best_label = "none"
    ordered = [label for label in PATHWAY_ORDER if label in pathways]
    ordered += [label for label in pathways if label not in PATHWAY_ORDER]
    for label in ordered:
        year = pathways[label]
        if year < best_year:
            best_year = year
            best_label = label
    return best_year, best_label


def other_methods_pathway(
    p_new_method_per_year: float,
    per_method_hazard: float,
    scale_up_delay: float,
    stream: RngStream,
    horizon: tuple[int, int],
) -> float:
    """Catch-all pathway: new methods appear yearly, mature, then may succeed."""
    require(
        0.0 <= p_new_method_per_year <= 1.0, "INVALID_PARAMS", "p_new_method_per_year outside [0,1]"
    )
    require(0.0 <= per_method_hazard <= 1.0, "INVALID_PARAMS", "per_method_hazard outside [0,1]")
    out = _other_methods_block(
        np.array([p_new_method_per_year]),
        np.array([per_method_hazard]),
        scale_up_delay,
        stream._block,
        horizon,
    )
    return float(out[0])


def _other_methods_block(
    p_new: np.ndarray,
    hazard: np.ndarray,
    delay: float,
    rng: BlockRng,
    horizon: tuple[int, int],
) -> np.ndarray:
    n = p_new.shape[0]
    start, end = horizon
    births = np.zeros(n, dtype=np.float64)  # methods discovered so far
    active = np.zeros(n, dtype=np.float64)
    result = np.full(n, NEVER, dtype=np.float64)
    pending: list[np.ndarray] = []
    delay_steps = int(math.ceil(delay))
    for year in range(start, end + 1):
        new = (rng.uniform() < p_new).astype(np.float64)
        births = births + new
        pending.append(new)
        if len(pending) > delay_steps:
            active = active + pending.pop(0)
        p_any = 1.0 - np.power(1.0 - hazard, active)
        hit = (rng.uniform() < p_any) & ~np.isfinite(result)
        result = np.where(hit, float(year), result)
    return result


# --- timeline CDFs ---------------------------------------------------------


@dataclass
class TimelineCdf:
    """Cumulative arrival probability per year; the remainder never arrives."""

    start: int
    end: int
    cumulative: np.ndarray

    def __post_init__(self):
        self.cumulative = np.asarray(self.cumulative, dtype=np.float64)
        require(
            self.cumulative.shape == (self.end - self.start + 1,),
            "HORIZON_MISMATCH",
            "cumulative length must match year range",
        )
        diffs = np.diff(self.cumulative)
        require(bool(np.all(diffs >= -1e-12)), "INVALID_PARAMS", "CDF must be nondecreasing")
        require(
            bool(np.all((self.cumulative >= -1e-12) & (self.cumulative <= 1.0 + 1e-12))),
            "INVALID_PARAMS",
            "CDF values must lie in [0,1]",
        )

    @property
    def never_mass(self) -> float:
        return 1.0 - float(self.cumulative[-1])

    def at(self, year: int) -> float:
        if year < self.start:
            return 0.0
        if year > self.end:
            return float(self.cumulative[-1])
        return float(self.cumulative[year - self.start])


@dataclass(frozen=True)
class SemiInformativePriorParams:
    baseline: float  # per-trial success probability, 0 < f < 1
    origin_year: int  # when the pursuit began (1956 or 1840 style)
    mode: str = "year_trials"  # or "compute_doubling_trials"
    m: float | None = None  # hazard offset; derived from baseline when None
    round_m: bool = True


def calibrate_m(baseline: float, round_to_int: bool = True) -> float:
    """Offset making the arrival CDF hit 50% at the reference-class duration.

    The survival product telescopes to m/(m+T), so the CDF after T trials is
    T/(T+m): it crosses one half exactly at T = m, hence m = 1/baseline.
    """
    require(0.0 < baseline < 1.0, "INVALID_PARAMS", f"baseline must be in (0,1), got {baseline}")
    m = 1.0 / baseline
    if round_to_int:
        m = float(round(m))
    require(m >= 1.0, "INVALID_PARAMS", "calibrated m must be >= 1")
    return m


def hazard_in_year(params: SemiInformativePriorParams, year: int) -> float:
    """Per-year success chance given no success yet: 1 / (trials + m)."""
    m = params.m if params.m is not None else calibrate_m(params.baseline, params.round_m)
    trials = year - params.origin_year
    require(trials >= 1, "INVALID_PARAMS", f"year {year} is not after origin {params.origin_year}")
    return 1.0 / (trials + m)


def semi_informative_timeline(
    params: SemiInformativePriorParams,
    horizon: tuple[int, int],
    doublings: np.ndarray | None = None,
    doublings_at_base: float | None = None,
) -> TimelineCdf:
    """Arrival CDF from compounded 1/(k+m) hazards, conditioned on no arrival
    before the horizon starts.

    In year mode, trials are calendar years since the origin. In compute mode,
    trials are cumulative compute doublings (a series aligned to the horizon,
    plus the count already accumulated when the horizon opens).
    """
    m = params.m if params.m is not None else calibrate_m(params.baseline, params.round_m)
    start, end = horizon
    years = np.arange(start, end + 1)
    if params.mode == "year_trials":
        trials = (years - params.origin_year).astype(np.float64)
        require(bool(trials[0] >= 1), "INVALID_PARAMS", "horizon must start after the origin year")
        trials_at_base = trials[0] - 1.0
    elif params.mode == "compute_doubling_trials":
        require(doublings is not None, "INVALID_PARAMS", "compute mode needs a doubling series")
        trials = np.asarray(doublings, dtype=np.float64)
        require(
            trials.shape == years.shape, "HORIZON_MISMATCH", "doubling series must match horizon"
        )
        trials_at_base = float(doublings_at_base if doublings_at_base is not None else trials[0])
    else:
        raise MtairError("INVALID_PARAMS", f"unknown mode {params.mode!r}")
    # Survival through T trials telescopes to m / (m + T).
    survival = m / (m + trials)
    survival_base = m / (m + trials_at_base)
    cdf = 1.0 - survival / survival_base
    return TimelineCdf(start=start, end=end, cumulative=np.clip(cdf, 0.0, 1.0))


def stem_reference_rate(successes: int, pursuit_years: Sequence[float]) -> float:
    """Frequency estimate: successes over total years of serious pursuit."""
    require(successes >= 0, "INVALID_PARAMS", "successes must be >= 0")
    exposure = float(sum(pursuit_years))
    require(exposure > 0, "ZERO_EXPOSURE", "total pursuit years must be > 0")
    return successes / exposure


def per_doubling_rate(successes: int, doublings: Sequence[float]) -> float:
    """Frequency estimate per economic doubling."""
    require(successes >= 0, "INVALID_PARAMS", "successes must be >= 0")
    exposure = float(sum(doublings))
    require(exposure > 0, "ZERO_EXPOSURE", "total doublings must be > 0")
    return successes / exposure


def per_doubling_to_yearly(rate_per_doubling: float, growth: float) -> float:
    """Convert a per-doubling hazard to per-year at a given growth rate."""
    require(0.0 < rate_per_doubling < 1.0, "INVALID_PARAMS", "rate must be in (0,1)")
    require(growth > 0.0, "INVALID_PARAMS", "growth must be > 0")
    doubling_time_years = math.log(2.0) / math.log1p(growth)
    return 1.0 - (1.0 - rate_per_doubling) ** (1.0 / doubling_time_years)


# --- trend extrapolation ----------------------------------------------------


def _extrapolated_progress(u: np.ndarray, rate: float, acceleration: str, accel_factor: float) -> np.ndarray:
    if acceleration == "constant" or accel_factor == 1.0:
        return rate * u
    f = accel_factor
    return rate * (np.power(f, u) - 1.0) / math.log(f)


def _crossing_year(
    level: float,
    rate: float,
    target: float,
    acceleration: str,
    accel_factor: float,
    progress_units: np.ndarray,
    years: np.ndarray,
) -> float:
    if rate <= 0.0:
        raise MtairError("UNREACHABLE", "extrapolation rate must be > 0")
    if acceleration == "slowing" and accel_factor < 1.0:
        limit = level + rate / (-math.log(accel_factor))
        if limit < target:
            raise MtairError("UNREACHABLE", "slowing trend plateaus below the target")
    levels = level + _extrapolated_progress(progress_units, rate, acceleration, accel_factor)
    hit = levels >= target - 1e-12
    if not hit.any():
        return NEVER
    return float(years[int(np.argmax(hit))])


def extrapolation_timeline(
    mode: str,
    current_level,
    rate,
    acceleration: str = "constant",
    subfield_threshold: float = 0.5,
    basis: str = "time",
    horizon: tuple[int, int] = (2022, 2122),
    compute: np.ndarray | None = None,
    accel_factor: float = 1.0,
) -> TimelineCdf:
    """Point-mass arrival curve from extrapolating automation or subfields.

    Automation crosses at 100%; subfields when the threshold fraction of
    per-subfield trends reach human level. The progress axis is calendar
    time, or log10 of compute when hardware drives algorithmic progress.
    """
    start, end = horizon
    years = np.arange(start, end + 1, dtype=np.float64)
    if basis == "time":
        units = years - start
    elif basis == "log10_compute":
        require(compute is not None, "INVALID_PARAMS", "compute basis needs a compute series")
        series = np.asarray(compute, dtype=np.float64)
        require(series.shape == years.shape, "HORIZON_MISMATCH", "compute series must match horizon")
        units = np.log10(np.maximum(series / series[0], 1.0))
    else:
        raise MtairError("INVALID_PARAMS", f"unknown basis {basis!r}")

    if acceleration == "speeding" and accel_factor == 1.0:
        accel_factor = 1.03
    if acceleration == "slowing" and accel_factor == 1.0:
        accel_factor = 0.97

    if mode == "automation":
        year = _crossing_year(
            float(current_level), float(rate), 1.0, acceleration, accel_factor, units, years
        )
    elif mode == "subfields":
        levels = np.atleast_1d(np.asarray(current_level, dtype=np.float64))
        rates = np.atleast_1d(np.asarray(rate, dtype=np.float64))
        require(levels.shape == rates.shape, "INVALID_PARAMS", "subfield levels/rates differ")
        crossings = sorted(
            _crossing_year(float(l), float(r), 1.0, acceleration, accel_factor, units, years)
            for l, r in zip(levels, rates)
        )
        needed = max(1, math.ceil(subfield_threshold * len(crossings)))
        year = crossings[needed - 1]
    else:
        raise MtairError("INVALID_PARAMS", f"unknown mode {mode!r}")

    cdf = (years >= year).astype(np.float64)
    return TimelineCdf(start=start, end=end, cumulative=cdf)


def combine_timelines(
    cdfs: Sequence[tuple[float, TimelineCdf]],
    short_adjustment: tuple[bool, int, float] = (False, 0, 1.0),
) -> TimelineCdf:
    """Weighted pointwise mixture of arrival curves, optionally damped early.

    With the adjustment enabled, arrival mass within `horizon_years` of the
    base year is multiplied by `damping` and the removed mass is pushed onto
    later years in proportion to their increments, leaving the total
    arriving mass (and hence never-mass) unchanged.
    """
    require(len(cdfs) > 0, "BAD_WEIGHTS", "need at least one curve")
    weights = [w for w, _ in cdfs]
    require(abs(sum(weights) - 1.0) <= 1e-9, "BAD_WEIGHTS", f"weights sum to {sum(weights)}")
    start, end = cdfs[0][1].start, cdfs[0][1].end
    for _, cdf in cdfs:
        require((cdf.start, cdf.end) == (start, end), "HORIZON_MISMATCH", "curves span different years")
    mixed = np.zeros(end - start + 1, dtype=np.float64)
    for w, cdf in cdfs:
        mixed = mixed + w * cdf.cumulative
    enabled, horizon_years, damping = short_adjustment
    if enabled and horizon_years > 0:
        mixed = _damp_short_timelines(mixed, horizon_years, damping)
    return TimelineCdf(start=start, end=end, cumulative=mixed)


def _damp_short_timelines(cdf: np.ndarray, horizon_years: int, damping: float) -> np.ndarray:
    require(0.0 <= damping <= 1.0, "INVALID_PARAMS", "damping must be in [0,1]")
    length = cdf.shape[0]
    cut = min(horizon_years, length) - 1
    if cut >= length - 1:
        return cdf  # nothing later to absorb the removed mass
    inside = cdf[cut]
    arriving = cdf[-1]
    out = np.array(cdf, dtype=np.float64)
    out[: cut + 1] = damping * cdf[: cut + 1]
    later = arriving - inside
    if later > 0:
        scale = (arriving - damping * inside) / later
        out[cut + 1 :] = damping * inside + scale * (cdf[cut + 1 :] - inside)
    else:
        tail = np.linspace(0.0, 1.0, length - cut)[1:]
        out[cut + 1 :] = damping * inside + (1.0 - damping) * inside * tail
    return out


# --- graph builtins ----------------------------------------------------------


@register("EVOLUTIONARY_ANCHOR", 9, result="real")
def _evo_anchor_builtin(params, args, ctx):
    evo_years, neurons, flop_rate, animals, env_rate, luck, s_pop, s_gen, s_cap = args
    brain = evo_years * neurons * flop_rate
    env = evo_years * animals * env_rate
    return (brain + env) * luck / (s_pop * s_gen * s_cap)


@register("LIFETIME_ANCHOR", 4, result="real")
def _lifetime_anchor_builtin(params, args, ctx):
    neurons, flop_rate, years, pretraining = args
    return neurons * flop_rate * years * pretraining


@register("SCALING_ANCHOR", 4, result="real")
def _scaling_anchor_builtin(params, args, ctx):
    param_count, brain_flop_rate, efficiency, horizon_seconds = args
    a = float(params.get("scaling_coeff", 1.0))
    b = float(params.get("scaling_exponent", 1.0))
    data_points = a * np.power(param_count, b)
    return data_points * brain_flop_rate * efficiency * horizon_seconds


@register("DL_EXTRAPOLATION_ANCHOR", 0, result="real")
def _dl_anchor_builtin(params, args, ctx):
    points = [(float(x), float(y)) for x, y in params["benchmark_points"]]
    value = dl_extrapolation_anchor(points, float(params["human_level"]))
    return np.full(ctx.n, value, dtype=np.float64)


@register("LUCK_FACTOR", 3, result="real")
def _luck_factor_builtin(params, args, ctx):
    """Parents: hard_step (bool), hard_step_environmental (bool), magnitude."""
    hard_step, environmental, magnitude = args
    applies = hard_step & ~environmental
    return np.where(applies, np.maximum(magnitude, 1.0), 1.0)


@register("EVO_MODIFIER", 2, result="real")
def _evo_modifier_builtin(params, args, ctx):
    """Parents: statistical_more_efficient (bool), methods_get_stuck (bool)."""
    efficient, stuck = args
    eff = float(params.get("efficient_factor", 0.1))
    stk = float(params.get("stuck_factor", 10.0))
    out = np.ones(ctx.n, dtype=np.float64)
    out = np.where(efficient, out * eff, out)
    out = np.where(stuck, out * stk, out)
    return out


@register_variadic("REQUIRED_COMPUTE", min_arity=2, needs_stream=True, result="real")
def _required_compute_builtin(params, args, ctx):
    """Anchor mixture: parents are the anchor FLOP values, then the
    evolutionary modifier, then the Boolean cruxes the weights tilt on.

    Params: base_weights, sigmas (per-anchor log10 spread), evo_index, and
    tilts as [crux_position, anchor_index, factor] rows applied when the
    crux is true. One draw picks the component, a second perturbs it.
    """
    base_weights = np.asarray(params["base_weights"], dtype=np.float64)
    k = base_weights.shape[0]
    sigmas = np.asarray(params.get("sigmas", [0.0] * k), dtype=np.float64)
    evo_index = int(params.get("evo_index", 0))
    anchors = np.stack([a.astype(np.float64) for a in args[:k]], axis=1)  # (n, k)
    modifier = args[k]
    cruxes = args[k + 1 :]
    anchors[:, evo_index] = anchors[:, evo_index] * modifier
    weights = np.tile(base_weights, (ctx.n, 1))
    for crux_pos, anchor_idx, factor in params.get("tilts", []):
        mask = cruxes[int(crux_pos)]
        weights[mask, int(anchor_idx)] *= float(factor)
    weights = weights / weights.sum(axis=1, keepdims=True)
    rng = ctx.draws()
    u = rng.uniform()
    cum = np.cumsum(weights, axis=1)
    choice = (u[:, None] > cum).sum(axis=1)
    choice = np.minimum(choice, k - 1)
    from scipy.special import ndtri

    z = ndtri(np.clip(rng.uniform(), 1e-16, 1.0 - 1e-16))
    chosen_anchor = np.take_along_axis(anchors, choice[:, None], axis=1)[:, 0]
    chosen_sigma = sigmas[choice]
    return chosen_anchor * np.power(10.0, chosen_sigma * z)


@register("ALGO_PROGRESS", 5, result="series")
def _algo_progress_builtin(params, args, ctx):
    """Parents: trend_rate (doublings/yr), hardware_drives (bool),
    compute (series), race (bool), ai_acceleration (bool)."""
    rate, hardware_drives, compute, race, ai_accel = args
    rate = rate * np.where(race, float(params.get("race_factor", 1.25)), 1.0)
    rate = rate * np.where(ai_accel, float(params.get("ai_factor", 1.5)), 1.0)
    elapsed = ctx.years - ctx.horizon[0]
    time_doublings = rate[:, None] * elapsed[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        compute_doublings = rate[:, None] * np.log2(
            np.maximum(compute / compute[:, :1], 1.0)
        )
    doublings = np.where(hardware_drives[:, None], compute_doublings, time_doublings)
    doublings = np.minimum(doublings, float(params.get("max_doublings", 100.0)))
    return np.power(2.0, doublings)


@register("PATHWAY_ARRIVAL", 4, result="year")
def _pathway_arrival_builtin(params, args, ctx):
    required, algo, compute, software = args
    years = ctx.years
    ok = (compute * algo >= required[:, None]) & (years[None, :] >= software[:, None])
    any_ok = ok.any(axis=1)
    first = ok.argmax(axis=1)
    return np.where(any_ok, years[first], NEVER)


@register_variadic("INSIDE_VIEW_MIN", min_arity=1, result="year")
def _inside_view_min_builtin(params, args, ctx):
    out = args[0].astype(np.float64)
    for a in args[1:]:
        out = np.minimum(out, a)
    return out


@register_variadic("ARGMIN_LABEL", min_arity=1, result="category")
def _argmin_label_builtin(params, args, ctx):
    """Index of the earliest year among parents; ties favor the first parent;
    all-never maps to one past the last parent (a "none" label)."""
    stacked = np.stack([a.astype(np.float64) for a in args], axis=1)
    idx = np.argmin(stacked, axis=1)
    all_never = ~np.isfinite(stacked).any(axis=1)
    return np.where(all_never, len(args), idx).astype(np.int64)


@register("OTHER_METHODS", 2, needs_stream=True, result="year")
def _other_methods_builtin(params, args, ctx):
    p_new, hazard = args
    delay = float(params.get("scale_up_delay", 20.0))
    return _other_methods_block(
        np.clip(p_new, 0.0, 1.0), np.clip(hazard, 0.0, 1.0), delay, ctx.draws(), ctx.horizon
    )


@register("SEMI_TIMELINE", 1, result="series")
def _semi_timeline_builtin(params, args, ctx):
    """Parent: baseline per-trial rate. Params: origin_year, round_m."""
    baseline = np.clip(args[0], 1e-9, 1.0 - 1e-9)
    m = 1.0 / baseline
    if params.get("round_m", True):
        m = np.round(m)
    origin = int(params["origin_year"])
    trials = (ctx.years - origin)[None, :]
    survival = m[:, None] / (m[:, None] + trials)
    base = m / (m + (ctx.horizon[0] - 1 - origin))
    return np.clip(1.0 - survival / base[:, None], 0.0, 1.0)


@register("SEMI_TIMELINE_COMPUTE", 4, result="series")
def _semi_timeline_compute_builtin(params, args, ctx):
    """Parents: baseline per-doubling rate, compute series, doublings already
    accumulated before the horizon, and the elicited conversion ratio between
    compute doublings and reference-class trials."""
    baseline = np.clip(args[0], 1e-9, 1.0 - 1e-9)
    compute = args[1]
    hist = args[2][:, None]
    conversion = args[3][:, None]
    m = 1.0 / baseline
    if params.get("round_m", True):
        m = np.round(m)
    with np.errstate(divide="ignore", invalid="ignore"):
        future = conversion * np.log2(np.maximum(compute / compute[:, :1], 1.0))
    trials = hist + future
    survival = m[:, None] / (m[:, None] + trials)
    base = (m[:, None] / (m[:, None] + hist))
    return np.clip(1.0 - survival / base, 0.0, 1.0)


@register("REFERENCE_RATE", 0, result="real")
def _reference_rate_builtin(params, args, ctx):
    """Successes over summed exposure for a declared reference class."""
    rate = stem_reference_rate(int(params["successes"]), [float(x) for x in params["exposures"]])
    return np.full(ctx.n, rate, dtype=np.float64)


@register("PER_DOUBLING_TO_YEARLY", 1, result="real")
def _per_doubling_to_yearly_builtin(params, args, ctx):
    growth = float(params.get("growth", 0.03))
    doubling_time_years = math.log(2.0) / math.log1p(growth)
    return 1.0 - np.power(1.0 - np.clip(args[0], 0.0, 1.0 - 1e-12), 1.0 / doubling_time_years)


@register("EXTRAP_AUTOMATION", 4, result="series")
def _extrap_automation_builtin(params, args, ctx):
    """Parents: current_level, rate, hardware_drives (bool), compute (series)."""
    level, rate, hardware_drives, compute = args
    years = ctx.years
    elapsed = (years - ctx.horizon[0])[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_units = np.log10(np.maximum(compute / compute[:, :1], 1.0))
    units = np.where(hardware_drives[:, None], log_units, np.broadcast_to(elapsed, log_units.shape))
    accel = str(params.get("acceleration", "constant"))
    factor = float(params.get("accel_factor", 1.0))
    rate = np.maximum(rate, 1e-12)
    if accel == "constant" or factor == 1.0:
        progress = rate[:, None] * units
    else:
        progress = rate[:, None] * (np.power(factor, units) - 1.0) / math.log(factor)
    levels = level[:, None] + progress
    hit = levels >= 1.0 - 1e-12
    return (np.cumsum(hit, axis=1) >= 1).astype(np.float64)


@register("EXTRAP_SUBFIELDS", 3, result="series")
def _extrap_subfields_builtin(params, args, ctx):
    """Parents: threshold fraction, hardware_drives (bool), compute (series).
    Params: subfield_levels, subfield_rates (aligned lists)."""
    threshold, hardware_drives, compute = args
    levels = np.asarray(params["subfield_levels"], dtype=np.float64)
    rates = np.asarray(params["subfield_rates"], dtype=np.float64)
    years = ctx.years
    elapsed = (years - ctx.horizon[0])[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_units = np.log10(np.maximum(compute / compute[:, :1], 1.0))
    units = np.where(hardware_drives[:, None], log_units, np.broadcast_to(elapsed, log_units.shape))
    # (n, years, subfields)
    trajectories = levels[None, None, :] + np.maximum(rates, 1e-12)[None, None, :] * units[:, :, None]
    crossed = (trajectories >= 1.0 - 1e-12).mean(axis=2)
    hit = crossed >= threshold[:, None] - 1e-12
    return (np.cumsum(hit, axis=1) >= 1).astype(np.float64)


@register_variadic("COMBINE_TIMELINES", min_arity=2, result="series")
def _combine_timelines_builtin(params, args, ctx):
    """Parents: adjustment_enabled (bool), then the component curves.
    Params: weights (per curve), adjust_horizon_years, damping."""
    enabled = args[0]
    curves = args[1:]
    weights = params.get("weights", [1.0 / len(curves)] * len(curves))
    require(len(weights) == len(curves), "BAD_WEIGHTS", "one weight per curve required")
    require(abs(sum(weights) - 1.0) <= 1e-9, "BAD_WEIGHTS", "weights must sum to 1")
    mixed = np.zeros_like(curves[0], dtype=np.float64)
    for w, curve in zip(weights, curves):
        mixed = mixed + float(w) * curve
    horizon_years = int(params.get("adjust_horizon_years", 10))
    damping = float(params.get("damping", 0.5))
    if horizon_years > 0 and np.any(enabled):
        damped = np.apply_along_axis(_damp_short_timelines, 1, mixed, horizon_years, damping)
        mixed = np.where(enabled[:, None], damped, mixed)
    return mixed


@register("YEAR_TO_CDF", 1, result="series")
def _year_to_cdf_builtin(params, args, ctx):
    """Degenerate curve: all mass at the parent's year (none if never)."""
    year = args[0]
    return (ctx.years[None, :] >= year[:, None]).astype(np.float64)


@register("CDF_SAMPLE", 1, needs_stream=True, result="year")
def _cdf_sample_builtin(params, args, ctx):
    """Inverse-CDF draw of an arrival year; mass past the end means never."""
    cdf = args[0]
    u = ctx.draws().uniform()
    hit = cdf >= u[:, None] + 1e-15
    any_hit = hit.any(axis=1)
    first = hit.argmax(axis=1)
    return np.where(any_hit, ctx.years[first], NEVER)
