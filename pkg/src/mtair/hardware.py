"""Year-indexed compute economics: cost per compute, budget, compute available.

Cost per compute declines piecewise-exponentially: a sustained rate while
the 2D-silicon trend lasts, a post-trend rate until a sampled geometric stop
year, flat afterwards, never below a thermodynamic floor unless reversible
computing succeeds. The budget path follows the recent AI-compute spending
trend, then GDP growth, with race conditions imposing floors tied to
national GDP or global tech R&D. Compute available is their quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .builtins import EvalContext, register
from .errors import MtairError, require
from .rng import RngStream


@dataclass(frozen=True)
class HardwareParams:
    base_year: int
    base_cost: float  # $/FLOP at base_year
    moore_growth: float  # compute-per-$ doublings per year while the trend holds
    moore_end_year: float
    post_moore_growth: float  # doublings per year after the trend
    p_post_moore_end_per_year: float
    reversible_computing: bool
    landauer_floor_cost: float

    def validate(self) -> None:
        require(self.base_cost > 0, "INVALID_PARAMS", "base_cost must be > 0")
        require(math.isfinite(self.moore_growth), "INVALID_PARAMS", "moore_growth must be finite")
        require(
            math.isfinite(self.post_moore_growth), "INVALID_PARAMS", "post_moore_growth must be finite"
        )
        require(
            0.0 <= self.p_post_moore_end_per_year <= 1.0,
            "INVALID_PARAMS",
            "p_post_moore_end_per_year must be in [0,1]",
        )
        require(self.landauer_floor_cost > 0, "INVALID_PARAMS", "landauer_floor_cost must be > 0")


@dataclass(frozen=True)
class BudgetParams:
    base_budget: float  # cost of the most expensive AI project in the base year
    compute_trend_years: int
    compute_trend_growth: float  # doublings per year while the spending trend holds
    gdp_growth: float  # fraction per year
    world_gdp_base: float
    richest_gdp_base: float
    corporate_race: bool
    government_race: bool
    tech_rd_gdp_fraction: float
    government_fraction: float = 0.01

    def validate(self) -> None:
        for name in ("base_budget", "world_gdp_base", "richest_gdp_base"):
            require(getattr(self, name) > 0, "INVALID_PARAMS", f"{name} must be > 0")
        for name in ("tech_rd_gdp_fraction", "government_fraction"):
            require(0.0 <= getattr(self, name) <= 1.0, "INVALID_PARAMS", f"{name} must be in [0,1]")


def _geometric_stop_offset(p: float, u: float) -> float:
    """Years until the post-trend growth ends, inverse-CDF geometric."""
    if p <= 0.0:
        return math.inf
    if p >= 1.0:
        return 1.0
    return math.ceil(math.log1p(-u) / math.log1p(-p))


def cost_per_compute_series(
    params: HardwareParams, stream: RngStream, horizon: tuple[int, int]
) -> np.ndarray:
    """$/FLOP for each year of the horizon."""
    params.validate()
    years = np.arange(horizon[0], horizon[1] + 1, dtype=np.float64)
    stop_year = params.moore_end_year + _geometric_stop_offset(
        params.p_post_moore_end_per_year, stream.uniform()
    )
    moore_years = np.clip(years - params.base_year, 0.0, None)
    moore_years = np.minimum(moore_years, max(params.moore_end_year - params.base_year, 0.0))
    post_years = np.clip(years - params.moore_end_year, 0.0, None)
    post_years = np.minimum(post_years, max(stop_year - params.moore_end_year, 0.0))
    doublings = params.moore_growth * moore_years + params.post_moore_growth * post_years
    cost = params.base_cost * np.power(2.0, -doublings)
    if not params.reversible_computing:
        cost = np.maximum(cost, params.landauer_floor_cost)
    return cost


def budget_series(params: BudgetParams, horizon: tuple[int, int]) -> np.ndarray:
    """Potential $ budget for a leading project, per year; never declines."""
    params.validate()
    years = np.arange(horizon[0], horizon[1] + 1, dtype=np.float64)
    elapsed = years - horizon[0]
    trend_years = np.minimum(elapsed, float(params.compute_trend_years))
    gdp_years = elapsed - trend_years
    budget = (
        params.base_budget
        * np.power(2.0, params.compute_trend_growth * trend_years)
        * np.power(1.0 + params.gdp_growth, gdp_years)
    )
    world_gdp = params.world_gdp_base * np.power(1.0 + params.gdp_growth, elapsed)
    richest_gdp = params.richest_gdp_base * np.power(1.0 + params.gdp_growth, elapsed)
    if params.government_race:
        budget = np.maximum(budget, params.government_fraction * richest_gdp)
    if params.corporate_race:
        budget = np.maximum(budget, params.tech_rd_gdp_fraction * world_gdp)
    return np.maximum.accumulate(budget)


def compute_available_series(budget: np.ndarray, cost: np.ndarray) -> np.ndarray:
    """FLOP purchasable per year: budget divided by cost per compute."""
    budget = np.asarray(budget, dtype=np.float64)
    cost = np.asarray(cost, dtype=np.float64)
    if budget.shape != cost.shape:
        raise MtairError(
            "HORIZON_MISMATCH", f"budget and cost horizons differ: {budget.shape} vs {cost.shape}"
        )
    if not np.all(cost > 0):
        raise MtairError("NONPOSITIVE_COST", "cost per compute must be strictly positive")
    return budget / cost


# --- graph builtins --------------------------------------------------------


@register(
    "COST_PER_COMPUTE",
    7,
    needs_stream=True,
    result="series",
)
def _cost_builtin(params, args, ctx: EvalContext):
    """Parents: moore_growth, moore_end_year, post_moore_growth, p_post_end,
    reversible (bool), landauer_floor, base_cost."""
    moore_growth, moore_end, post_growth, p_end, reversible, floor, base_cost = args
    years = ctx.years
    u = ctx.draws().uniform()
    base_year = float(params.get("base_year", ctx.horizon[0]))
    with np.errstate(divide="ignore"):
        offsets = np.where(
            p_end <= 0.0,
            np.inf,
            np.ceil(np.log1p(-u) / np.log1p(-np.clip(p_end, 0.0, 1.0 - 1e-15))),
        )
    offsets = np.where(p_end >= 1.0, 1.0, offsets)
    stop = moore_end + offsets
    moore_years = np.clip(years[None, :] - base_year, 0.0, None)
    moore_years = np.minimum(moore_years, np.clip(moore_end - base_year, 0.0, None)[:, None])
    post_years = np.clip(years[None, :] - moore_end[:, None], 0.0, None)
    post_years = np.minimum(post_years, np.clip(stop - moore_end, 0.0, None)[:, None])
    doublings = moore_growth[:, None] * moore_years + post_growth[:, None] * post_years
    cost = base_cost[:, None] * np.power(2.0, -doublings)
    return np.where(reversible[:, None], cost, np.maximum(cost, floor[:, None]))


@register("GDP_SERIES", 2, result="series")
def _gdp_builtin(params, args, ctx: EvalContext):
    """Parents: base value ($), growth (fraction/year). Exponential path."""
    base, growth = args
    elapsed = ctx.years - ctx.horizon[0]
    return base[:, None] * np.power(1.0 + growth[:, None], elapsed[None, :])


@register("BUDGET_SERIES", 8, result="series")
def _budget_builtin(params, args, ctx: EvalContext):
    """Parents: base_budget, trend_years, trend_growth, gdp_growth,
    corporate_race, government_race, world_gdp (series), richest_gdp (series)."""
    base_budget, trend_years, trend_growth, gdp_growth, corp, gov, world_gdp, richest_gdp = args
    elapsed = ctx.years - ctx.horizon[0]
    held = np.minimum(elapsed[None, :], trend_years[:, None])
    after = elapsed[None, :] - held
    budget = (
        base_budget[:, None]
        * np.power(2.0, trend_growth[:, None] * held)
        * np.power(1.0 + gdp_growth[:, None], after)
    )
    gov_fraction = float(params.get("government_fraction", 0.01))
    rd_fraction = float(params.get("tech_rd_gdp_fraction", 3e-4))
    budget = np.where(gov[:, None], np.maximum(budget, gov_fraction * richest_gdp), budget)
    budget = np.where(corp[:, None], np.maximum(budget, rd_fraction * world_gdp), budget)
    return np.maximum.accumulate(budget, axis=1)


@register("COMPUTE_AVAILABLE", 2, result="series")
def _compute_available_builtin(params, args, ctx: EvalContext):
    budget, cost = args
    if budget.shape != cost.shape:
        raise MtairError("HORIZON_MISMATCH", "budget and cost series have different shapes")
    if not np.all(cost > 0):
        raise MtairError("NONPOSITIVE_COST", "cost per compute must be strictly positive")
    return budget / cost
