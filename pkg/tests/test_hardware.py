import math

import numpy as np
import pytest

from mtair.errors import MtairError
from mtair.hardware import (
    BudgetParams,
    HardwareParams,
    budget_series,
    compute_available_series,
    cost_per_compute_series,
)
from mtair.rng import RngStream

HORIZON = (2022, 2122)


def hw(**kw):
    defaults = dict(
        base_year=2022,
        base_cost=1e-17,
        moore_growth=0.4,
        moore_end_year=2032,
        post_moore_growth=0.0,
        p_post_moore_end_per_year=0.0,
        reversible_computing=False,
        landauer_floor_cost=1e-30,
    )
    defaults.update(kw)
    return HardwareParams(**defaults)


def bp(**kw):
    defaults = dict(
        base_budget=1e9,
        compute_trend_years=0,
        compute_trend_growth=0.0,
        gdp_growth=0.0,
        world_gdp_base=1e14,
        richest_gdp_base=2e13,
        corporate_race=False,
        government_race=False,
        tech_rd_gdp_fraction=3e-4,
        government_fraction=0.01,
    )
    defaults.update(kw)
    return BudgetParams(**defaults)


class TestCostPerCompute:
    def test_trend_decade_cuts_cost_sixteenfold(self):
        cost = cost_per_compute_series(hw(), RngStream(1), HORIZON)
        assert cost[0] == 1e-17
        assert cost[10] == pytest.approx(1e-17 / 16.0, rel=1e-12)

    def test_flat_after_trend_when_post_growth_zero(self):
        cost = cost_per_compute_series(hw(post_moore_growth=0.0), RngStream(1), HORIZON)
        assert np.all(cost[11:] == cost[10])

    def test_binding_floor_freezes_series(self):
        cost = cost_per_compute_series(hw(landauer_floor_cost=1e-17), RngStream(1), HORIZON)
        assert np.all(cost == 1e-17)

    def test_reversible_computing_pierces_floor(self):
        declining = dict(post_moore_growth=0.4, p_post_moore_end_per_year=0.0, landauer_floor_cost=1e-19)
        blocked = cost_per_compute_series(hw(**declining), RngStream(1), HORIZON)
        free = cost_per_compute_series(
            hw(**declining, reversible_computing=True), RngStream(1), HORIZON
        )
        assert blocked.min() == pytest.approx(1e-19)
        assert free.min() < 1e-19

    def test_nonincreasing_for_nonnegative_growth(self):
        cost = cost_per_compute_series(
            hw(post_moore_growth=0.2, p_post_moore_end_per_year=0.1), RngStream(5), HORIZON
        )
        assert np.all(np.diff(cost) <= 1e-30)

    def test_post_trend_stops_at_sampled_year_then_flat(self):
        params = hw(post_moore_growth=0.5, p_post_moore_end_per_year=0.3)
        cost = cost_per_compute_series(params, RngStream(9), HORIZON)
        # After some stop year the series must be constant.
        flat_from = np.flatnonzero(np.diff(cost) == 0.0)
        assert flat_from.size > 0 and np.all(np.diff(cost)[flat_from[0] :] == 0.0)

    def test_deterministic_given_stream(self):
        params = hw(post_moore_growth=0.5, p_post_moore_end_per_year=0.3)
        a = cost_per_compute_series(params, RngStream(4, 2, 7), HORIZON)
        b = cost_per_compute_series(params, RngStream(4, 2, 7), HORIZON)
        assert np.array_equal(a, b)

    def test_invalid_params(self):
        with pytest.raises(MtairError) as err:
            cost_per_compute_series(hw(base_cost=0.0), RngStream(1), HORIZON)
        assert err.value.code == "INVALID_PARAMS"


class TestBudget:
    def test_gdp_growth_decade(self):
        budget = budget_series(bp(gdp_growth=0.03), HORIZON)
        assert budget[0] == 1e9
        assert budget[10] == pytest.approx(1e9 * 1.03**10, rel=1e-12)
        assert budget[10] == pytest.approx(1e9 * 1.3439163793441222, rel=1e-9)

    def test_government_race_floor(self):
        params = bp(government_race=True, gdp_growth=0.03)
        budget = budget_series(params, HORIZON)
        richest = 2e13 * 1.03 ** np.arange(101)
        assert np.all(budget >= 0.01 * richest - 1e-6)

    def test_corporate_race_floor(self):
        budget = budget_series(bp(corporate_race=True), HORIZON)
        assert np.all(budget >= 3e-4 * 1e14 - 1e-6)

    def test_all_flat_without_races(self):
        budget = budget_series(bp(), HORIZON)
        assert np.all(budget == 1e9)

    def test_trend_then_gdp(self):
        budget = budget_series(bp(compute_trend_years=3, compute_trend_growth=1.0, gdp_growth=0.03), HORIZON)
        assert budget[3] == pytest.approx(1e9 * 8.0, rel=1e-12)
        assert budget[4] == pytest.approx(1e9 * 8.0 * 1.03, rel=1e-12)

    def test_budget_never_declines(self):
        budget = budget_series(bp(compute_trend_years=5, compute_trend_growth=1.2, gdp_growth=0.0), HORIZON)
        assert np.all(np.diff(budget) >= 0.0)


class TestComputeAvailable:
    def test_simple_division(self):
        out = compute_available_series(np.full(3, 1e9), np.full(3, 1e-17))
        assert np.allclose(out, 1e26, rtol=1e-12)

    def test_linearity_in_budget(self):
        budget = np.linspace(1e8, 1e10, 101)
        cost = np.full(101, 1e-17)
        assert np.allclose(
            compute_available_series(2 * budget, cost), 2 * compute_available_series(budget, cost)
        )

    def test_decade_product_of_growths(self):
        budget = budget_series(bp(gdp_growth=0.03), HORIZON)
        cost = cost_per_compute_series(hw(), RngStream(1), HORIZON)
        compute = compute_available_series(budget, cost)
        assert compute[10] / compute[0] == pytest.approx(1.03**10 * 16.0, rel=1e-9)

    def test_horizon_mismatch(self):
        with pytest.raises(MtairError) as err:
            compute_available_series(np.ones(5), np.ones(6))
        assert err.value.code == "HORIZON_MISMATCH"

    def test_nonpositive_cost(self):
        with pytest.raises(MtairError) as err:
            compute_available_series(np.ones(3), np.array([1.0, 0.0, 1.0]))
        assert err.value.code == "NONPOSITIVE_COST"


def test_monotonicity_growth_never_decreases_compute():
    base_cost = cost_per_compute_series(hw(moore_growth=0.4), RngStream(1), HORIZON)
    faster_cost = cost_per_compute_series(hw(moore_growth=0.5), RngStream(1), HORIZON)
    budget = budget_series(bp(gdp_growth=0.02), HORIZON)
    slow = compute_available_series(budget, base_cost)
    fast = compute_available_series(budget, faster_cost)
    assert np.all(fast >= slow)
    richer = compute_available_series(budget_series(bp(gdp_growth=0.04), HORIZON), base_cost)
    assert np.all(richer >= slow)
