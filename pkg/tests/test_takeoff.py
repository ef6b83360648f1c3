import itertools
import math

import numpy as np
import pytest

from mtair.errors import MtairError
from mtair.rng import RngStream
from mtair.takeoff import (
    Hyperbolic,
    LognormalDoublingTime,
    MesaChainParams,
    breakthroughs_bucket,
    deception_probability,
    discontinuity,
    dsa_assessment,
    economic_takeover_years,
    final_outcomes,
    hlmi_distributed,
    influence_seeking,
    intelligence_explosion,
    mesa_failure_probability,
    post_hlmi_doubling_time,
    safety_race,
)

BOOLS = (False, True)


class TestBreakthroughsBucket:
    TABLE = {"dl,t,t,t": (1.0, 0.0, 0.0), "*,*,*,*": (0.3, 0.4, 0.3)}

    def test_degenerate_row_certain(self):
        for seed in range(20):
            got = breakthroughs_bucket("dl", True, True, 2030.0, self.TABLE, RngStream(seed))
            assert got == "few"

    def test_bucket_frequencies_multinomial(self):
        table = {"*,*,*,*": (1 / 3, 1 / 3, 1 / 3)}
        n = 100_000
        counts = {"few": 0, "intermediate": 0, "huge": 0}
        for i in range(n):
            counts[breakthroughs_bucket("dl", False, False, 2050.0, table, RngStream(9, i, 0))] += 1
        se = math.sqrt((1 / 3) * (2 / 3) / n)
        for label in counts:
            assert abs(counts[label] / n - 1 / 3) <= 3 * se

    def test_bad_table_rejected(self):
        with pytest.raises(MtairError) as err:
            breakthroughs_bucket("dl", True, True, 2030.0, {"*,*,*,*": (0.5, 0.4, 0.2)}, RngStream(1))
        assert err.value.code == "BAD_TABLE"

    def test_missing_row_rejected(self):
        with pytest.raises(MtairError) as err:
            breakthroughs_bucket("wbe", True, True, 2030.0, {"dl,t,t,t": (1, 0, 0)}, RngStream(1))
        assert err.value.code == "BAD_TABLE"


class TestDiscontinuity:
    def reference(self, hw, near, gears, few, overshoot, overhang):
        # Independent transcription: hardware-limited jumps need pre-arrival
        # systems to be weak; software-limited jumps need missing gears or few
        # breakthroughs; either way an overshoot or overhang jump suffices.
        if hw:
            to_jump = not near
        else:
            to_jump = gears or few
        return to_jump or overshoot or overhang

    def test_exhaustive_truth_table(self):
        for row in itertools.product(BOOLS, repeat=6):
            got = discontinuity(*row)
            assert bool(got) == self.reference(*row), row

    def test_named_rows(self):
        assert discontinuity(True, True, False, False, False, False) == False  # noqa: E712
        assert discontinuity(False, False, True, False, False, False) == True  # noqa: E712
        assert discontinuity(False, False, False, False, False, True) == True  # noqa: E712

    def test_vectorized_matches_scalar(self):
        rows = np.array(list(itertools.product(BOOLS, repeat=6)))
        cols = [rows[:, i].astype(bool) for i in range(6)]
        got = discontinuity(*cols)
        expected = np.array([self.reference(*r) for r in rows])
        assert np.array_equal(got, expected)


class TestIntelligenceExplosion:
    def reference(self, strongly, upper, bottleneck, scales, not_harder, room):
        software = (not strongly) and upper and bottleneck
        hardware = scales and not_harder and room
        return software or hardware

    def test_exhaustive_truth_table(self):
        for row in itertools.product(BOOLS, repeat=6):
            assert bool(intelligence_explosion(*row)) == self.reference(*row), row

    def test_named_rows(self):
        # all four favorable analogy cruxes, no hardware path
        assert intelligence_explosion(False, True, True, False, False, False) == True  # noqa: E712
        # strongly-increasing difficulty defeats the software path
        assert intelligence_explosion(True, True, True, False, False, False) == False  # noqa: E712
        # hardware triple alone suffices
        assert intelligence_explosion(True, False, False, True, True, True) == True  # noqa: E712


class TestDoublingTime:
    def test_explosion_hyperbolic(self):
        out = post_hlmi_doubling_time(True, False, True, False)
        assert isinstance(out, Hyperbolic)

    def test_all_conditions_hold_outside_view_median(self):
        out = post_hlmi_doubling_time(False, False, True, False)
        assert isinstance(out, LognormalDoublingTime)
        assert out.median_days == 14.0

    def test_two_failures_multiply(self):
        out = post_hlmi_doubling_time(False, True, True, True)
        assert out.median_days == pytest.approx(126.0)

    def test_three_failures(self):
        out = post_hlmi_doubling_time(False, True, False, True)
        assert out.median_days == pytest.approx(14.0 * 27.0)


class TestDistributed:
    def test_discontinuity_dominates(self):
        for factors in itertools.product(BOOLS, repeat=6):
            assert not hlmi_distributed(True, Hyperbolic(), "dl", *factors)

    def test_all_pro_no_anti(self):
        assert hlmi_distributed(
            False, LognormalDoublingTime(100.0, 1.0), "dl",
            False, True, False, True, False, False,
        )

    def test_hand_scored_vote(self):
        # easy_trade + catchup - secrecy = 1 >= 0 with slow doubling
        assert hlmi_distributed(
            False, LognormalDoublingTime(100.0, 1.0), "dl",
            False, True, False, True, True, False,
        )

    def test_hyperbolic_flips_catchup(self):
        # with catch-up the score is 2-2=0 (distributed); hyperbolic drops it to 1-2
        slow = hlmi_distributed(
            False, LognormalDoublingTime(30.0, 1.0), "dl",
            True, True, True, True, False, False,
        )
        fast = hlmi_distributed(False, Hyperbolic(), "dl", True, True, True, True, False, False)
        assert bool(slow) is True and bool(fast) is False


class TestMesaChain:
    def params(self, **kw):
        defaults = dict(
            p_contains_mesa=0.5,
            p_pseudo_given_mesa=0.8,
            p_unsafe_given_pseudo=0.5,
            p_fail_stop_given_unsafe=0.5,
        )
        defaults.update(kw)
        return MesaChainParams(**defaults)

    def test_chain_product_hand_check(self):
        p_inner, _ = mesa_failure_probability(self.params())
        assert p_inner == pytest.approx(0.1, abs=1e-12)

    def test_absorbing_zero(self):
        for field in ("p_contains_mesa", "p_pseudo_given_mesa", "p_fail_stop_given_unsafe"):
            p_inner, _ = mesa_failure_probability(self.params(**{field: 0.0}))
            assert p_inner == 0.0

    def test_even_odds_when_ratios_one(self):
        assert deception_probability(1.0, 1.0, 1.0, 1.0) == 0.5

    def test_deception_raises_unsafe_term(self):
        # Elicited unsafe prob 0: the deception route keeps the chain alive.
        p = self.params(p_unsafe_given_pseudo=0.0, count_ratio=10.0, ease_ratio=3.0,
                        persistence_ratio=2.0, modeling_ease_ratio=3.0)
        p_inner, p_dec = mesa_failure_probability(p)
        assert p_inner > 0.0
        assert p_dec > 0.0

    def test_product_bound(self):
        p = self.params(count_ratio=10.0, ease_ratio=3.0, persistence_ratio=2.0)
        p_inner, _ = mesa_failure_probability(p)
        assert p_inner <= p.p_contains_mesa + 1e-15
        assert p_inner <= p.p_pseudo_given_mesa + 1e-15
        assert p_inner <= 1.0

    def test_transparency_backfire_clamped(self):
        p = self.params(p_fail_stop_given_unsafe=0.9, rd_transparency_detection=2.0)
        p_inner, _ = mesa_failure_probability(p)
        # effective stop-failure term clamps at 1
        assert p_inner == pytest.approx(0.5 * 0.8 * 0.5 * 1.0, abs=1e-12)

    def test_myopia_research_reduces_deception(self):
        base = deception_probability(10.0, 3.0, 2.0, 1.0)
        treated = deception_probability(10.0, 3.0, 2.0, 3.0)
        assert treated < base

    def test_invalid_params(self):
        with pytest.raises(MtairError):
            mesa_failure_probability(self.params(p_contains_mesa=1.5))
        with pytest.raises(MtairError):
            mesa_failure_probability(self.params(count_ratio=0.0))


class TestEconomicTakeover:
    def test_at_threshold_zero_years(self):
        assert economic_takeover_years(0.5, 1.0, 0.2) == 0.0

    def test_no_edge_never(self):
        assert economic_takeover_years(0.01, 0.2, 0.2) == math.inf
        assert economic_takeover_years(0.01, 0.1, 0.2) == math.inf

    def test_closed_form_hand_check(self):
        got = economic_takeover_years(0.01, math.log(2.0), 0.0)
        assert got == pytest.approx(math.log(99.0) / math.log(2.0), abs=1e-9)
        assert got == pytest.approx(6.6293566200796095, abs=1e-9)

    def test_monotonicity(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            s0 = float(rng.uniform(0.001, 0.4))
            delta = float(rng.uniform(0.05, 2.0))
            base = economic_takeover_years(s0, delta, 0.0)
            assert economic_takeover_years(s0, delta * 1.5, 0.0) < base
            assert economic_takeover_years(s0 * 0.5, delta, 0.0) > base

    def test_bad_share(self):
        for s0 in (0.0, 1.0, -0.2):
            with pytest.raises(MtairError) as err:
                economic_takeover_years(s0, 1.0, 0.0)
            assert err.value.code == "BAD_SHARE"


class TestDsaAssessment:
    def test_governance_veto(self):
        got = dsa_assessment(True, False, 10.0, 1.0, 1.0, True, RngStream(1))
        assert got == (False, "none")

    def test_economic_route(self):
        t = math.log(99.0) / math.log(2.0)
        got = dsa_assessment(False, True, 10.0, t, 0.0, False, RngStream(1))
        assert got == (True, "economic")

    def test_capability_route_certain(self):
        got = dsa_assessment(False, False, 1.0, math.inf, 1.0, False, RngStream(1))
        assert got == (True, "capability")

    def test_coalition_route(self):
        got = dsa_assessment(False, True, 1.0, math.inf, 0.0, True, RngStream(1))
        assert got == (True, "coalition")

    def test_concentration_raises_capability_chance(self):
        n = 20_000
        hits = {True: 0, False: 0}
        for distributed in (True, False):
            for i in range(n):
                ok, route = dsa_assessment(False, distributed, 0.0, math.inf, 0.3, False, RngStream(3, i, 0))
                hits[distributed] += route == "capability"
        assert hits[False] / n > hits[True] / n
        assert abs(hits[True] / n - 0.3) < 3 * math.sqrt(0.3 * 0.7 / n)
        assert abs(hits[False] / n - 0.51) < 3 * math.sqrt(0.51 * 0.49 / n)


class TestInfluenceSeeking:
    def test_deception_entails(self):
        assert influence_seeking(False, False, True, 0.0, RngStream(1)) is True

    def test_convergent_maximizer(self):
        assert influence_seeking(True, True, False, 0.0, RngStream(1)) is True

    def test_zero_posterior_otherwise_false(self):
        assert influence_seeking(False, True, False, 0.0, RngStream(1)) is False
        assert influence_seeking(True, False, False, 0.0, RngStream(1)) is False


class TestSafetyRace:
    def test_comfortably_in_time(self):
        assert safety_race(2035.0, 0.0, 2040.0, True, True) is True

    def test_too_late(self):
        assert safety_race(2045.0, 3.0, 2040.0, True, True) is False

    def test_boundary_equality_with_extra_time(self):
        assert safety_race(2043.0, 3.0, 2040.0, True, True) is True

    def test_flags_required(self):
        assert safety_race(2030.0, 0.0, 2040.0, False, True) is False
        assert safety_race(2030.0, 0.0, 2040.0, True, False) is False

    def test_never_ready_never_wins(self):
        assert safety_race(math.inf, 5.0, math.inf, True, True) is False


class TestFinalOutcomes:
    def reference(self, hlmi, course, ahead, can, pursues, humans, influence, dep, proxies, moloch):
        misaligned = hlmi and not course and not ahead
        lead_misaligned = misaligned or humans
        achieves = hlmi and can and pursues
        catastrophe = achieves and lead_misaligned
        no_dsa = not achieves
        slow = no_dsa and misaligned and dep and proxies
        correlated = no_dsa and misaligned and dep and influence
        moloch_out = no_dsa and hlmi and moloch
        return misaligned, catastrophe, slow, correlated, moloch_out

    def test_exhaustive_truth_table(self):
        for row in itertools.product(BOOLS, repeat=10):
            got = tuple(bool(x) for x in final_outcomes(*row))
            assert got == self.reference(*row), row

    def test_no_arrival_no_outcomes(self):
        for row in itertools.product(BOOLS, repeat=9):
            got = final_outcomes(False, *row)
            assert not any(bool(x) for x in got)

    def test_dsa_and_loss_mutually_exclusive(self):
        for row in itertools.product(BOOLS, repeat=10):
            _, catastrophe, slow, correlated, moloch_out = final_outcomes(*row)
            if catastrophe:
                assert not (slow or correlated or moloch_out)

    def test_named_rows(self):
        # arrival, no safety path, project can and does pursue DSA
        out = final_outcomes(True, False, False, True, True, False, False, False, False, False)
        assert bool(out[1]) is True
        # aligned world, competition still burns value, no DSA
        out = final_outcomes(True, True, False, False, False, False, False, True, True, True)
        assert tuple(bool(x) for x in out) == (False, False, False, False, True)
