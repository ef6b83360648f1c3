import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


from mtair.dist import (
    Bernoulli,
    Categorical,
    LogNormal,
    Mixture,
    Normal,
    Point,
    Uniform,
    eval_cdf,
    lognormal_from_quantiles,
    sample,
    sample_block,
    validate_spec,
)
from mtair.errors import MtairError
from mtair.rng import BlockRng, RngStream

KS_99 = 1.628


def test_point_sampling_is_degenerate():
    assert sample(Point(3.0), RngStream(1)) == 3.0


def test_certain_bernoulli_is_true():
    assert sample(Bernoulli(1.0), RngStream(1)) is True
    assert sample(Bernoulli(0.0), RngStream(1)) is False


def test_lognormal_empirical_median_matches_analytic():
    # Tolerance band fixed up front: 2.341 * 3 / sqrt(n) around log10(median).
    n = 100_000
    block = BlockRng(seed=202, node_index=0, sample_indices=np.arange(n, dtype=np.uint64))
    draws = sample_block(LogNormal(median=1e33, sigma_log10=2.0), block)
    assert abs(np.median(np.log10(draws)) - 33.0) <= 2.341 * 3 / math.sqrt(n)


def test_invalid_specs_rejected():
    for bad in [
        Bernoulli(1.5),
        Uniform(2.0, 2.0),
        LogNormal(-1.0, 1.0),
        LogNormal(1.0, 0.0),
        Normal(0.0, 0.0),
        Categorical(("a", "b"), (0.5, 0.4)),
        Mixture(((0.5, Point(1.0)), (0.4, Point(2.0)))),
    ]:
        with pytest.raises(MtairError) as err:
            validate_spec(bad)
        assert err.value.code == "INVALID_SPEC"


def test_cdf_point_is_step_function():
    assert eval_cdf(Point(3.0), 2.0) == 0.0
    assert eval_cdf(Point(3.0), 3.0) == 1.0


def test_cdf_uniform_is_linear():
    assert eval_cdf(Uniform(0.0, 10.0), 2.5) == 0.25


def test_cdf_mixture_two_atoms():
    mix = Mixture(((0.5, Point(0.0)), (0.5, Point(10.0))))
    assert eval_cdf(mix, 5.0) == 0.5
    assert eval_cdf(mix, -1.0) == 0.0
    assert eval_cdf(mix, 10.0) == 1.0


def test_cdf_categorical_unsupported():
    with pytest.raises(MtairError) as err:
        eval_cdf(Categorical(("a", "b"), (0.5, 0.5)), 0.0)
    assert err.value.code == "UNSUPPORTED"


def ks_statistic(draws: np.ndarray, spec) -> float:
    """sup |F_n - F| with both CDFs right-continuous, valid for atoms."""
    n = draws.shape[0]
    xs = np.unique(draws)
    sorted_draws = np.sort(draws)
    ecdf_right = np.searchsorted(sorted_draws, xs, side="right") / n
    ecdf_left = np.searchsorted(sorted_draws, xs, side="left") / n
    f_right = np.array([eval_cdf(spec, float(x)) for x in xs])
    f_left = np.array([eval_cdf(spec, float(np.nextafter(x, -np.inf))) for x in xs])
    return float(max(np.abs(ecdf_right - f_right).max(), np.abs(ecdf_left - f_left).max()))


@pytest.mark.parametrize(
    "spec",
    [
        Bernoulli(0.3),
        Uniform(-2.0, 5.0),
        LogNormal(1e6, 1.5),
        Normal(4.0, 2.5),
        Mixture(((0.25, Uniform(0.0, 1.0)), (0.75, Normal(3.0, 1.0)))),
        Mixture(((0.5, LogNormal(10.0, 0.5)), (0.5, Point(7.0)))),
    ],
    ids=["bernoulli", "uniform", "lognormal", "normal", "mix_cont", "mix_atom"],
)
def test_empirical_cdf_within_ks_band_of_eval_cdf(spec):
    n = 100_000
    block = BlockRng(seed=99, node_index=1, sample_indices=np.arange(n, dtype=np.uint64))
    draws = np.asarray(sample_block(spec, block), dtype=np.float64)
    assert ks_statistic(draws, spec) <= KS_99 / math.sqrt(n)


def test_mixture_median_between_two_separated_components():
    # Two equal-weight components at 1e30 and 1e34: by symmetry the mixture
    # CDF is exactly one half at 1e32, and the empirical mass below 1e32
    # should match to binomial error.
    mix = Mixture(((0.5, LogNormal(1e30, 0.5)), (0.5, LogNormal(1e34, 0.5))))
    assert abs(eval_cdf(mix, 1e32) - 0.5) < 1e-12
    n = 50_000
    block = BlockRng(seed=5, node_index=0, sample_indices=np.arange(n, dtype=np.uint64))
    draws = sample_block(mix, block)
    below = float(np.mean(draws < 1e32))
    assert abs(below - 0.5) <= 3.0 * math.sqrt(0.25 / n)


def test_mixture_samples_component_first_counter_discipline():
    # Scalar and vectorized paths must consume draws identically.
    mix = Mixture(((0.3, Normal(0.0, 1.0)), (0.7, Uniform(10.0, 20.0))))
    block = BlockRng(seed=31, node_index=4, sample_indices=np.arange(64, dtype=np.uint64))
    vec = sample_block(mix, block)
    for i in [0, 7, 33, 63]:
        assert vec[i] == sample(mix, RngStream(31, i, 4))


def test_lognormal_from_quantiles_symmetric_median():
    spec = lognormal_from_quantiles(0.1, 1e30, 0.9, 1e36)
    assert spec.median == pytest.approx(1e33, rel=1e-9)
    # sigma = half-width in decades over the standard normal 90% point
    assert spec.sigma_log10 == pytest.approx(3.0 / 1.2815515655446004, rel=1e-9)


def test_lognormal_from_quantiles_round_trip():
    spec = lognormal_from_quantiles(0.1, 1e30, 0.9, 1e36)
    assert eval_cdf(spec, 1e30) == pytest.approx(0.1, abs=1e-9)
    assert eval_cdf(spec, 1e36) == pytest.approx(0.9, abs=1e-9)


def test_lognormal_from_quantiles_rejects_bad_order():
    with pytest.raises(MtairError) as err:
        lognormal_from_quantiles(0.25, 4.0, 0.75, 4.0)
    assert err.value.code == "BAD_QUANTILES"
    with pytest.raises(MtairError):
        lognormal_from_quantiles(0.75, 1.0, 0.25, 2.0)


@given(
    p_lo=st.floats(0.01, 0.45),
    p_hi=st.floats(0.55, 0.99),
    q_lo=st.floats(1e-3, 1e3),
    spread=st.floats(1.1, 1e6),
)
@settings(max_examples=60, deadline=None)
def test_lognormal_from_quantiles_hits_both_quantiles(p_lo, p_hi, q_lo, spread):
    q_hi = q_lo * spread
    spec = lognormal_from_quantiles(p_lo, q_lo, p_hi, q_hi)
    assert eval_cdf(spec, q_lo) == pytest.approx(p_lo, abs=1e-9)
    assert eval_cdf(spec, q_hi) == pytest.approx(p_hi, abs=1e-9)


@given(x=st.floats(-1e4, 1e4), y=st.floats(-1e4, 1e4))
@settings(max_examples=60, deadline=None)
def test_cdf_nondecreasing(x, y):
    spec = Mixture(((0.4, Normal(0.0, 10.0)), (0.6, Uniform(-50.0, 50.0))))
    lo, hi = sorted((x, y))
    assert eval_cdf(spec, lo) <= eval_cdf(spec, hi) + 1e-15
