import numpy as np
from scipy.stats import kstest

from mtair.rng import BlockRng, RngStream, uniform_block

KS_99 = 1.628  # one-sample Kolmogorov-Smirnov critical value at alpha = 0.01


def test_draws_are_pure_functions_of_key():
    a = RngStream(seed=42, sample_index=3, node_index=9)
    b = RngStream(seed=42, sample_index=3, node_index=9)
    assert [a.uniform() for _ in range(10)] == [b.uniform() for _ in range(10)]


def test_distinct_keys_give_distinct_streams():
    base = [RngStream(1, 0, 0).uniform() for _ in range(4)]
    assert [RngStream(2, 0, 0).uniform() for _ in range(4)] != base
    assert [RngStream(1, 1, 0).uniform() for _ in range(4)] != base
    assert [RngStream(1, 0, 1).uniform() for _ in range(4)] != base


def test_block_matches_scalar_stream():
    block = BlockRng(seed=7, node_index=5, sample_indices=np.arange(8, dtype=np.uint64))
    col = block.uniform()
    for i in range(8):
        assert col[i] == RngStream(7, i, 5).uniform()


def test_vectorized_independent_of_chunking():
    whole = uniform_block(11, np.arange(100, dtype=np.uint64), 2, np.zeros(100, dtype=np.uint64))
    first = uniform_block(11, np.arange(60, dtype=np.uint64), 2, np.zeros(60, dtype=np.uint64))
    rest = uniform_block(11, np.arange(60, 100, dtype=np.uint64), 2, np.zeros(40, dtype=np.uint64))
    assert np.array_equal(whole, np.concatenate([first, rest]))


def test_uniformity_within_ks_band():
    n = 100_000
    u = uniform_block(1234, np.arange(n, dtype=np.uint64), 17, np.zeros(n, dtype=np.uint64))
    assert 0.0 <= u.min() and u.max() < 1.0
    stat = kstest(u, "uniform").statistic
    assert stat <= KS_99 / np.sqrt(n)


def test_counter_advances_independently_across_nodes():
    s1 = RngStream(5, 2, 1)
    s2 = RngStream(5, 2, 2)
    assert s1.uniform() != s2.uniform()
    assert s1.counter == 1 and s2.counter == 1
