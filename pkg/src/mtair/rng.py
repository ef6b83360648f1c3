"""Counter-based random number generation.

Every draw is a pure function of (seed, sample_index, node_index, draw
counter): there is no mutable global state, so samples can be evaluated
in any order, in chunks, or concurrently and still produce bit-identical
streams. The mixer absorbs each key component through a SplitMix64-style
finalizer over 64-bit state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

_PHI = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_SHIFT30 = np.uint64(30)
_SHIFT27 = np.uint64(27)
_SHIFT31 = np.uint64(31)
_SHIFT11 = np.uint64(11)
_INV53 = 1.0 / (1 << 53)


def _finalize(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _SHIFT30)) * _MIX1
    z = (z ^ (z >> _SHIFT27)) * _MIX2
    return z ^ (z >> _SHIFT31)


def _absorb(state: np.ndarray, word: np.ndarray | np.uint64) -> np.ndarray:
    return _finalize((state + _PHI) ^ word)


def raw_uint64(
    seed: int, sample_index: np.ndarray, node_index: int, counter: np.ndarray
) -> np.ndarray:
    """Hash (seed, sample, node, counter) to uint64, vectorized over samples."""
    sample_index = np.asarray(sample_index, dtype=np.uint64)
    counter = np.asarray(counter, dtype=np.uint64)
    state = np.full(
        np.broadcast(sample_index, counter).shape,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
        dtype=np.uint64,
    )
    node_key = np.uint64((node_index * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF)
    state = _finalize(state + _PHI)
    state = _absorb(state, sample_index * _PHI)
    state = _absorb(state, node_key)
    state = _absorb(state, counter * _MIX2)
    return state


def uniform_block(
    seed: int, sample_index: np.ndarray, node_index: int, counter: np.ndarray
) -> np.ndarray:
    """Uniform [0, 1) draws for an array of samples at a fixed draw counter."""
    bits = raw_uint64(seed, sample_index, node_index, counter)
    return (bits >> _SHIFT11).astype(np.float64) * _INV53


@dataclass
class BlockRng:
    """Draw source for one node column: a block of samples sharing a node index.

    Each call hands out the next draw-counter slot; per-sample counters may
    be advanced independently (`take_where`) so samples that skip a draw
    (e.g. unselected mixture branches) stay aligned with the scalar path.
    """

    seed: int
    node_index: int
    sample_indices: np.ndarray
    counters: np.ndarray = field(init=False)

    def __post_init__(self):
        self.sample_indices = np.asarray(self.sample_indices, dtype=np.uint64)
        self.counters = np.zeros(self.sample_indices.shape, dtype=np.uint64)

    def uniform(self) -> np.ndarray:
        u = uniform_block(self.seed, self.sample_indices, self.node_index, self.counters)
        self.counters = self.counters + np.uint64(1)
        return u

    def uniform_where(self, mask: np.ndarray) -> np.ndarray:
        """Draw only for masked samples; others keep their counter position."""
        u = uniform_block(self.seed, self.sample_indices, self.node_index, self.counters)
        self.counters = np.where(mask, self.counters + np.uint64(1), self.counters)
        return u

    def normal(self) -> np.ndarray:
        return ndtri(np.clip(self.uniform(), _INV53, 1.0 - 1e-16))


class RngStream:
    """Scalar draw stream for one (seed, sample_index, node_index) triple."""

    def __init__(self, seed: int, sample_index: int = 0, node_index: int = 0):
        self.seed = seed
        self.sample_index = sample_index
        self.node_index = node_index
        self._block = BlockRng(seed, node_index, np.array([sample_index], dtype=np.uint64))

    @property
    def counter(self) -> int:
        return int(self._block.counters[0])

    def uniform(self) -> float:
        return float(self._block.uniform()[0])

    def normal(self) -> float:
        return float(self._block.normal()[0])
