"""Distribution specifications, sampling, and CDF evaluation.

Uncertain quantities in the hypothesis map span orders of magnitude, so the
lognormal is parameterized by (median, sigma in log10 units) rather than the
usual log-mean/log-sd. Mixtures sample component-first, then value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import MtairError, require
from .rng import BlockRng, RngStream

_WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class Point:
    value: float | bool


@dataclass(frozen=True)
class Bernoulli:
    p: float


@dataclass(frozen=True)
class Categorical:
    labels: tuple[str, ...]
    probs: tuple[float, ...]


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float


@dataclass(frozen=True)
class LogNormal:
    median: float
    sigma_log10: float


@dataclass(frozen=True)
class Normal:
    mean: float
    sd: float


@dataclass(frozen=True)
class Mixture:
    components: tuple[tuple[float, "DistributionSpec"], ...]


DistributionSpec = Union[Point, Bernoulli, Categorical, Uniform, LogNormal, Normal, Mixture]


def validate_spec(spec: DistributionSpec) -> None:
    """Raise INVALID_SPEC unless the spec's parameters are admissible."""
    if isinstance(spec, Point):
        return
    if isinstance(spec, Bernoulli):
        require(0.0 <= spec.p <= 1.0, "INVALID_SPEC", f"Bernoulli p={spec.p} outside [0,1]")
    elif isinstance(spec, Categorical):
        require(len(spec.labels) > 0, "INVALID_SPEC", "categorical needs at least one label")
        require(
            len(spec.labels) == len(set(spec.labels)),
            "INVALID_SPEC",
            "categorical labels must be unique",
        )
        require(
            len(spec.labels) == len(spec.probs),
            "INVALID_SPEC",
            "categorical labels and probs differ in length",
        )
        require(
            all(0.0 <= p <= 1.0 for p in spec.probs),
            "INVALID_SPEC",
            "categorical probs outside [0,1]",
        )
        require(
            abs(sum(spec.probs) - 1.0) <= _WEIGHT_TOL,
            "INVALID_SPEC",
            f"categorical probs sum to {sum(spec.probs)}, not 1",
        )
    elif isinstance(spec, Uniform):
        require(spec.lo < spec.hi, "INVALID_SPEC", f"uniform needs lo < hi, got [{spec.lo}, {spec.hi}]")
    elif isinstance(spec, LogNormal):
        require(spec.median > 0, "INVALID_SPEC", f"lognormal median must be > 0, got {spec.median}")
        require(
            spec.sigma_log10 > 0,
            "INVALID_SPEC",
            f"lognormal sigma_log10 must be > 0, got {spec.sigma_log10}",
        )
    elif isinstance(spec, Normal):
        require(spec.sd > 0, "INVALID_SPEC", f"normal sd must be > 0, got {spec.sd}")
    elif isinstance(spec, Mixture):
        require(len(spec.components) > 0, "INVALID_SPEC", "mixture needs at least one component")
        weights = [w for w, _ in spec.components]
        require(all(w >= 0 for w in weights), "INVALID_SPEC", "mixture weights must be >= 0")
        require(
            abs(sum(weights) - 1.0) <= _WEIGHT_TOL,
            "INVALID_SPEC",
            f"mixture weights sum to {sum(weights)}, not 1",
        )
        for _, child in spec.components:
            validate_spec(child)
    else:
        raise MtairError("INVALID_SPEC", f"unknown distribution {type(spec).__name__}")


def sample_block(spec: DistributionSpec, block: BlockRng, mask: np.ndarray | None = None) -> np.ndarray:
    """Draw one value per sample in the block; vectorized, counter-exact.

    `mask` restricts which samples consume draws (mixture branches); masked-out
    positions return an arbitrary value the caller must overwrite.
    """
    n = block.sample_indices.shape[0]
    if mask is None:
        mask = np.ones(n, dtype=bool)
    if isinstance(spec, Point):
        if isinstance(spec.value, bool):
            return np.full(n, spec.value, dtype=bool)
        return np.full(n, float(spec.value), dtype=np.float64)
    if isinstance(spec, Bernoulli):
        return block.uniform_where(mask) < spec.p
    if isinstance(spec, Categorical):
        u = block.uniform_where(mask)
        cum = np.cumsum(np.asarray(spec.probs, dtype=np.float64))
        return np.minimum(np.searchsorted(cum, u, side="right"), len(spec.labels) - 1).astype(np.int64)
    if isinstance(spec, Uniform):
        return spec.lo + block.uniform_where(mask) * (spec.hi - spec.lo)
    if isinstance(spec, LogNormal):
        z = ndtri(np.clip(block.uniform_where(mask), 1e-16, 1.0 - 1e-16))
        return spec.median * np.power(10.0, spec.sigma_log10 * z)
    if isinstance(spec, Normal):
        z = ndtri(np.clip(block.uniform_where(mask), 1e-16, 1.0 - 1e-16))
        return spec.mean + spec.sd * z
    if isinstance(spec, Mixture):
        u = block.uniform_where(mask)
        weights = np.cumsum(np.asarray([w for w, _ in spec.components], dtype=np.float64))
        choice = np.minimum(np.searchsorted(weights, u, side="right"), len(spec.components) - 1)
        out = np.zeros(n, dtype=np.float64)
        for idx, (_, child) in enumerate(spec.components):
            child_mask = mask & (choice == idx)
            vals = sample_block(child, block, child_mask)
            out = np.where(child_mask, vals.astype(np.float64), out)
        return out
    raise MtairError("INVALID_SPEC", f"unknown distribution {type(spec).__name__}")


def sample(spec: DistributionSpec, stream: RngStream):
    """Scalar draw from the spec; value lies in the spec's support."""
    validate_spec(spec)
    out = sample_block(spec, stream._block)
    value = out[0]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(spec, Categorical):
        return spec.labels[int(value)]
    return float(value)


def eval_cdf(spec: DistributionSpec, x: float) -> float:
    """P(X <= x). Categorical labels have no order, so they are rejected."""
    validate_spec(spec)
    if isinstance(spec, Point):
        v = 1.0 if spec.value is True else (0.0 if spec.value is False else float(spec.value))
        return 1.0 if x >= v else 0.0
    if isinstance(spec, Bernoulli):
        if x < 0.0:
            return 0.0
        if x < 1.0:
            return 1.0 - spec.p
        return 1.0
    if isinstance(spec, Categorical):
        raise MtairError("UNSUPPORTED", "CDF undefined for categorical over unordered labels")
    if isinstance(spec, Uniform):
        return min(1.0, max(0.0, (x - spec.lo) / (spec.hi - spec.lo)))
    if isinstance(spec, LogNormal):
        if x <= 0.0:
            return 0.0
        z = (math.log10(x) - math.log10(spec.median)) / spec.sigma_log10
        return float(ndtr(z))
    if isinstance(spec, Normal):
        return float(ndtr((x - spec.mean) / spec.sd))
    if isinstance(spec, Mixture):
        return float(sum(w * eval_cdf(child, x) for w, child in spec.components))
    raise MtairError("INVALID_SPEC", f"unknown distribution {type(spec).__name__}")


def lognormal_from_quantiles(p_lo: float, q_lo: float, p_hi: float, q_hi: float) -> LogNormal:
    """Fit a LogNormal hitting two quantiles: CDF(q_lo)=p_lo and CDF(q_hi)=p_hi.

    Symmetric probabilities give median = geometric mean of (q_lo, q_hi).
    """
    require(0.0 < p_lo < p_hi < 1.0, "BAD_QUANTILES", f"need 0 < p_lo < p_hi < 1, got ({p_lo}, {p_hi})")
    require(0.0 < q_lo < q_hi, "BAD_QUANTILES", f"need 0 < q_lo < q_hi, got ({q_lo}, {q_hi})")
    z_lo = float(ndtri(p_lo))
    z_hi = float(ndtri(p_hi))
    sigma = (math.log10(q_hi) - math.log10(q_lo)) / (z_hi - z_lo)
    median = 10.0 ** (math.log10(q_lo) - z_lo * sigma)
    return LogNormal(median=median, sigma_log10=sigma)
