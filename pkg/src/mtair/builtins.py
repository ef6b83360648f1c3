"""Registry of formula builtins evaluated by the Monte Carlo engine.

A builtin is a vectorized function over parent columns: Bool columns are
boolean arrays of shape (n,), Real/Year columns are float arrays (a year of
+inf means "never"), Category columns are integer label indexes, and Series
columns are (n, horizon-length) float arrays. Stochastic builtins draw from
the evaluation context's counter-based block so results stay deterministic.

Domain modules (hardware, timelines, takeoff) register additional builtins
on import; this module holds the generic catalog.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import MtairError, require
from .rng import BlockRng, RngStream

NEVER = math.inf


@dataclass
class EvalContext:
    n: int
    horizon: tuple[int, int]
    rng: BlockRng | None = None
    node_id: str = ""

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.horizon[0], self.horizon[1] + 1, dtype=np.float64)

    def draws(self) -> BlockRng:
        if self.rng is None:
            raise MtairError("BUILTIN_FAILURE", f"builtin at {self.node_id!r} needs a random stream")
        return self.rng


BuiltinFn = Callable[[Mapping, Sequence[np.ndarray], EvalContext], np.ndarray]


@dataclass
class Builtin:
    name: str
    min_arity: int
    max_arity: int | None
    fn: BuiltinFn
    needs_stream: bool = False
    result: str = "same"

    def check_arity(self, n_parents: int) -> str | None:
        if n_parents < self.min_arity:
            return f"{self.name} needs at least {self.min_arity} parents, got {n_parents}"
        if self.max_arity is not None and n_parents > self.max_arity:
            return f"{self.name} takes at most {self.max_arity} parents, got {n_parents}"
        return None


REGISTRY: dict[str, Builtin] = {}


def register(
    name: str,
    min_arity: int,
    max_arity: int | None = None,
    needs_stream: bool = False,
    result: str = "same",
):
    def wrap(fn: BuiltinFn) -> BuiltinFn:
        REGISTRY[name] = Builtin(
            name=name,
            min_arity=min_arity,
            max_arity=max_arity if max_arity is not None else min_arity,
            fn=fn,
            needs_stream=needs_stream,
            result=result,
        )
        return fn

    return wrap


def register_variadic(name: str, min_arity: int = 1, **kw):
    def wrap(fn: BuiltinFn) -> BuiltinFn:
        REGISTRY[name] = Builtin(name=name, min_arity=min_arity, max_arity=None, fn=fn, **kw)
        return fn

    return wrap


def get(name: str) -> Builtin | None:
    return REGISTRY.get(name)


def apply(
    builtin: Builtin, params: Mapping, args: Sequence[np.ndarray], ctx: EvalContext
) -> np.ndarray:
    arity_msg = builtin.check_arity(len(args))
    if arity_msg:
        raise MtairError("BAD_ARITY", arity_msg)
    return builtin.fn(params, args, ctx)


# --- scalar front end -----------------------------------------------------


def _wrap_scalar(value) -> np.ndarray:
    if isinstance(value, str):
        if value == "never":
            return np.array([NEVER], dtype=np.float64)
        raise MtairError("KIND_MISMATCH", f"cannot evaluate formula over string value {value!r}")
    if isinstance(value, (bool, np.bool_)):
        return np.array([bool(value)])
    if isinstance(value, (list, tuple, np.ndarray)):
        return np.asarray(value, dtype=np.float64).reshape(1, -1)
    return np.array([float(value)], dtype=np.float64)


def evaluate_formula(
    builtin: str,
    params: Mapping,
    parent_values: Sequence,
    stream: RngStream | None = None,
    horizon: tuple[int, int] = (2022, 2122),
):
    """Evaluate one builtin over scalar parent values (the per-sample view)."""
    spec = get(builtin)
    if spec is None:
        raise MtairError("UNKNOWN_BUILTIN", f"no builtin named {builtin!r}")
    args = [_wrap_scalar(v) for v in parent_values]
    ctx = EvalContext(n=1, horizon=horizon, rng=stream._block if stream else None, node_id=builtin)
    out = apply(spec, params, args, ctx)
    if out.ndim == 2:
        return np.asarray(out[0], dtype=np.float64)
    value = out[0]
    if isinstance(value, np.bool_):
        return bool(value)
    return float(value)


# --- generic catalog ------------------------------------------------------


@register_variadic("AND", min_arity=1, result="bool")
def _and(params, args, ctx):
    return np.logical_and.reduce(np.broadcast_arrays(*args)) if len(args) > 1 else args[0].astype(bool)


@register_variadic("OR", min_arity=1, result="bool")
def _or(params, args, ctx):
    return np.logical_or.reduce(np.broadcast_arrays(*args)) if len(args) > 1 else args[0].astype(bool)


@register("NOT", 1, result="bool")
def _not(params, args, ctx):
    return np.logical_not(args[0])


@register_variadic("SUM", min_arity=1, result="real")
def _sum(params, args, ctx):
    total = args[0].astype(np.float64)
    for a in args[1:]:
        total = total + a
    return total


@register_variadic("PRODUCT", min_arity=1, result="real")
def _product(params, args, ctx):
    total = args[0].astype(np.float64)
    for a in args[1:]:
        total = total * a
    return total


@register("DIV", 2, result="real")
def _div(params, args, ctx):
    return args[0] / args[1]


@register_variadic("WEIGHTED_SUM", min_arity=1, result="real")
def _weighted_sum(params, args, ctx):
    weights = params.get("weights")
    require(weights is not None, "BAD_ARITY", "WEIGHTED_SUM needs a 'weights' parameter")
    require(
        len(weights) == len(args),
        "BAD_ARITY",
        f"WEIGHTED_SUM got {len(args)} parents but {len(weights)} weights",
    )
    total = float(weights[0]) * args[0].astype(np.float64)
    for w, a in zip(weights[1:], args[1:]):
        total = total + float(w) * a
    return total


@register_variadic("MIN_YEAR", min_arity=1, result="year")
def _min_year(params, args, ctx):
    out = args[0].astype(np.float64)
    for a in args[1:]:
        out = np.minimum(out, a)
    return out


@register_variadic("MAX_YEAR", min_arity=1, result="year")
def _max_year(params, args, ctx):
    out = args[0].astype(np.float64)
    for a in args[1:]:
        out = np.maximum(out, a)
    return out


@register("FIRST_YEAR_GE", 1, 2, result="year")
def _first_year_ge(params, args, ctx):
    series = args[0]
    if len(args) == 2:
        threshold = args[1]
        if threshold.ndim == 1:
            threshold = threshold[:, None]
    else:
        threshold = float(params["threshold"])
    years = ctx.years
    hit = series >= threshold
    any_hit = hit.any(axis=1)
    first = hit.argmax(axis=1)
    return np.where(any_hit, years[first], NEVER)


@register_variadic("LINEAR_MIX", min_arity=1, result="series")
def _linear_mix(params, args, ctx):
    weights = params.get("weights", [1.0 / len(args)] * len(args))
    require(
        len(weights) == len(args),
        "BAD_ARITY",
        f"LINEAR_MIX got {len(args)} parents but {len(weights)} weights",
    )
    total = float(weights[0]) * args[0].astype(np.float64)
    for w, a in zip(weights[1:], args[1:]):
        total = total + float(w) * a
    return total


@register("IF_ELSE", 3, result="same")
def _if_else(params, args, ctx):
    cond, a, b = args
    if a.ndim == 2 and cond.ndim == 1:
        cond = cond[:, None]
    return np.where(cond, a, b)


@register("CLAMP_MIN", 1, result="real")
def _clamp_min(params, args, ctx):
    return np.maximum(args[0], float(params["value"]))


@register("CLAMP_MAX", 1, result="real")
def _clamp_max(params, args, ctx):
    return np.minimum(args[0], float(params["value"]))


@register("SCALE", 1, result="real")
def _scale(params, args, ctx):
    return args[0] * float(params["factor"])


@register("CONST", 0, result="real")
def _const(params, args, ctx):
    value = params["value"]
    if isinstance(value, bool):
        return np.full(ctx.n, value, dtype=bool)
    if isinstance(value, (list, tuple)):
        return np.tile(np.asarray(value, dtype=np.float64), (ctx.n, 1))
    return np.full(ctx.n, float(value), dtype=np.float64)


@register("GE", 2, result="bool")
def _ge(params, args, ctx):
    return args[0] >= args[1]


@register("DIFF", 2, result="real")
def _diff(params, args, ctx):
    return args[0] - args[1]


@register("GATE_YEAR", 2, result="year")
def _gate_year(params, args, ctx):
    """Parents: gate (bool), year. Closed gate means never."""
    gate, year = args
    return np.where(gate, year, NEVER)


@register("EQ_LABEL", 1, result="bool")
def _eq_label(params, args, ctx):
    index = int(params["index"])
    return args[0].astype(np.int64) == index


@register("YEAR_ARRIVES", 1, result="bool")
def _year_arrives(params, args, ctx):
    return args[0] <= ctx.horizon[1]


@register_variadic("SELECT", min_arity=2, result="same")
def _select(params, args, ctx):
    selector = args[0].astype(np.int64)
    choices = args[1:]
    require(
        int(selector.max(initial=0)) < len(choices),
        "BUILTIN_FAILURE",
        "SELECT index exceeds choice count",
    )
    out = np.array(choices[0], copy=True)
    for idx in range(1, len(choices)):
        mask = selector == idx
        if out.ndim == 2:
            out[mask, :] = choices[idx][mask, :]
        else:
            out[mask] = choices[idx][mask]
    return out


def _combo_key(values: Sequence[np.ndarray], row: int) -> str:
    parts = []
    for col in values:
        v = col[row]
        if isinstance(v, np.bool_):
            parts.append("t" if v else "f")
        else:
            parts.append(str(int(v)))
    return ",".join(parts)


def unique_combo_rows(args: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Deduplicate parent-value combinations across samples.

    Returns (first_row_indexes, inverse) such that row i's combination equals
    the combination at first_row_indexes[inverse[i]]. Lets table lookups run
    once per distinct combination instead of once per sample.
    """
    packed = np.zeros(args[0].shape[0], dtype=np.int64)
    for col in args:
        values = col.astype(np.int64)
        radix = int(values.max(initial=0)) + 2
        packed = packed * radix + (values + 1)
    _, first, inverse = np.unique(packed, return_index=True, return_inverse=True)
    return first, inverse


@register_variadic("CPT_BOOL", min_arity=0, needs_stream=True, result="bool")
def _cpt_bool(params, args, ctx):
    """Bernoulli with probability looked up from a conditional table.

    Table keys join parent values with commas: booleans as t/f, categories as
    label indexes; "*" wildcards any single position.
    """
    table: Mapping[str, float] = params["table"]
    u = ctx.draws().uniform()
    if not args:
        p = float(table.get("", table.get("*", 0.5)))
        return u < p
    first, inverse = unique_combo_rows(args)
    unique_p = np.array(
        [_lookup_combo(table, _combo_key(args, int(row)), ctx.node_id) for row in first],
        dtype=np.float64,
    )
    return u < unique_p[inverse]


def _lookup_combo(table: Mapping[str, float], key: str, node_id: str) -> float:
    if key in table:
        return float(table[key])
    parts = key.split(",")
    for pattern, value in table.items():
        pparts = pattern.split(",")
        if len(pparts) == len(parts) and all(p == "*" or p == q for p, q in zip(pparts, parts)):
            return float(value)
    raise MtairError("BAD_TABLE", f"no table row for combination {key!r} at {node_id!r}")


@register("BERNOULLI_GATED", 2, needs_stream=True, result="bool")
def _bernoulli_gated(params, args, ctx):
    p, gate = args
    u = ctx.draws().uniform()
    return gate & (u < p)


@register_variadic("READY_YEAR", min_arity=0, needs_stream=True, result="year")
def _ready_year(params, args, ctx):
    """Geometric first-success year: a base per-year hazard, multiplied by a
    declared factor for every true Boolean parent, starting at the horizon.
    """
    hazard = np.full(ctx.n, float(params["base_hazard"]), dtype=np.float64)
    factors = params.get("factors", [])
    require(
        len(factors) == len(args),
        "BAD_ARITY",
        f"READY_YEAR got {len(args)} parents but {len(factors)} factors",
    )
    for factor, flag in zip(factors, args):
        hazard = np.where(flag, hazard * float(factor), hazard)
    hazard = np.clip(hazard, 0.0, 1.0)
    u = ctx.draws().uniform()
    start = float(params.get("start_year", ctx.horizon[0]))
    with np.errstate(divide="ignore", invalid="ignore"):
        trials = np.ceil(np.log1p(-u) / np.log1p(-hazard))
    trials = np.where(hazard >= 1.0, 1.0, trials)
    year = np.where(hazard <= 0.0, NEVER, start - 1.0 + trials)
    return np.where(year > ctx.horizon[1], NEVER, year)
