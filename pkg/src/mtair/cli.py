"""Command-line front end: validate, run, sensitivity, serve.

Exit codes: 0 success, 1 diagnostics or run errors, 2 usage errors.
With --json, errors go to stderr as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import MtairError
from .io import (
    build_run_report,
    parse_model_document,
    resolve_preset,
    sensitivity_rows_to_json,
    serialize_report,
)
from .engine import RunConfig, sensitivity_sweep
from .model import BoolKind, CategoryKind, ModelGraph, SeriesKind, YearKind


def _load_graph(path: str, lenient: bool, json_mode: bool) -> ModelGraph | None:
    try:
        text = Path(path).read_bytes()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", json_mode, code="IO")
        return None
    graph, diags = parse_model_document(text, lenient=lenient)
    for diag in diags:
        if json_mode:
            print(
                json.dumps(
                    {
                        "code": diag.code,
                        "where": diag.node_id,
                        "severity": diag.severity,
                        "message": diag.message,
                    }
                ),
                file=sys.stderr,
            )
        else:
            print(diag, file=sys.stderr)
    return graph


def _fail(message: str, json_mode: bool, code: str = "ERROR") -> None:
    if json_mode:
        print(json.dumps({"code": code, "message": message}), file=sys.stderr)
    else:
        print(f"error: {message}", file=sys.stderr)


def parse_set_value(raw: str):
    """Literal for --set: bool, number, 'never', or a category label."""
    lowered = raw.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    if lowered == "never":
        return "never"
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    return raw


def _parse_overrides(pairs: list[str], json_mode: bool) -> dict | None:
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            _fail(f"--set expects id=value, got {pair!r}", json_mode, code="USAGE")
            return None
        key, _, raw = pair.partition("=")
        overrides[key.strip()] = parse_set_value(raw.strip())
    return overrides


def cmd_validate(args) -> int:
    graph = _load_graph(args.file, args.lenient, args.json)
    if graph is None:
        return 1
    print(f"ok: {len(graph.nodes)} nodes, {len(graph.outputs)} outputs, {len(graph.cruxes)} cruxes")
    return 0


def cmd_run(args) -> int:
    graph = _load_graph(args.file, args.lenient, args.json)
    if graph is None:
        return 1
    overrides = _parse_overrides(args.set or [], args.json)
    if overrides is None:
        return 2
    started = time.perf_counter()
    try:
        report = build_run_report(
            graph,
            samples=args.samples,
            seed=args.seed,
            overrides=overrides,
            preset=args.preset,
            targets=args.targets.split(",") if args.targets else None,
        )
    except MtairError as exc:
        _fail(exc.message, args.json, code=exc.code)
        return 1
    payload = serialize_report(report)
    if args.output:
        Path(args.output).write_bytes(payload)
    if args.json:
        sys.stdout.buffer.write(payload)
    else:
        for entry in report.outputs:
            if "probability_true" in entry:
                print(f"{entry['node']}: {entry['probability_true']:.5f} ± {entry['std_error']:.5f}")
            elif "category_probs" in entry:
                probs = ", ".join(f"{k}={v:.3f}" for k, v in entry["category_probs"].items())
                print(f"{entry['node']}: {probs}")
            elif "mean" in entry:
                mean = entry["mean"]
                shown = mean if isinstance(mean, str) or mean is None else f"{mean:.6g}"
                print(f"{entry['node']}: mean {shown}")
        if args.output:
            print(f"report written to {args.output}")
    print(f"samples={args.samples} seed={args.seed} elapsed={time.perf_counter()-started:.2f}s", file=sys.stderr)
    return 0


def cmd_sensitivity(args) -> int:
    graph = _load_graph(args.file, args.lenient, args.json)
    if graph is None:
        return 1
    overrides = _parse_overrides(args.set or [], args.json)
    if overrides is None:
        return 2
    if args.preset:
        try:
            merged = resolve_preset(graph, args.preset)
        except MtairError as exc:
            _fail(exc.message, args.json, code=exc.code)
            return 1
        merged.update(overrides)
        overrides = merged
    cruxes = args.cruxes.split(",") if args.cruxes else list(graph.cruxes)
    try:
        rows = sensitivity_sweep(
            graph, args.target, cruxes, RunConfig(samples=args.samples, seed=args.seed, overrides=overrides)
        )
    except MtairError as exc:
        _fail(exc.message, args.json, code=exc.code)
        return 1
    if args.json:
        for row in sensitivity_rows_to_json(rows):
            print(json.dumps(row))
    else:
        width = max((len(r.crux) for r in rows), default=10)
        print(f"{'crux':<{width}}  {'a':>6} {'b':>6}  {'P(t|a)':>8} {'P(t|b)':>8} {'delta':>9}")
        for row in rows:
            print(
                f"{row.crux:<{width}}  {str(row.value_a):>6} {str(row.value_b):>6}  "
                f"{row.p_a:>8.4f} {row.p_b:>8.4f} {row.delta:>+9.4f}"
            )
    return 0


def cmd_serve(args) -> int:
    graph = _load_graph(args.file, args.lenient, args.json)
    if graph is None:
        return 1
    import uvicorn

    from .server import create_app

    app = create_app(graph, max_samples=args.max_samples)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtair", description="Hypothesis-map Monte Carlo engine")
    parser.add_argument("--version", action="version", version=f"mtair {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="model document (.mtair.json)")
        p.add_argument("--lenient", action="store_true", help="downgrade unknown-field errors to warnings")
        p.add_argument("--json", action="store_true", help="machine-readable output and errors")

    p_validate = sub.add_parser("validate", help="check a model document")
    common(p_validate)
    p_validate.set_defaults(fn=cmd_validate)

    p_run = sub.add_parser("run", help="Monte Carlo run with optional interventions")
    common(p_run)
    p_run.add_argument("--samples", type=int, default=10_000)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--set", action="append", metavar="ID=VALUE", help="clamp a node (repeatable)")
    p_run.add_argument("--preset", help="named worldview preset from the document")
    p_run.add_argument("--targets", help="comma-separated node ids to report (default: model outputs)")
    p_run.add_argument("--output", help="write the full report JSON here")
    p_run.set_defaults(fn=cmd_run)

    p_sens = sub.add_parser("sensitivity", help="one-at-a-time crux sweep, tornado-ordered")
    common(p_sens)
    p_sens.add_argument("--target", required=True, help="Boolean node to measure")
    p_sens.add_argument("--cruxes", help="comma-separated crux ids (default: all declared cruxes)")
    p_sens.add_argument("--samples", type=int, default=10_000)
    p_sens.add_argument("--seed", type=int, default=0)
    p_sens.add_argument("--set", action="append", metavar="ID=VALUE")
    p_sens.add_argument("--preset")
    p_sens.set_defaults(fn=cmd_sensitivity)

    p_serve = sub.add_parser("serve", help="start the HTTP API")
    common(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8714)
    p_serve.add_argument("--max-samples", type=int, default=200_000)
    p_serve.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except MtairError as exc:
        _fail(exc.message, getattr(args, "json", False), code=exc.code)
        return 1


if __name__ == "__main__":
    sys.exit(main())
