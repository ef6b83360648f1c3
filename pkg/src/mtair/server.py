"""HTTP facade over the engine for the explorer UI and other clients.

Stateless: the model is loaded once and never mutated; every request gets an
independent deterministic run, so equal requests return equal bodies and the
numbers match the CLI exactly for the same (model, samples, seed, overrides).
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel, Field

from . import __version__
from .errors import MtairError
from .io import (
    build_run_report,
    dumps_stable,
    kind_to_json,
    resolve_preset,
    sensitivity_rows_to_json,
)
from .engine import RunConfig, sensitivity_sweep
from .model import Alias, Chance, Classifier, Formula, ModelGraph

DEFAULT_MAX_SAMPLES = 200_000


class RunRequest(BaseModel):
    overrides: dict[str, object] = Field(default_factory=dict)
    preset: Optional[str] = None
    samples: int = 10_000
    seed: int = 0
    targets: Optional[list[str]] = None


class SensitivityRequest(BaseModel):
    target: str
    cruxes: Optional[list[str]] = None
    overrides: dict[str, object] = Field(default_factory=dict)
    preset: Optional[str] = None
    samples: int = 10_000
    seed: int = 0


def _node_kind_tag(node) -> str:
    if isinstance(node.kind, Chance):
        return "chance"
    if isinstance(node.kind, Formula):
        return "formula"
    if isinstance(node.kind, Classifier):
        return "classifier"
    if isinstance(node.kind, Alias):
        return "alias"
    return "unknown"


def model_structure(graph: ModelGraph) -> dict:
    nodes = []
    for node in graph.nodes.values():
        entry = {
            "id": node.id,
            "module": node.module,
            "kind": _node_kind_tag(node),
            "value_kind": kind_to_json(node.value_kind),
            "parents": list(node.parents),
            "doc": node.doc,
            "tags": sorted(node.tags),
            "paper_ref": node.paper_ref,
            "placeholder": node.placeholder,
        }
        if isinstance(node.kind, Alias):
            entry["target"] = node.kind.target
        nodes.append(entry)
    return {
        "title": graph.title,
        "horizon": [graph.horizon[0], graph.horizon[1]],
        "modules": [{"id": m.id, "parent": m.parent, "doc": m.doc} for m in graph.modules],
        "nodes": nodes,
        "outputs": list(graph.outputs),
        "cruxes": list(graph.cruxes),
        "presets": {name: dict(sorted(vals.items())) for name, vals in graph.presets.items()},
    }


def _stable_json(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=dumps_stable(payload) + "\n", media_type="application/json", status_code=status_code
    )


_ERROR_STATUS = {
    "NODE_NOT_FOUND": 404,
    "KIND_MISMATCH": 400,
    "TARGET_NOT_BOOL": 400,
    "INVALID_PARAMS": 400,
    "BAD_SHARE": 400,
    "DEGENERATE_PRIOR": 400,
}


class _SampleCapError(Exception):
    def __init__(self, samples: int):
        self.samples = samples


def create_app(graph: ModelGraph, max_samples: int = DEFAULT_MAX_SAMPLES) -> FastAPI:
    app = FastAPI(title="mtair", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    structure = model_structure(graph)
    structure_bytes = dumps_stable(structure) + "\n"

    @app.exception_handler(MtairError)
    async def on_engine_error(_, exc: MtairError):
        return JSONResponse(
            status_code=_ERROR_STATUS.get(exc.code, 400),
            content={"code": exc.code, "message": exc.message},
        )

    @app.get("/api/health")
    def health():
        return {"status": "ok", "engine_version": __version__}

    @app.get("/api/model")
    def model():
        return Response(content=structure_bytes, media_type="application/json")

    def _check_samples(samples: int):
        if not (1 <= samples <= max_samples):
            raise _SampleCapError(samples)

    @app.post("/api/run")
    def run(request: RunRequest):
        _check_samples(request.samples)
        if request.targets is not None:
            for target in request.targets:
                if target not in graph.nodes:
                    raise MtairError("NODE_NOT_FOUND", f"no node named {target!r}")
        report = build_run_report(
            graph,
            samples=request.samples,
            seed=request.seed,
            overrides=request.overrides,
            preset=request.preset,
            targets=request.targets,
        )
        return _stable_json(report.to_json())

    @app.post("/api/sensitivity")
    def sensitivity(request: SensitivityRequest):
        _check_samples(request.samples)
        if request.target not in graph.nodes:
            raise MtairError("NODE_NOT_FOUND", f"no node named {request.target!r}")
        merged = resolve_preset(graph, request.preset)
        merged.update(request.overrides)
        cruxes = request.cruxes if request.cruxes else list(graph.cruxes)
        rows = sensitivity_sweep(
            graph,
            request.target,
            cruxes,
            RunConfig(samples=request.samples, seed=request.seed, overrides=merged),
        )
        return _stable_json(
            {
                "target": request.target,
                "samples": request.samples,
                "seed": request.seed,
                "rows": sensitivity_rows_to_json(rows),
            }
        )

    @app.exception_handler(_SampleCapError)
    async def on_sample_cap(_, exc: _SampleCapError):
        return JSONResponse(
            status_code=422,
            content={
                "code": "SAMPLE_CAP",
                "message": f"samples must be in [1, {max_samples}], got {exc.samples}",
            },
        )

    return app
