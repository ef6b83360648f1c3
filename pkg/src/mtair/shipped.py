"""Access to the shipped model document bundled with the package."""

from __future__ import annotations

from importlib import resources

from .errors import MtairError
from .io import parse_model_document
from .model import ModelGraph

SHIPPED_FILENAME = "mtair_model.mtair.json"


def shipped_document_text() -> str:
    return resources.files("mtair").joinpath(f"data/{SHIPPED_FILENAME}").read_text("utf-8")


def load_shipped_model() -> ModelGraph:
    graph, diags = parse_model_document(shipped_document_text())
    if graph is None:
        raise MtairError("SYNTAX", "shipped model failed to parse: " + "; ".join(map(str, diags)))
    return graph
