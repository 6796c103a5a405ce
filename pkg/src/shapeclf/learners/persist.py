"""Versioned JSON persistence for trained models.

Floats are written with ``repr`` (the ``json`` default), which round-trips
every double exactly, so a reloaded model predicts bit-identically.
"""

from __future__ import annotations

import json

import numpy as np

from .base import Model
from .bayes import NaiveBayesModel
from .ensemble import BaggingModel, EnsembleModel, ForestModel
from .tree import TreeModel
from .vote import VoteModel, ZeroRModel

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    pass


def _tree_payload(tree: TreeModel) -> dict:
    nodes = []
    for i in range(tree.n_nodes):
        if tree.feature[i] < 0:
            nodes.append({"counts": tree.counts[i].tolist()})
        else:
            nodes.append({"feature": int(tree.feature[i]), "threshold": float(tree.threshold[i])})
    return {"params": tree.params, "nodes": nodes}


def _tree_from_payload(payload, n_features, classes) -> TreeModel:
    nodes = payload["nodes"]
    n = len(nodes)
    feature = np.full(n, -1, dtype=np.int64)
    threshold = np.zeros(n)
    right = np.full(n, -1, dtype=np.int64)
    counts = np.zeros((n, len(classes)), dtype=np.int64)
    pending: list[int] = []
    # in preorder, the node after a leaf is the right child of the latest open split
    for i, node in enumerate(nodes):
        if i > 0 and feature[i - 1] < 0:
            if not pending:
                raise ModelFormatError("malformed preorder tree: dangling node")
            right[pending.pop()] = i
        if "counts" in node:
            counts[i] = node["counts"]
        else:
            feature[i] = node["feature"]
            threshold[i] = node["threshold"]
            pending.append(i)
    if pending:
        raise ModelFormatError("malformed preorder tree: split without right child")
    return TreeModel(n_features, classes, feature, threshold, right, counts, payload.get("params"))


def model_to_dict(model: Model) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": model.kind,
        "classes": list(model.classes),
        "n_features": model.n_features,
        "params": dict(getattr(model, "params", {})),
        "seed": getattr(model, "seed", None),
    }
    if isinstance(model, TreeModel):
        doc["payload"] = _tree_payload(model)
    elif isinstance(model, EnsembleModel):
        doc["payload"] = {"members": [_tree_payload(m) for m in model.members]}
    elif isinstance(model, NaiveBayesModel):
        doc["payload"] = {
            "bin_edges": [e.tolist() for e in model.bin_edges],
            "priors": model.priors.tolist(),
            "tables": [t.tolist() for t in model.tables],
        }
    elif isinstance(model, ZeroRModel):
        doc["payload"] = {"distribution": model.distribution.tolist()}
    elif isinstance(model, VoteModel):
        doc["payload"] = {
            "members": [model_to_dict(m) for m in model.members],
            "fallback": model_to_dict(model.fallback),
        }
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return doc


def model_from_dict(doc: dict) -> Model:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format_version {version!r}")
    try:
        kind = doc["kind"]
        classes = tuple(doc["classes"])
        d = int(doc["n_features"])
        params = doc.get("params", {})
        payload = doc["payload"]
        if kind == "tree":
            return _tree_from_payload(payload, d, classes)
        if kind in ("bagging", "forest"):
            members = [_tree_from_payload(p, d, classes) for p in payload["members"]]
            cls = BaggingModel if kind == "bagging" else ForestModel
            return cls(members, params, doc.get("seed"))
        if kind == "bayesnet":
            return NaiveBayesModel(d, classes, payload["bin_edges"], payload["priors"],
                                   payload["tables"], params["alpha"], params["bins"])
        if kind == "zeror":
            return ZeroRModel(d, classes, payload["distribution"])
        if kind == "vote":
            members = [model_from_dict(m) for m in payload["members"]]
            return VoteModel(members, params["rule"], model_from_dict(payload["fallback"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"malformed model document: {exc}") from None
    raise ModelFormatError(f"unknown model kind {kind!r}")


def dumps_model(model: Model) -> str:
    return json.dumps(model_to_dict(model), separators=(",", ":")) + "\n"


def loads_model(text: str) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    return model_from_dict(doc)
