"""Versioned JSON serialization for network weights."""

from __future__ import annotations

import json

import numpy as np

from .network import Network, NetworkSpec

FORMAT_VERSION = 1


def weights_to_document(net: Network) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "spec": net.spec.to_dict(),
        "params": [
            {"shape": list(p.shape), "values": p.reshape(-1).tolist()}
            for p in net.params()
        ],
    }


def network_from_document(doc: dict) -> Network:
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(
            f"unsupported weights format version: {doc.get('format_version')}"
        )
    net = Network(NetworkSpec.from_dict(doc["spec"]))
    weights = [
        np.asarray(p["values"], dtype=float).reshape(p["shape"])
        for p in doc["params"]
    ]
    net.set_weights(weights)
    return net


def save_weights(net: Network, path):
    with open(path, "w") as fh:
        json.dump(weights_to_document(net), fh)


def load_weights(path) -> Network:
    with open(path) as fh:
        return network_from_document(json.load(fh))
