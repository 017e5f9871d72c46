"""Network assembly from compact layer descriptors.

A spec is an ordered list of descriptor strings::

    ["lstm(64)", "layernorm", "lstm(32)", "layernorm",
     "dense(16, relu)", "dense(1)"]

The first dense (or softmax) layer after a recurrent stretch implicitly
consumes the final hidden state, so sequence inputs of any window length
work with the same spec.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeMismatchError
from .layers import Dense, LastStep, LayerNorm, Lstm, Softmax

_DESC_RE = re.compile(r"^\s*(\w+)\s*(?:\((.*)\))?\s*$")


@dataclass(frozen=True)
class NetworkSpec:
    input_width: int
    layers: tuple = field(default_factory=tuple)
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    def to_dict(self):
        return {
            "input_width": self.input_width,
            "layers": list(self.layers),
            "seed": self.seed,
        }

    @staticmethod
    def from_dict(d):
        return NetworkSpec(d["input_width"], tuple(d["layers"]), d.get("seed", 0))


def _parse(desc: str):
    m = _DESC_RE.match(desc)
    if not m:
        raise ValueError(f"bad layer descriptor {desc!r}")
    kind = m.group(1)
    args = [a.strip() for a in (m.group(2) or "").split(",") if a.strip()]
    return kind, args


class Network:
    """An ordered layer stack with a single forward/backward pipeline."""

    def __init__(self, spec: NetworkSpec):
        self.spec = spec
        rng = np.random.default_rng(spec.seed)
        layers = []
        width = spec.input_width
        sequential = None  # unknown until first input; set by descriptors
        for desc in spec.layers:
            kind, args = _parse(desc)
            if kind == "lstm":
                units = int(args[0])
                layers.append(Lstm(width, units, rng=rng))
                width, sequential = units, True
            elif kind == "dense":
                units = int(args[0])
                activation = args[1] if len(args) > 1 else "linear"
                if sequential:
                    layers.append(LastStep())
                    sequential = False
                layers.append(Dense(width, units, activation, rng=rng))
                width = units
            elif kind == "layernorm":
                layers.append(LayerNorm(width))
            elif kind == "softmax":
                if sequential:
                    layers.append(LastStep())
                    sequential = False
                layers.append(Softmax())
            else:
                raise ValueError(f"unknown layer kind {kind!r}")
        self.layers = layers
        self.output_width = width

    def forward(self, x, train=False):
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.spec.input_width:
            raise ShapeMismatchError(
                f"network expects input width {self.spec.input_width}, "
                f"got {x.shape[-1]}"
            )
        for layer in self.layers:
            x = layer.forward(x, train=train)
        return x

    def backward(self, grad):
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def params(self):
        return [p for layer in self.layers for p in layer.params()]

    def grads(self):
        return [g for layer in self.layers for g in layer.grads()]

    def zero_grads(self):
        for layer in self.layers:
            layer.zero_grads()

    def get_weights(self):
        return [p.copy() for p in self.params()]

    def set_weights(self, weights):
        params = self.params()
        if len(weights) != len(params):
            raise ShapeMismatchError("weight list does not match parameter count")
        for p, w in zip(params, weights):
            w = np.asarray(w, dtype=float)
            if p.shape != w.shape:
                raise ShapeMismatchError(
                    f"weight shape {w.shape} does not match parameter {p.shape}"
                )
            p[...] = w

    def clone(self) -> "Network":
        other = Network(self.spec)
        other.set_weights(self.get_weights())
        return other
