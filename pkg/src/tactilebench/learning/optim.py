"""Gradient-descent optimizers operating in-place on parameter lists."""

from __future__ import annotations

import numpy as np


class Sgd:
    def __init__(self, learning_rate=0.01):
        self.learning_rate = learning_rate

    def step(self, params, grads):
        for p, g in zip(params, grads):
            p -= self.learning_rate * g


class Adam:
    """Adam with the usual bias correction (b1=0.9, b2=0.999)."""

    def __init__(self, learning_rate=0.001, beta1=0.9, beta2=0.999, eps=1e-8):
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self._m = None
        self._v = None

    def step(self, params, grads):
        if self._m is None:
            self._m = [np.zeros_like(p) for p in params]
            self._v = [np.zeros_like(p) for p in params]
        self.t += 1
        b1c = 1.0 - self.beta1**self.t
        b2c = 1.0 - self.beta2**self.t
        for p, g, m, v in zip(params, grads, self._m, self._v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= self.learning_rate * (m / b1c) / (np.sqrt(v / b2c) + self.eps)


def make_optimizer(name: str, learning_rate: float):
    if name == "adam":
        return Adam(learning_rate)
    if name == "sgd":
        return Sgd(learning_rate)
    raise ValueError(f"unknown optimizer {name!r}")
