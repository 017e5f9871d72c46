"""Central finite-difference verification of analytic gradients."""

from __future__ import annotations

import numpy as np

from .losses import get_loss
from .network import Network


def loss_value(net: Network, X, y, loss_name):
    value, _ = get_loss(loss_name)(net.forward(X), y)
    return value


def analytic_gradients(net: Network, X, y, loss_name):
    _, grad = get_loss(loss_name)(net.forward(X, train=True), y)
    net.zero_grads()
    net.backward(grad)
    return [g.copy() for g in net.grads()]


def max_relative_error(net: Network, X, y, loss_name="mse", h=1e-6):
    """Largest relative disagreement between analytic and FD gradients.

    Relative error per element is ``|a - f| / max(|a| + |f|, 1e-8)``.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    analytic = analytic_gradients(net, X, y, loss_name)
    worst = 0.0
    for p, ga in zip(net.params(), analytic):
        flat = p.reshape(-1)
        gflat = ga.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            lp = loss_value(net, X, y, loss_name)
            flat[i] = orig - h
            lm = loss_value(net, X, y, loss_name)
            flat[i] = orig
            fd = (lp - lm) / (2.0 * h)
            denom = max(abs(gflat[i]) + abs(fd), 1e-8)
            worst = max(worst, abs(gflat[i] - fd) / denom)
    return worst
