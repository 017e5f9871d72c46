"""Loss functions returning ``(value, gradient w.r.t. predictions)``.

The MAE subgradient at zero residual is 0 by convention.
"""

from __future__ import annotations

import numpy as np

_LOG_FLOOR = 1e-12


def mae(pred, target):
    e = pred - target
    return float(np.mean(np.abs(e))), np.sign(e) / e.size


def mse(pred, target):
    e = pred - target
    return float(np.mean(e * e)), 2.0 * e / e.size


def cross_entropy(probs, onehot):
    """Cross entropy against one-hot targets on probability inputs."""
    p = np.clip(probs, _LOG_FLOOR, None)
    n = probs.shape[0]
    value = float(-np.sum(onehot * np.log(p)) / n)
    return value, -(onehot / p) / n


LOSSES = {"mae": mae, "mse": mse, "cross_entropy": cross_entropy}


def get_loss(name: str):
    if name not in LOSSES:
        raise ValueError(f"unknown loss {name!r}; choose from {sorted(LOSSES)}")
    return LOSSES[name]
