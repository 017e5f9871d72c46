"""Mini-batch training loop with lowest-validation-loss weight selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NaNLossError
from .losses import get_loss
from .network import Network
from .optim import make_optimizer


@dataclass
class TrainConfig:
    learning_rate: float = 2.5e-4
    batch_size: int = 128
    epochs: int = 400
    loss: str = "mae"
    optimizer: str = "adam"
    select_best_weights: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        get_loss(self.loss)


def backward_and_step(net: Network, batch_x, batch_y, loss_name, optimizer):
    """One gradient step; raises NaNLossError on a non-finite loss."""
    loss_fn = get_loss(loss_name)
    pred = net.forward(batch_x, train=True)
    value, grad = loss_fn(pred, batch_y)
    if not np.isfinite(value):
        raise NaNLossError(f"loss became non-finite ({value})")
    net.zero_grads()
    net.backward(grad)
    optimizer.step(net.params(), net.grads())
    return value


def evaluate_loss(net: Network, X, y, loss_name, batch_size=4096):
    loss_fn = get_loss(loss_name)
    total, n = 0.0, 0
    for start in range(0, len(X), batch_size):
        xb = X[start : start + batch_size]
        yb = y[start : start + batch_size]
        value, _ = loss_fn(net.forward(xb), yb)
        total += value * len(xb)
        n += len(xb)
    return total / max(n, 1)


def fit(net: Network, X, y, config: TrainConfig, X_val=None, y_val=None):
    """Train in place; returns a history dict.

    When validation data is supplied and ``select_best_weights`` is on, the
    network ends up with the weights from the epoch of the lowest
    validation loss. A NaN loss aborts the epoch and stops training with
    the abort recorded in the history.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    rng = np.random.default_rng(config.seed)
    optimizer = make_optimizer(config.optimizer, config.learning_rate)
    history = {"train_loss": [], "val_loss": [], "best_epoch": None,
               "aborted_epoch": None}
    best_val = np.inf
    best_weights = None

    for epoch in range(config.epochs):
        order = rng.permutation(len(X))
        epoch_loss, seen = 0.0, 0
        try:
            for start in range(0, len(X), config.batch_size):
                idx = order[start : start + config.batch_size]
                value = backward_and_step(net, X[idx], y[idx], config.loss, optimizer)
                epoch_loss += value * len(idx)
                seen += len(idx)
        except NaNLossError:
            history["aborted_epoch"] = epoch
            break
        history["train_loss"].append(epoch_loss / max(seen, 1))
        if X_val is not None and len(X_val):
            val = evaluate_loss(net, X_val, y_val, config.loss)
            history["val_loss"].append(val)
            if val < best_val:
                best_val = val
                history["best_epoch"] = epoch
                if config.select_best_weights:
                    best_weights = net.get_weights()

    if best_weights is not None:
        net.set_weights(best_weights)
    return history
