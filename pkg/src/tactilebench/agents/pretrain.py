"""Behavior cloning on teleoperation demonstrations.

The classifier is three relu dense layers (64/32/16) with a softmax
output over the discrete action set, trained with cross entropy on the
one-hot demonstration actions. Its dense body then initializes a
Q-network whose linear head starts fresh: pretraining changes only the
initialization, never the Q-learning update itself.
"""

from __future__ import annotations

import warnings

import numpy as np

from ..errors import DegenerateDemosWarning
from ..learning.network import Network, NetworkSpec
from ..learning.training import TrainConfig, fit
from .dqn import q_network_spec


def bc_network_spec(obs_width: int, n_actions: int,
                    hidden=(64, 32, 16), seed: int = 0) -> NetworkSpec:
    layers = tuple(f"dense({h}, relu)" for h in hidden)
    layers += (f"dense({n_actions})", "softmax")
    return NetworkSpec(input_width=obs_width, layers=layers, seed=seed)


def demos_to_arrays(records):
    X = np.stack([r.obs for r in records])
    Y = np.stack([r.action_onehot for r in records]).astype(float)
    return X, Y


def pretrain_from_demos(records, n_actions: int, hidden=(64, 32, 16),
                        epochs: int = 60, learning_rate: float = 1e-3,
                        batch_size: int = 32, seed: int = 0):
    """Train the behavior-cloning classifier; returns (net, history)."""
    if not records:
        raise ValueError("demonstration set is empty")
    X, Y = demos_to_arrays(records)
    classes = np.unique(np.argmax(Y, axis=1))
    if len(classes) == 1:
        warnings.warn(
            "demonstrations contain a single action class",
            DegenerateDemosWarning,
        )
    net = Network(bc_network_spec(X.shape[1], n_actions, hidden, seed))
    config = TrainConfig(
        learning_rate=learning_rate,
        batch_size=batch_size,
        epochs=epochs,
        loss="cross_entropy",
        select_best_weights=False,
        seed=seed,
    )
    history = fit(net, X, Y, config)
    return net, history


def q_network_from_pretrained(bc_net: Network, obs_width: int,
                              n_actions: int, hidden=(64, 32, 16),
                              seed: int = 0, transfer_head: bool = True) -> Network:
    """Q-network initialized from the cloned classifier.

    The softmax activation is dropped; the dense stack including the
    logits layer transfers, so the initial greedy policy reproduces the
    cloned behavior and TD updates recalibrate the scale. With
    ``transfer_head=False`` only the body transfers and the linear head
    stays at its random initialization.
    """
    q_net = Network(q_network_spec(obs_width, n_actions, hidden, seed))
    n_copy = len(hidden) + (1 if transfer_head else 0)
    bc_params = bc_net.params()
    q_params = q_net.params()
    for i in range(2 * n_copy):  # W and b per transferred dense layer
        q_params[i][...] = bc_params[i]
    return q_net
