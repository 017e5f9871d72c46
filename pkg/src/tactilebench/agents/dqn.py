"""Deep Q-learning with experience replay and a periodic target network.

The update regresses Q(s, a) onto ``r + gamma * max_a' Q_target(s', a')``
with MSE, zero-bootstrapping terminal transitions; the target network is
copied from the online network on a fixed step cadence. Exploration is
epsilon-greedy with an exponential decay over global steps: a larger
decay constant (200 for training from scratch) keeps the agent exploring
longer than the pretrained setting (50).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NaNLossError
from ..learning.network import Network, NetworkSpec
from ..learning.optim import Adam
from .buffers import ReplayBuffer, Transition

EPSILON_START = 0.9
EPSILON_END = 0.05


@dataclass(frozen=True)
class DQNConfig:
    batch_size: int = 32
    update_every: int = 4
    target_update_every: int = 8
    gamma: float = 0.75
    epsilon_decay: float = 200.0
    replay_capacity: int = 10000
    learning_rate: float = 1e-3
    hidden: tuple = (64, 32, 16)

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")


def epsilon(t: int, decay_constant: float,
            start: float = EPSILON_START, end: float = EPSILON_END) -> float:
    """Exploration probability after ``t`` global steps."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return end + (start - end) * math.exp(-t / decay_constant)


def q_network_spec(obs_width: int, n_actions: int, hidden, seed: int) -> NetworkSpec:
    layers = tuple(f"dense({h}, relu)" for h in hidden) + (f"dense({n_actions})",)
    return NetworkSpec(input_width=obs_width, layers=layers, seed=seed)


def dqn_update(q_net: Network, target_net: Network, batch, gamma: float,
               optimizer) -> float:
    """One MSE regression step toward the bootstrapped targets."""
    next_q = target_net.forward(batch["next_obs"])
    targets = batch["reward"] + gamma * (1.0 - batch["done"]) * next_q.max(axis=1)
    q = q_net.forward(batch["obs"], train=True)
    m = len(targets)
    actions = batch["action"].astype(int)
    taken = q[np.arange(m), actions]
    err = taken - targets
    loss = float(np.mean(err * err))
    if not np.isfinite(loss):
        raise NaNLossError(f"DQN loss became non-finite ({loss})")
    grad = np.zeros_like(q)
    grad[np.arange(m), actions] = 2.0 * err / m
    q_net.zero_grads()
    q_net.backward(grad)
    optimizer.step(q_net.params(), q_net.grads())
    return loss


class DQNAgent:
    """Epsilon-greedy deep Q-learner over a discrete-action environment."""

    def __init__(self, obs_width: int, n_actions: int,
                 config: DQNConfig = DQNConfig(), seed: int = 0,
                 q_net: Network | None = None):
        self.config = config
        self.n_actions = n_actions
        self.rng = np.random.default_rng(seed)
        self.q_net = q_net or Network(
            q_network_spec(obs_width, n_actions, config.hidden, seed)
        )
        self.target_net = self.q_net.clone()
        self.replay = ReplayBuffer(config.replay_capacity)
        self.optimizer = Adam(config.learning_rate)
        self.global_step = 0
        self.updates = 0

    def act(self, obs, greedy: bool = False) -> int:
        eps = epsilon(self.global_step, self.config.epsilon_decay)
        if not greedy and self.rng.random() < eps:
            return int(self.rng.integers(self.n_actions))
        q = self.q_net.forward(np.asarray(obs, dtype=float).reshape(1, -1))
        return int(np.argmax(q[0]))

    def observe(self, transition: Transition):
        self.replay.push(transition)
        self.global_step += 1
        cfg = self.config
        loss = None
        if (len(self.replay) >= cfg.batch_size
                and self.global_step % cfg.update_every == 0):
            batch = self.replay.sample(cfg.batch_size, self.rng)
            loss = dqn_update(self.q_net, self.target_net, batch,
                              cfg.gamma, self.optimizer)
            self.updates += 1
        if self.global_step % cfg.target_update_every == 0:
            self.target_net.set_weights(self.q_net.get_weights())
        return loss

    def run_episode(self, env, max_steps: int | None = None):
        obs = env.reset()
        total, steps, done = 0.0, 0, False
        success = False
        while not done:
            action = self.act(obs)
            next_obs, reward, done, info = env.step(action)
            self.observe(Transition(obs, action, reward, next_obs, done))
            obs = next_obs
            total += reward
            steps += 1
            success = success or info.get("case") == "success"
            if max_steps is not None and steps >= max_steps:
                break
        return {"reward": total, "steps": steps, "success": success,
                "epsilon": epsilon(self.global_step, self.config.epsilon_decay)}
