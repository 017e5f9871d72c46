"""Experience containers for the on- and off-policy learners."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Transition:
    obs: np.ndarray
    action: object
    reward: float
    next_obs: np.ndarray
    done: bool

    def __post_init__(self):
        if not np.isfinite(self.reward):
            raise ValueError("transition reward must be finite")


class ReplayBuffer:
    """FIFO replay; batches sample without replacement."""

    def __init__(self, capacity: int):
        self.capacity = int(capacity)
        self._items = deque(maxlen=self.capacity)

    def push(self, transition: Transition):
        self._items.append(transition)

    def __len__(self):
        return len(self._items)

    def sample(self, batch_size: int, rng: np.random.Generator):
        if batch_size > len(self._items):
            raise ValueError("not enough transitions to sample a batch")
        idx = rng.choice(len(self._items), size=batch_size, replace=False)
        batch = [self._items[i] for i in idx]
        return {
            "obs": np.stack([t.obs for t in batch]),
            "action": np.array([t.action for t in batch]),
            "reward": np.array([t.reward for t in batch]),
            "next_obs": np.stack([t.next_obs for t in batch]),
            "done": np.array([t.done for t in batch], dtype=float),
        }


class RolloutBuffer:
    """On-policy storage with generalized advantage estimation."""

    def __init__(self, capacity: int):
        self.capacity = int(capacity)
        self.reset()

    def reset(self):
        self.obs, self.actions, self.rewards = [], [], []
        self.dones, self.values, self.logps = [], [], []

    def add(self, obs, action, reward, done, value, logp):
        self.obs.append(np.asarray(obs, dtype=float))
        self.actions.append(action)
        self.rewards.append(float(reward))
        self.dones.append(bool(done))
        self.values.append(float(value))
        self.logps.append(float(logp))

    def __len__(self):
        return len(self.rewards)

    @property
    def full(self):
        return len(self) >= self.capacity

    def compute_gae(self, last_value: float, gamma: float, lam: float):
        n = len(self)
        adv = np.zeros(n)
        gae = 0.0
        for t in range(n - 1, -1, -1):
            next_value = last_value if t == n - 1 else self.values[t + 1]
            nonterminal = 0.0 if self.dones[t] else 1.0
            delta = self.rewards[t] + gamma * next_value * nonterminal - self.values[t]
            gae = delta + gamma * lam * nonterminal * gae
            adv[t] = gae
        returns = adv + np.asarray(self.values)
        return adv, returns

    def arrays(self):
        return (
            np.stack(self.obs),
            np.array(self.actions),
            np.array(self.logps),
        )
