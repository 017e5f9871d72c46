"""Proximal policy optimization with a clipped surrogate objective.

Two policy heads are supported: a Gaussian over a continuous action in
[-1, 1] (the grasp-approach case: a 2x64 tanh network emits the mean and
a trainable state-independent log-std handles exploration) and a
categorical head for discrete tasks. The value network mirrors the policy
body. Updates consume a full rollout buffer, normalize advantages, and
emit approximate-KL and clip-fraction diagnostics; a non-finite
diagnostic aborts the update and restores the previous weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..learning.network import Network, NetworkSpec
from ..learning.optim import Adam
from .buffers import RolloutBuffer


@dataclass(frozen=True)
class PPOConfig:
    steps_per_iteration: int = 2048
    clip_ratio: float = 0.2
    epochs: int = 10
    minibatch_size: int = 64
    gamma: float = 0.99
    gae_lambda: float = 0.95
    learning_rate: float = 3e-4
    entropy_coef: float = 0.0
    value_coef: float = 0.5
    hidden: tuple = (64, 64)
    init_log_std: float = math.log(0.5)
    max_episode_steps: int = 50

    def __post_init__(self):
        if self.steps_per_iteration < self.max_episode_steps:
            raise ValueError(
                "steps_per_iteration must cover at least one full episode"
            )


def _mlp_spec(in_width, hidden, out_desc, seed):
    layers = tuple(f"dense({h}, tanh)" for h in hidden) + out_desc
    return NetworkSpec(input_width=in_width, layers=layers, seed=seed)


class PPOAgent:
    """Actor-critic PPO over a reset()/step() environment."""

    def __init__(self, obs_width: int, config: PPOConfig = PPOConfig(),
                 action_space: str = "gaussian", n_actions: int = 2,
                 seed: int = 0):
        if action_space not in ("gaussian", "categorical"):
            raise ValueError("action_space must be gaussian or categorical")
        self.config = config
        self.action_space = action_space
        self.n_actions = n_actions
        self.rng = np.random.default_rng(seed)
        out = (("dense(1)",) if action_space == "gaussian"
               else (f"dense({n_actions})", "softmax"))
        self.policy = Network(_mlp_spec(obs_width, config.hidden, out, seed))
        self.value = Network(_mlp_spec(obs_width, config.hidden,
                                       ("dense(1)",), seed + 1))
        self.log_std = np.array([config.init_log_std])
        self.d_log_std = np.zeros_like(self.log_std)
        self.policy_opt = Adam(config.learning_rate)
        self.value_opt = Adam(config.learning_rate)

    # -- acting ---------------------------------------------------------

    def _policy_params(self):
        if self.action_space == "gaussian":
            return self.policy.params() + [self.log_std]
        return self.policy.params()

    def _policy_grads(self):
        if self.action_space == "gaussian":
            return self.policy.grads() + [self.d_log_std]
        return self.policy.grads()

    def act(self, obs):
        """Sample an action; returns (action, logp, value)."""
        obs = np.asarray(obs, dtype=float).reshape(1, -1)
        value = float(self.value.forward(obs)[0, 0])
        if self.action_space == "gaussian":
            mean = float(self.policy.forward(obs)[0, 0])
            std = float(np.exp(self.log_std[0]))
            action = float(np.clip(self.rng.normal(mean, std), -1.0, 1.0))
            logp = self._gaussian_logp(np.array([action]), np.array([mean]))[0]
            return action, float(logp), value
        probs = self.policy.forward(obs)[0]
        action = int(self.rng.choice(self.n_actions, p=probs))
        return action, float(np.log(probs[action])), value

    def _gaussian_logp(self, actions, means):
        std = np.exp(self.log_std[0])
        z = (actions - means) / std
        return -0.5 * z * z - self.log_std[0] - 0.5 * math.log(2.0 * math.pi)

    # -- learning -------------------------------------------------------

    def collect(self, env, episode_log=None):
        """Run episodes until the rollout buffer is full."""
        buf = RolloutBuffer(self.config.steps_per_iteration)
        while not buf.full:
            obs = env.reset()
            ep_reward, ep_steps, done = 0.0, 0, False
            while not done and not buf.full:
                action, logp, value = self.act(obs)
                next_obs, reward, done, info = env.step(action)
                buf.add(obs, action, reward, done, value, logp)
                obs = next_obs
                ep_reward += reward
                ep_steps += 1
            if episode_log is not None and done:
                episode_log.append({"reward": ep_reward, "steps": ep_steps})
        last_value = 0.0 if done else float(
            self.value.forward(np.asarray(obs).reshape(1, -1))[0, 0]
        )
        return buf, last_value

    def update(self, buf: RolloutBuffer, last_value: float):
        """Clipped-surrogate update over the buffer; returns diagnostics."""
        cfg = self.config
        adv, returns = buf.compute_gae(last_value, cfg.gamma, cfg.gae_lambda)
        adv = (adv - adv.mean()) / (adv.std() + 1e-8)
        obs, actions, logp_old = buf.arrays()
        returns = returns.reshape(-1, 1)

        snapshot = (self.policy.get_weights(), self.value.get_weights(),
                    self.log_std.copy())
        kls, clip_fracs = [], []
        n = len(obs)
        for _ in range(cfg.epochs):
            order = self.rng.permutation(n)
            for start in range(0, n, cfg.minibatch_size):
                idx = order[start : start + cfg.minibatch_size]
                stats = self._minibatch_step(
                    obs[idx], actions[idx], logp_old[idx], adv[idx], returns[idx]
                )
                kls.append(stats["kl"])
                clip_fracs.append(stats["clip_fraction"])
        diagnostics = {
            "kl": float(np.mean(kls)),
            "clip_fraction": float(np.mean(clip_fracs)),
            "aborted": False,
        }
        if not all(np.isfinite(v) for v in
                   (diagnostics["kl"], diagnostics["clip_fraction"])):
            self.policy.set_weights(snapshot[0])
            self.value.set_weights(snapshot[1])
            self.log_std[...] = snapshot[2]
            diagnostics["aborted"] = True
        return diagnostics

    def _minibatch_step(self, obs, actions, logp_old, adv, returns):
        cfg = self.config
        m = len(obs)
        if self.action_space == "gaussian":
            means = self.policy.forward(obs, train=True)
            logp_new = self._gaussian_logp(actions, means[:, 0])
        else:
            probs = self.policy.forward(obs, train=True)
            logp_new = np.log(probs[np.arange(m), actions.astype(int)] + 1e-12)
        ratio = np.exp(logp_new - logp_old)
        clipped = np.clip(ratio, 1.0 - cfg.clip_ratio, 1.0 + cfg.clip_ratio)
        unclipped_obj = ratio * adv
        clipped_obj = clipped * adv
        use_unclipped = unclipped_obj <= clipped_obj
        # d(-min)/d logp flows only through the unclipped branch
        dlogp = np.where(use_unclipped, -adv * ratio, 0.0) / m

        self.policy.zero_grads()
        if self.action_space == "gaussian":
            std = np.exp(self.log_std[0])
            z = (actions - means[:, 0]) / std
            dmean = dlogp * (z / std)
            self.d_log_std[...] = 0.0
            self.d_log_std[0] = float(np.sum(dlogp * (z * z - 1.0)))
            if cfg.entropy_coef:
                # gaussian entropy depends only on log_std
                self.d_log_std[0] -= cfg.entropy_coef
            self.policy.backward(dmean.reshape(-1, 1))
        else:
            onehot = np.zeros((m, self.n_actions))
            onehot[np.arange(m), actions.astype(int)] = 1.0
            probs_safe = np.where(onehot > 0, np.maximum(probs, 1e-12), 1.0)
            dprobs = dlogp.reshape(-1, 1) * onehot / probs_safe
            if cfg.entropy_coef:
                logp_full = np.log(np.maximum(probs, 1e-12))
                dprobs += cfg.entropy_coef * (logp_full + 1.0) / m
            self.policy.backward(dprobs)
        self.policy_opt.step(self._policy_params(), self._policy_grads())

        values = self.value.forward(obs, train=True)
        self.value.zero_grads()
        dvalue = cfg.value_coef * 2.0 * (values - returns) / m
        self.value.backward(dvalue)
        self.value_opt.step(self.value.params(), self.value.grads())

        return {
            "kl": float(np.mean(logp_old - logp_new)),
            "clip_fraction": float(np.mean(ratio != clipped)),
        }

    def train(self, env, iterations: int):
        """Alternate rollout collection and updates; returns episode log."""
        episodes, diagnostics = [], []
        for _ in range(iterations):
            buf, last_value = self.collect(env, episode_log=episodes)
            diagnostics.append(self.update(buf, last_value))
        return episodes, diagnostics
