"""Run configuration schema and validation.

A run config is a flat JSON document::

    {"experiment": "pose_sweep" | "grasp_ppo" | "extract_dqn",
     "seed": 0,
     "params": { ... experiment-specific keys ... }}

Unknown keys anywhere are rejected. Defaults live here so a config file
can be minimal; see docs/file-formats.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import ConfigError

_TOP_KEYS = {"experiment", "seed", "params"}

_PARAM_KEYS = {
    "pose_sweep": {
        "window_sizes", "seeds_per_cell", "runs_per_object", "trial_duration",
        "epochs", "learning_rate", "batch_size", "ridge_alpha", "diameters",
        "compare_window",
    },
    "grasp_ppo": {
        "seeds", "iterations", "steps_per_iteration", "sigma", "learning_rate",
        "epochs_per_update", "minibatch_size", "entropy_coef", "init_log_std",
    },
    "extract_dqn": {
        "peg", "pretrain_on", "paired_runs", "episode_cap", "max_episodes",
        "demos_per_yaw", "scratch_decay", "pretrained_decay", "learning_rate",
        "bc_epochs",
    },
}

_DEFAULTS = {
    "pose_sweep": {
        "window_sizes": [5, 20, 40, 60],
        "seeds_per_cell": 5,
        "runs_per_object": 5,
        "trial_duration": 12.0,
        "epochs": 20,
        "learning_rate": 5e-3,
        "batch_size": 256,
        "ridge_alpha": 1.0,
        "diameters": [0.057, 0.065, 0.080],
        "compare_window": 40,
    },
    "grasp_ppo": {
        "seeds": 5,
        "iterations": 20,
        "steps_per_iteration": 256,
        "sigma": 0.005,
        "learning_rate": 3e-4,
        "epochs_per_update": 10,
        "minibatch_size": 64,
        "entropy_coef": 0.0,
        "init_log_std": None,
    },
    "extract_dqn": {
        "peg": "vertical",
        "pretrain_on": ["none", "vertical", "curved"],
        "paired_runs": 10,
        "episode_cap": 64,
        "max_episodes": 120,
        "demos_per_yaw": 3,
        "scratch_decay": 200.0,
        "pretrained_decay": 50.0,
        "learning_rate": 1e-3,
        "bc_epochs": 60,
    },
}


@dataclass(frozen=True)
class RunConfig:
    experiment: str
    seed: int = 0
    params: dict = field(default_factory=dict)

    def to_dict(self):
        return {"experiment": self.experiment, "seed": self.seed,
                "params": dict(self.params)}


def validate_run_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("run config must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown run config keys: {sorted(unknown)}")
    experiment = doc.get("experiment")
    if experiment not in _PARAM_KEYS:
        raise ConfigError(
            f"experiment must be one of {sorted(_PARAM_KEYS)}, got {experiment!r}"
        )
    seed = doc.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    bad = set(params) - _PARAM_KEYS[experiment]
    if bad:
        raise ConfigError(f"unknown {experiment} params: {sorted(bad)}")
    merged = {**_DEFAULTS[experiment], **params}
    return RunConfig(experiment=experiment, seed=seed, params=merged)


def load_run_config(path) -> RunConfig:
    with open(path) as fh:
        return validate_run_config(json.load(fh))
