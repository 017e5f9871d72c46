"""Experiment orchestration: config in, deterministic artifacts out."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..agents import (
    DQNAgent,
    DQNConfig,
    PPOAgent,
    PPOConfig,
    pretrain_from_demos,
    q_network_from_pretrained,
)
from ..envs import (
    PLACEMENT_YAWS_DEG,
    ExtractEnv,
    ExtractEnvConfig,
    GraspEnv,
    GraspEnvConfig,
    load_demo_session,
    scripted_policy,
)
from ..errors import EnvFailureError
from ..pose.experiment import SweepConfig, build_run_matrices, compare_baselines, run_sweep
from .artifacts import config_hash, write_csv_artifact, write_json_artifact
from .runconfig import RunConfig
from .seeds import derive_seed


def run_experiment(config: RunConfig, out_dir) -> dict:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cfg_hash = config_hash(config.to_dict())
    if config.experiment == "pose_sweep":
        summary = _run_pose_sweep(config, out, cfg_hash)
    elif config.experiment == "grasp_ppo":
        summary = _run_grasp_ppo(config, out, cfg_hash)
    elif config.experiment == "extract_dqn":
        summary = _run_extract_dqn(config, out, cfg_hash)
    else:  # validate_run_config prevents this
        raise EnvFailureError(f"unknown experiment {config.experiment}")
    write_json_artifact(out / "summary.json", summary, cfg_hash)
    return summary


# -- chapter 3: window-size sweep ---------------------------------------

def _run_pose_sweep(config: RunConfig, out: Path, cfg_hash: str) -> dict:
    p = config.params
    sweep_cfg = SweepConfig(
        window_sizes=tuple(p["window_sizes"]),
        seeds_per_fold=int(p["seeds_per_cell"]),
        diameters=tuple(p["diameters"]),
        runs_per_object=int(p["runs_per_object"]),
        trial_duration=float(p["trial_duration"]),
        learning_rate=float(p["learning_rate"]),
        batch_size=int(p["batch_size"]),
        epochs=int(p["epochs"]),
        ridge_alpha=float(p["ridge_alpha"]),
        seed=config.seed,
    )
    runs = build_run_matrices(sweep_cfg)
    table = run_sweep(sweep_cfg, runs=runs)
    ridge, linear = compare_baselines(
        sweep_cfg, window_size=int(p["compare_window"]), runs=runs
    )

    header = ["window", "mae_mean", "mae_std", "mse_mean", "mse_std",
              "r2_mean", "r2_std", "exp_mean", "exp_std", "failed_cells"]
    rows = []
    for w in sweep_cfg.window_sizes:
        row = table[w]
        rows.append([
            w,
            row["mae"]["mean"], row["mae"]["std"],
            row["mse"]["mean"], row["mse"]["std"],
            row["r2"]["mean"], row["r2"]["std"],
            row["exp"]["mean"], row["exp"]["std"],
            row["failed_cells"],
        ])
    write_csv_artifact(out / "sweep.csv", header, rows, cfg_hash)
    write_json_artifact(out / "baselines.json", {
        "window": int(p["compare_window"]),
        "ridge": ridge.to_dict(),
        "linear": linear.to_dict(),
    }, cfg_hash)

    return {
        "experiment": "pose_sweep",
        "windows": {str(w): table[w]["mae"] for w in sweep_cfg.window_sizes},
        "r2": {str(w): table[w]["r2"] for w in sweep_cfg.window_sizes},
        "ridge_r2": ridge.r2,
        "linear_r2": linear.r2,
    }


# -- chapter 4: grasp approach under uncertainty -------------------------

def moving_average(values, window: int = 50):
    values = np.asarray(values, dtype=float)
    if len(values) < window:
        return values.mean() if len(values) else math.nan
    kernel = np.ones(window) / window
    return np.convolve(values, kernel, mode="valid")


class _ScaledGraspEnv:
    """Fixed observation scaling for policy-net conditioning.

    The environment's observation contract stays raw (efforts in N.m,
    barometer counts, Euler radians); the agent sees each block divided
    by its full-scale value.
    """

    _scale = np.concatenate([
        np.full(4, 2.0), np.full(2, 400.0), np.full(3, 0.8)
    ])

    def __init__(self, env: GraspEnv):
        self.env = env
        self.observation_width = env.observation_width

    def reset(self, *a, **k):
        return self.env.reset(*a, **k) / self._scale

    def step(self, action):
        obs, reward, done, info = self.env.step(action)
        return obs / self._scale, reward, done, info


def _run_grasp_ppo(config: RunConfig, out: Path, cfg_hash: str) -> dict:
    p = config.params
    n_seeds = int(p["seeds"])
    per_seed = []
    for s in range(n_seeds):
        env = _ScaledGraspEnv(GraspEnv(
            GraspEnvConfig(sigma=float(p["sigma"])),
            seed=derive_seed(config.seed, "grasp-env", s),
        ))
        ppo_kwargs = dict(
            steps_per_iteration=int(p["steps_per_iteration"]),
            learning_rate=float(p["learning_rate"]),
            epochs=int(p["epochs_per_update"]),
            minibatch_size=int(p["minibatch_size"]),
            entropy_coef=float(p["entropy_coef"]),
        )
        if p["init_log_std"] is not None:
            ppo_kwargs["init_log_std"] = float(p["init_log_std"])
        agent = PPOAgent(
            obs_width=env.observation_width,
            config=PPOConfig(**ppo_kwargs),
            seed=derive_seed(config.seed, "grasp-agent", s),
        )
        try:
            episodes, diagnostics = agent.train(env, iterations=int(p["iterations"]))
        except Exception as exc:
            raise EnvFailureError(f"grasp_ppo seed {s} failed: {exc}") from exc

        write_csv_artifact(
            out / f"grasp_episodes_seed{s}.csv",
            ["episode", "steps", "reward"],
            [[i, e["steps"], e["reward"]] for i, e in enumerate(episodes)],
            cfg_hash,
        )
        write_csv_artifact(
            out / f"grasp_diagnostics_seed{s}.csv",
            ["iteration", "kl", "clip_fraction", "aborted"],
            [[i, d["kl"], d["clip_fraction"], int(d["aborted"])]
             for i, d in enumerate(diagnostics)],
            cfg_hash,
        )
        steps = [e["steps"] for e in episodes]
        ma = moving_average(steps, 50)
        initial = float(ma[0]) if np.ndim(ma) else float(ma)
        final = float(ma[-1]) if np.ndim(ma) else float(ma)
        per_seed.append({
            "seed": s,
            "episodes": len(episodes),
            "initial_ma": initial,
            "final_ma": final,
            "ratio": final / initial if initial else math.nan,
        })
    ratios = [x["ratio"] for x in per_seed]
    return {
        "experiment": "grasp_ppo",
        "per_seed": per_seed,
        "median_ratio": float(np.median(ratios)),
        "median_initial_ma": float(np.median([x["initial_ma"] for x in per_seed])),
        "median_final_ma": float(np.median([x["final_ma"] for x in per_seed])),
    }


# -- chapter 5: pretrained peg extraction ---------------------------------

def collect_demo_sessions(peg: str, out_dir: Path, root_seed: int,
                          demos_per_yaw: int = 3) -> list:
    """Scripted teleoperation sessions; the symmetric vertical peg is
    demonstrated three times total, the others per placement yaw."""
    out_dir.mkdir(parents=True, exist_ok=True)
    yaws = (0.0,) if peg == "vertical" else PLACEMENT_YAWS_DEG
    paths = []
    for yaw in yaws:
        for rep in range(demos_per_yaw):
            seed = derive_seed(root_seed, "demo", peg, yaw, rep)
            env = ExtractEnv(
                ExtractEnvConfig(peg=peg, placement_yaw_deg=yaw), seed=seed
            )
            env.reset(seed=seed)
            path = out_dir / f"{peg}_yaw{int(yaw)}_rep{rep}.jsonl"
            env.start_recording(path, timestamp=0.0)
            last, done = None, False
            while not done:
                action = scripted_policy(env, last)
                _, _, done, _ = env.teleop_step(action)
                last = action
            env.stop_recording()
            paths.append(path)
    return paths


def episodes_to_first_success(agent: DQNAgent, env: ExtractEnv,
                              max_episodes: int, episode_cap: int):
    log = []
    for episode in range(max_episodes):
        record = agent.run_episode(env, max_steps=episode_cap)
        record["episode"] = episode
        log.append(record)
        if record["success"]:
            return episode + 1, log
    return max_episodes, log


def _run_extract_dqn(config: RunConfig, out: Path, cfg_hash: str) -> dict:
    p = config.params
    peg = p["peg"]
    sources = list(p["pretrain_on"])
    demo_records = {}
    for source in sources:
        if source == "none":
            continue
        paths = collect_demo_sessions(
            source, out / "demos", config.seed,
            demos_per_yaw=int(p["demos_per_yaw"]),
        )
        records = []
        for path in paths:
            _, recs = load_demo_session(path)
            records.extend(recs)
        demo_records[source] = records

    matrix = {}
    for source in sources:
        runs = []
        for r in range(int(p["paired_runs"])):
            env = ExtractEnv(
                ExtractEnvConfig(peg=peg),
                seed=derive_seed(config.seed, "extract-env", source, r),
            )
            if source == "none":
                q_net = None
                decay = float(p["scratch_decay"])
            else:
                bc_net, _ = pretrain_from_demos(
                    demo_records[source],
                    n_actions=env.n_actions,
                    epochs=int(p["bc_epochs"]),
                    seed=derive_seed(config.seed, "bc", source, r),
                )
                q_net = q_network_from_pretrained(
                    bc_net, obs_width=env.observation_width,
                    n_actions=env.n_actions,
                    seed=derive_seed(config.seed, "qhead", source, r),
                )
                decay = float(p["pretrained_decay"])
            agent = DQNAgent(
                obs_width=env.observation_width,
                n_actions=env.n_actions,
                config=DQNConfig(
                    epsilon_decay=decay,
                    learning_rate=float(p["learning_rate"]),
                ),
                seed=derive_seed(config.seed, "dqn", source, r),
                q_net=q_net,
            )
            episodes, log = episodes_to_first_success(
                agent, env, int(p["max_episodes"]), int(p["episode_cap"])
            )
            runs.append(episodes)
            write_csv_artifact(
                out / f"extract_{source}_run{r}.csv",
                ["episode", "steps", "reward", "success", "epsilon"],
                [[e["episode"], e["steps"], e["reward"], int(e["success"]),
                  e["epsilon"]] for e in log],
                cfg_hash,
            )
        matrix[source] = {
            "episodes_to_success": runs,
            "median": float(np.median(runs)),
        }
    return {"experiment": "extract_dqn", "peg": peg, "matrix": matrix}
