"""Command-line interface for the workbench."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .envs import ExtractEnvConfig
from .pipeline.io import save_stream_jsonl
from .pipeline.streams import simulate_streams
from .service.artifacts import config_hash, read_json_artifact
from .service.checks import run_checks
from .service.runconfig import load_run_config, validate_run_config
from .service.runner import collect_demo_sessions, run_experiment
from .world.objects import ObjectSpec
from .world.profiles import external_rotation_profile


@click.group()
def main():
    """Simulated tactile-manipulation workbench."""


def _run_and_report(config, out, check):
    summary = run_experiment(config, out)
    click.echo(json.dumps(summary, sort_keys=True, indent=1))
    if check:
        passed, details = run_checks(summary)
        click.echo(json.dumps({"passed": passed, **details}, sort_keys=True,
                              indent=1))
        if not passed:
            sys.exit(1)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--check", is_flag=True, help="exit nonzero if acceptance checks fail")
def run(config_path, out_dir, check):
    """Run any experiment from a run-config JSON file."""
    _run_and_report(load_run_config(config_path), out_dir, check)


@main.group()
def simgen():
    """Synthetic sensor-stream generation."""


@simgen.command("streams")
@click.option("--diameter", default=0.065, show_default=True)
@click.option("--duration", default=12.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def simgen_streams(diameter, duration, seed, out_dir):
    """Simulate one rotation trial and persist its three streams."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    spec = ObjectSpec("cylinder", (diameter, 0.12))
    trial = external_rotation_profile(spec, duration, seed=seed)
    streams = simulate_streams(trial, seed=seed)
    meta = {"diameter": diameter, "duration": duration, "seed": seed}
    header = {"config_hash": config_hash(meta), **meta}
    for stream in streams:
        save_stream_jsonl(stream, out / f"{stream.channel}.jsonl", header=header)
    click.echo(f"wrote {len(streams)} streams to {out}")


def _subcommand_config(config_path, experiment):
    if config_path:
        doc = json.loads(Path(config_path).read_text())
        doc.setdefault("experiment", experiment)
    else:
        doc = {"experiment": experiment}
    if doc["experiment"] != experiment:
        raise click.UsageError(
            f"config is for {doc['experiment']!r}, expected {experiment!r}"
        )
    return validate_run_config(doc)


@main.group()
def pose():
    """Object-angle estimation experiments."""


@pose.command("sweep")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--check", is_flag=True)
def pose_sweep(config_path, out_dir, check):
    """Window-size sweep with LSTM and regression baselines."""
    _run_and_report(_subcommand_config(config_path, "pose_sweep"), out_dir, check)


@main.group()
def grasp():
    """Grasp-approach refinement experiments."""


@grasp.command("train")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--check", is_flag=True)
def grasp_train(config_path, out_dir, check):
    """Train the approach policy under positional uncertainty."""
    _run_and_report(_subcommand_config(config_path, "grasp_ppo"), out_dir, check)


@main.group()
def extract():
    """Peg-extraction experiments."""


@extract.command("demos")
@click.option("--peg", default="slanted", show_default=True,
              type=click.Choice(["vertical", "slanted", "curved"]))
@click.option("--seed", default=0, show_default=True)
@click.option("--demos-per-yaw", default=3, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def extract_demos(peg, seed, demos_per_yaw, out_dir):
    """Record scripted teleoperation demonstration sessions."""
    paths = collect_demo_sessions(peg, Path(out_dir), seed,
                                  demos_per_yaw=demos_per_yaw)
    click.echo(f"recorded {len(paths)} sessions under {out_dir}")


@extract.command("pretrain")
@click.option("--demos", "demo_dir", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--epochs", default=60, show_default=True)
@click.option("--seed", default=0, show_default=True)
def extract_pretrain(demo_dir, out_path, epochs, seed):
    """Behavior-clone a policy network from recorded demos."""
    from .agents import pretrain_from_demos
    from .envs import N_ACTIONS, load_demo_session
    from .learning.serialize import save_weights

    records = []
    for path in sorted(Path(demo_dir).glob("*.jsonl")):
        _, recs = load_demo_session(path)
        records.extend(recs)
    net, history = pretrain_from_demos(records, n_actions=N_ACTIONS,
                                       epochs=epochs, seed=seed)
    save_weights(net, out_path)
    click.echo(f"cloned {len(records)} records; final loss "
               f"{history['train_loss'][-1]:.4f}; saved {out_path}")


@extract.command("train")
@click.option("--config", "config_path", type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--check", is_flag=True)
def extract_train(config_path, out_dir, check):
    """Train peg extraction with and without demonstration pretraining."""
    _run_and_report(_subcommand_config(config_path, "extract_dqn"), out_dir, check)


@main.command()
@click.option("--port", default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--peg", default="vertical", show_default=True,
              type=click.Choice(["vertical", "slanted", "curved"]))
@click.option("--yaw", default=0.0, show_default=True)
def serve(port, host, peg, yaw):
    """Serve the live teleoperation/monitoring WebSocket endpoint."""
    import uvicorn

    from .service.server import create_app

    app = create_app(ExtractEnvConfig(peg=peg, placement_yaw_deg=yaw))
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--dir", "out_dir", required=True, type=click.Path(exists=True))
def report(out_dir):
    """Print a stored experiment summary and its acceptance checks."""
    summary = read_json_artifact(Path(out_dir) / "summary.json")
    click.echo(json.dumps(summary, sort_keys=True, indent=1))
    try:
        passed, details = run_checks(summary)
        click.echo(json.dumps({"passed": passed, **details}, sort_keys=True,
                              indent=1))
    except ValueError:
        pass
