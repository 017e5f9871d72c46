import json

from click.testing import CliRunner

from tactilebench.cli import main


def test_simgen_streams(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, [
        "simgen", "streams", "--diameter", "0.057", "--duration", "2.0",
        "--seed", "3", "--out", str(tmp_path),
    ])
    assert result.exit_code == 0, result.output
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {"camera_angle.jsonl", "pressure.jsonl", "marg.jsonl"}
    first = (tmp_path / "camera_angle.jsonl").read_text().splitlines()[0]
    assert "config_hash" in json.loads(first)["header"]


def test_grasp_train_check_and_report(tmp_path):
    runner = CliRunner()
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "seed": 1,
        "params": {"seeds": 1, "iterations": 12, "steps_per_iteration": 256},
    }))
    out = tmp_path / "out"
    result = runner.invoke(main, [
        "grasp", "train", "--config", str(cfg), "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    assert (out / "summary.json").exists()
    assert (out / "grasp_episodes_seed0.csv").exists()

    report = runner.invoke(main, ["report", "--dir", str(out)])
    assert report.exit_code == 0
    assert "median_ratio" in report.output


def test_extract_demos_and_pretrain(tmp_path):
    runner = CliRunner()
    demo_dir = tmp_path / "demos"
    result = runner.invoke(main, [
        "extract", "demos", "--peg", "vertical", "--seed", "2",
        "--out", str(demo_dir),
    ])
    assert result.exit_code == 0, result.output
    assert len(list(demo_dir.glob("*.jsonl"))) == 3  # symmetric peg

    weights = tmp_path / "bc.json"
    result = runner.invoke(main, [
        "extract", "pretrain", "--demos", str(demo_dir),
        "--out", str(weights), "--epochs", "5",
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads(weights.read_text())
    assert doc["format_version"] == 1


def test_run_rejects_invalid_config(tmp_path):
    runner = CliRunner()
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"experiment": "pose_sweep",
                               "params": {"bogus": 1}}))
    result = runner.invoke(main, [
        "run", "--config", str(cfg), "--out", str(tmp_path / "o"),
    ])
    assert result.exit_code != 0


def test_subcommand_rejects_mismatched_experiment(tmp_path):
    runner = CliRunner()
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "extract_dqn"}))
    result = runner.invoke(main, [
        "pose", "sweep", "--config", str(cfg), "--out", str(tmp_path / "o"),
    ])
    assert result.exit_code != 0
