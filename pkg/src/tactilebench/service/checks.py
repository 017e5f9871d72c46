"""Acceptance checks evaluated over experiment summaries.

Each check returns ``(passed, details)``; the CLI maps failures to a
nonzero exit status when ``--check`` is supplied.
"""

from __future__ import annotations

import numpy as np


def check_pose_sweep(summary: dict, min_gap: float = 0.05):
    r2 = {int(k): v for k, v in summary["r2"].items()}
    windows = {int(k): v for k, v in summary["windows"].items()}
    best_w = max(r2, key=lambda w: r2[w]["mean"])
    gap = r2[best_w]["mean"] - summary["ridge_r2"]
    checks = {"temporal_gap": gap >= min_gap}
    details = {"best_window": best_w, "gap": gap, "ridge_r2": summary["ridge_r2"]}
    ws = sorted(windows)
    if {5, 20, 40, 60}.issubset(ws):
        mae = {w: windows[w]["mean"] for w in ws}
        checks["trend_mae_40_le_5"] = mae[40] <= mae[5]
        checks["trend_saturation"] = abs(mae[60] - mae[40]) < abs(mae[20] - mae[5])
        details["mae"] = mae
    return all(checks.values()), {**details, "checks": checks}


def check_grasp_ppo(summary: dict, max_ratio: float = 0.6):
    ratio = summary["median_ratio"]
    passed = bool(np.isfinite(ratio) and ratio <= max_ratio)
    return passed, {
        "median_ratio": ratio,
        "median_initial_ma": summary["median_initial_ma"],
        "median_final_ma": summary["median_final_ma"],
        "checks": {"steps_ratio": passed},
    }


def check_extract_dqn(summary: dict, speedup: float = 0.7):
    matrix = summary["matrix"]
    checks, details = {}, {}
    if "none" in matrix and "vertical" in matrix:
        scratch = matrix["none"]["median"]
        pre = matrix["vertical"]["median"]
        checks["pretraining_speedup"] = pre <= speedup * scratch
        details["scratch_median"] = scratch
        details["pretrained_median"] = pre
    if "none" in matrix and "curved" in matrix:
        checks["curved_transfer_not_worse"] = (
            matrix["curved"]["median"] <= matrix["none"]["median"]
        )
        details["curved_median"] = matrix["curved"]["median"]
    return (all(checks.values()) if checks else False), {
        **details, "checks": checks,
    }


CHECKS = {
    "pose_sweep": check_pose_sweep,
    "grasp_ppo": check_grasp_ppo,
    "extract_dqn": check_extract_dqn,
}


def run_checks(summary: dict):
    experiment = summary.get("experiment")
    if experiment not in CHECKS:
        raise ValueError(f"no checks registered for {experiment!r}")
    return CHECKS[experiment](summary)
