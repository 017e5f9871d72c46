"""Regression metrics: MAE, MSE, R^2, and explained variance.

R^2 subtracts the full residual sum of squares while EXP only penalizes
residual variance, so a constant prediction offset lowers R^2 but leaves
EXP at 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ZeroTargetVarianceError


@dataclass(frozen=True)
class MetricsReport:
    mae: float
    mse: float
    r2: float
    exp: float
    n: int

    def to_dict(self):
        return {"mae": self.mae, "mse": self.mse, "r2": self.r2,
                "exp": self.exp, "n": self.n}


def evaluate(predictions, targets) -> MetricsReport:
    pred = np.asarray(predictions, dtype=float).ravel()
    targ = np.asarray(targets, dtype=float).ravel()
    if pred.shape != targ.shape:
        raise ValueError("predictions and targets must have equal length")
    if pred.size < 2:
        raise ValueError("need at least 2 samples")
    ss_tot = float(np.sum((targ - targ.mean()) ** 2))
    if ss_tot == 0.0:
        raise ZeroTargetVarianceError("targets are constant; R^2 undefined")
    resid = pred - targ
    mae = float(np.mean(np.abs(resid)))
    mse = float(np.mean(resid * resid))
    r2 = 1.0 - float(np.sum(resid * resid)) / ss_tot
    exp = 1.0 - float(np.var(resid)) / float(np.var(targ))
    return MetricsReport(mae=mae, mse=mse, r2=r2, exp=exp, n=pred.size)


def aggregate(reports) -> dict:
    """Mean and population std per metric across reports (per-fold style)."""
    reports = list(reports)
    if not reports:
        raise ValueError("no reports to aggregate")
    out = {}
    for key in ("mae", "mse", "r2", "exp"):
        vals = np.array([getattr(r, key) for r in reports], dtype=float)
        out[key] = {"mean": float(vals.mean()), "std": float(vals.std())}
    out["count"] = len(reports)
    return out
