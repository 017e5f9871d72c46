"""Sliding-window dataset construction over aligned sensor rows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TooShortError


@dataclass
class WindowDataset:
    windows: np.ndarray       # (n, W, F)
    targets: np.ndarray       # (n,) angle at each window's final row
    window_size: int
    mu: np.ndarray | None = None
    sigma: np.ndarray | None = None

    def __len__(self):
        return len(self.windows)


def build_windows(features, angles, window_size: int) -> WindowDataset:
    """Windows of ``window_size`` consecutive rows, targeting the final row.

    The window for target index i holds rows ``i - W + 1 .. i`` in order;
    the first ``W - 1`` targets lack history and are dropped.
    """
    if window_size < 1:
        raise ValueError("window_size must be >= 1")
    X = np.asarray(features, dtype=float)
    y = np.asarray(angles, dtype=float).ravel()
    if len(X) != len(y):
        raise ValueError("features and angles must have equal length")
    if len(X) < window_size:
        raise TooShortError(
            f"{len(X)} rows cannot fill a window of {window_size}"
        )
    view = np.lib.stride_tricks.sliding_window_view(X, window_size, axis=0)
    windows = np.ascontiguousarray(np.moveaxis(view, -1, 1))
    return WindowDataset(
        windows=windows, targets=y[window_size - 1 :], window_size=window_size
    )
