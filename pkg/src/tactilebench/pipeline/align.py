"""Timestamp alignment of the three asynchronous channels.

The camera is the slowest channel, so its frames anchor the grouping: a
pressure sample belongs to camera frame i when its timestamp falls in
``[t_i, t_{i+1})`` (half-open; samples before the first frame are
discarded, and the last frame's interval extends one median period). Each
pressure sample then keeps its nearest MARG sample by timestamp
(ties break toward the earlier sample) and the remaining MARG readings
are discarded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyOverlapError
from .streams import SensorStream


@dataclass(frozen=True)
class AlignedSample:
    angle: float
    pressure: np.ndarray   # (2,) counts
    marg: np.ndarray       # (18,) two modules x 9 axes
    t_frame: float
    t_pressure: float
    t_marg: float

    def features(self) -> np.ndarray:
        return np.concatenate([self.pressure, self.marg])


@dataclass(frozen=True)
class AlignedGroup:
    frame_index: int
    t_frame: float
    angle: float
    samples: tuple


def nearest_index(times: np.ndarray, t: float) -> int:
    """Index of the element of ``times`` closest to t; ties go earlier."""
    idx = int(np.searchsorted(times, t))
    if idx == 0:
        return 0
    if idx >= len(times):
        return len(times) - 1
    before, after = times[idx - 1], times[idx]
    if abs(t - before) <= abs(after - t):
        return idx - 1
    return idx


def align_streams(camera: SensorStream, pressure: SensorStream,
                  marg: SensorStream):
    """Group pressure samples by camera frame and attach nearest MARG."""
    if len(camera) == 0 or len(pressure) == 0 or len(marg) == 0:
        raise EmptyOverlapError("one or more streams are empty")
    t_cam = camera.times
    gap = float(np.median(np.diff(t_cam))) if len(t_cam) > 1 else np.inf
    horizon = t_cam[-1] + gap

    frame_of = np.searchsorted(t_cam, pressure.times, side="right") - 1
    keep = (frame_of >= 0) & (pressure.times < horizon)
    if not np.any(keep):
        raise EmptyOverlapError("no pressure samples fall within camera frames")

    groups = []
    for i in range(len(t_cam)):
        members = np.nonzero(keep & (frame_of == i))[0]
        samples = []
        for j in members:
            t_p = float(pressure.times[j])
            k = nearest_index(marg.times, t_p)
            samples.append(
                AlignedSample(
                    angle=float(camera.values[i, 0]),
                    pressure=pressure.values[j].copy(),
                    marg=marg.values[k].copy(),
                    t_frame=float(t_cam[i]),
                    t_pressure=t_p,
                    t_marg=float(marg.times[k]),
                )
            )
        groups.append(
            AlignedGroup(
                frame_index=i,
                t_frame=float(t_cam[i]),
                angle=float(camera.values[i, 0]),
                samples=tuple(samples),
            )
        )
    return groups


def aligned_matrix(groups):
    """Flatten groups chronologically: (features (n, 20), angles (n,))."""
    rows, angles = [], []
    for g in groups:
        for s in g.samples:
            rows.append(s.features())
            angles.append(s.angle)
    if not rows:
        raise EmptyOverlapError("alignment produced no samples")
    return np.asarray(rows), np.asarray(angles)
