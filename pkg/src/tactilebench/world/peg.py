"""Rigid peg held at a grip point, checked against its hole channel."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .objects import HoleChannel


def _rot_z(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _rot_y(a):
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


class PegRig:
    """Peg/hole interference model in world coordinates.

    The hole mouth center sits at ``origin`` with the mouth plane at
    z = 0 and the channel descending to ``-depth``. The peg is sampled at
    rest (seated) and moved rigidly with the grip point; interference is
    the largest horizontal deviation of any inserted sample from the
    channel centerline at its height, beyond the clearance.
    """

    def __init__(self, channel: HoleChannel, origin=(0.0, 0.0),
                 placement_yaw: float = 0.0, grip_span: float = 0.06,
                 spacing: float = 0.005):
        self.channel = channel
        self.placement_yaw = float(placement_yaw)
        self.origin = np.array([origin[0], origin[1], 0.0])
        seated = channel.seated_points(grip_span, spacing)
        rz = _rot_z(self.placement_yaw)
        pts = []
        for h, lat in seated:
            local = np.array([lat, 0.0, h - channel.depth])
            pts.append(self.origin + rz @ local)
        self.ref_points = np.array(pts)
        self.grip_home = self.ref_points[-1].copy()
        self.grip_span = grip_span

    def points(self, grip, yaw: float, tilt: float) -> np.ndarray:
        """Peg sample positions for a grip point, yaw, and in-plane tilt."""
        m = _rot_z(yaw) @ _rot_y(tilt) @ _rot_z(-self.placement_yaw)
        rel = self.ref_points - self.grip_home
        return np.asarray(grip) + rel @ m.T

    def interference(self, grip, yaw: float, tilt: float):
        """(max interference in m, hit_floor) over the inserted samples."""
        ch = self.channel
        rz = _rot_z(self.placement_yaw)
        worst = 0.0
        hit_floor = False
        for p in self.points(grip, yaw, tilt):
            z = p[2]
            if z >= 0.0:
                continue
            h = z + ch.depth
            if h < -1e-9:
                hit_floor = True
                h = 0.0
            center = self.origin + rz @ np.array([ch.lateral(max(h, 0.0)), 0.0, 0.0])
            dev = math.hypot(p[0] - center[0], p[1] - center[1])
            worst = max(worst, dev - ch.clearance)
        return max(0.0, worst), hit_floor

    def fully_out(self, grip, yaw: float, tilt: float) -> bool:
        return bool(np.all(self.points(grip, yaw, tilt)[:, 2] >= 0.0))
