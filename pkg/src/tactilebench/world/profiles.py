"""External rotation trials and the positional-uncertainty draw."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .objects import ObjectSpec

REFERENCE_YAW = math.pi / 2  # objects start at 90 deg on the x axis

SPEED_BAND = (0.1, 0.5)  # rad/s, mean angular speed of the operator


@dataclass(frozen=True)
class RotationTrial:
    """Dense yaw trajectory of a hand-rotated object."""

    object_spec: ObjectSpec
    times: np.ndarray
    yaw: np.ndarray
    seed: int

    @property
    def duration(self) -> float:
        return float(self.times[-1])

    def yaw_at(self, t) -> np.ndarray:
        return np.interp(t, self.times, self.yaw)

    def rate_at(self, t) -> np.ndarray:
        rates = np.gradient(self.yaw, self.times)
        return np.interp(t, self.times, rates)


def external_rotation_profile(object_spec: ObjectSpec, duration: float,
                              seed: int, dt: float = 1e-3,
                              amplitude: float = 0.55) -> RotationTrial:
    """CW/CCW yaw trajectory of a hand-rotated object, with seeded jitter.

    Starting at the 90-degree reference, the operator repeatedly rotates
    toward a randomly drawn waypoint inside ``reference +/- amplitude``,
    reversing direction at each arrival, with a fresh base speed per leg
    and low-pass-filtered speed noise emulating inconsistent hand forces.
    Waypoints are aperiodic, so the angle is never a simple function of
    recent rate history.
    """
    if duration <= 0:
        raise ValueError("duration must be > 0")
    rng = np.random.default_rng(seed)
    n = int(round(duration / dt)) + 1
    t = np.arange(n) * dt

    # one-pole low-pass on white noise, ~2 Hz bandwidth
    white = rng.normal(scale=1.0, size=n)
    jitter = np.empty(n)
    alpha = min(1.0, dt * 2.0 * math.pi * 2.0)
    acc = 0.0
    for i in range(n):
        acc += alpha * (white[i] - acc)
        jitter[i] = acc
    jitter *= 0.25 / max(1e-9, np.std(jitter))

    def next_leg(current):
        speed = rng.uniform(0.22, 0.42)
        while True:
            target = rng.uniform(-amplitude, amplitude)
            if abs(target - current) >= 0.3 * amplitude:
                return target, speed

    yaw_rel = np.empty(n)
    pos = 0.0
    target, speed = next_leg(pos)
    for i in range(n):
        yaw_rel[i] = pos
        step = speed * (1.0 + 0.3 * jitter[i]) * dt
        direction = 1.0 if target > pos else -1.0
        pos += direction * abs(step)
        if (direction > 0 and pos >= target) or (direction < 0 and pos <= target):
            pos = target
            target, speed = next_leg(pos)

    yaw = REFERENCE_YAW + yaw_rel
    return RotationTrial(object_spec=object_spec, times=t, yaw=yaw, seed=seed)


def sample_uncertain_position(mu: float, sigma: float, rng) -> float:
    """Draw the x-axis object estimate from N(mu, sigma^2).

    ``rng`` is a seed or a numpy Generator. ``sigma == 0`` returns mu.
    """
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0.0:
        return float(mu)
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    return float(rng.normal(mu, sigma))
