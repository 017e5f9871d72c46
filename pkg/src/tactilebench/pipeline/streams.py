"""Asynchronous multi-rate sensor streams synthesized from rotation trials.

Three channels mirror the hardware rig: a camera measuring the object
angle, the two modules' barometers, and the two modules' MARG units
(accelerometer, gyroscope, magnetometer). Each samples on its own clock
with a seeded per-period jitter.

The tactile signal model: each compliant module's pad rolls against the
grasped cylinder, so the module rotates with the object amplified by the
contact radius ratio (``twist_gain``). The gravity direction seen by the
accelerometer therefore encodes the object angle through a sine/cosine
pair that folds past 90 degrees of module twist, while the gyroscope
reads the amplified rotation rate. Pressure rides on the grip level,
reacting to the operator's torque. A linear readout of the folded
gravity projection caps well below a nonlinear temporal decoder, which
is the effect the angle-estimation experiments measure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..world.contact import BARO_MAX
from ..world.profiles import REFERENCE_YAW, RotationTrial


@dataclass(frozen=True)
class SensorStream:
    channel: str  # camera_angle | pressure | marg
    times: np.ndarray
    values: np.ndarray  # (n, d)
    nominal_rate: float

    def __post_init__(self):
        if len(self.times) != len(self.values):
            raise ValueError("times and values must have equal length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("timestamps must be strictly increasing")

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class StreamRates:
    camera: float = 29.95
    pressure: float = 402.19
    marg: float = 973.50


@dataclass(frozen=True)
class SignalModel:
    gravity: float = 9.81
    twist_gain: float = 5.5       # module rad per object rad (rolling contact)
    accel_noise: float = 0.3      # m/s^2, at rest
    accel_vibration: float = 2.5  # m/s^2 per rad/s of module spin
    gyro_noise: float = 0.02      # rad/s
    mag_field: tuple = (22.0, 5.0, -43.0)
    mag_noise: float = 0.5
    grip_count: float = 270.0     # resting two-sided grasp level
    pressure_dir_gain: float = 20.0
    pressure_abs_gain: float = 40.0
    pressure_noise: float = 3.0
    period_jitter: float = 0.02


def _sample_times(rng, duration, rate, jitter):
    period = 1.0 / rate
    times = []
    t = period * rng.uniform(0.0, 1.0)
    while t <= duration:
        times.append(t)
        t += period * (1.0 + rng.uniform(-jitter, jitter))
    return np.asarray(times)


def simulate_streams(trial: RotationTrial, seed: int,
                     rates: StreamRates = StreamRates(),
                     model: SignalModel = SignalModel()):
    """Produce (camera, pressure, marg) streams for one rotation trial."""
    rng = np.random.default_rng(seed)
    duration = trial.duration

    t_cam = _sample_times(rng, duration, rates.camera, model.period_jitter)
    t_press = _sample_times(rng, duration, rates.pressure, model.period_jitter)
    t_marg = _sample_times(rng, duration, rates.marg, model.period_jitter)

    cam_vals = trial.yaw_at(t_cam).reshape(-1, 1)

    rate_press = trial.rate_at(t_press)
    press = np.empty((len(t_press), 2))
    for side, sign in ((0, -1.0), (1, 1.0)):
        press[:, side] = (
            model.grip_count
            + sign * model.pressure_dir_gain * rate_press
            + model.pressure_abs_gain * np.abs(rate_press)
            + rng.normal(0.0, model.pressure_noise, size=len(t_press))
        )
    press = np.clip(press, 0.0, BARO_MAX)

    yaw_m = trial.yaw_at(t_marg)
    rate_m = trial.rate_at(t_marg)
    marg = np.empty((len(t_marg), 18))
    for side, sign in ((0, 1.0), (1, -1.0)):
        twist = sign * model.twist_gain * (yaw_m - REFERENCE_YAW)
        base = 9 * side
        # accelerometer: gravity rotated by the module twist about x,
        # drowned in rolling vibration while the module spins
        sigma = model.accel_noise + model.accel_vibration * np.abs(
            model.twist_gain * rate_m
        )
        marg[:, base + 0] = sigma * rng.normal(size=len(t_marg))
        marg[:, base + 1] = (model.gravity * np.sin(twist)
                             + sigma * rng.normal(size=len(t_marg)))
        marg[:, base + 2] = (model.gravity * np.cos(twist)
                             + sigma * rng.normal(size=len(t_marg)))
        # gyroscope: the rolling module spins at the amplified rate
        marg[:, base + 3] = rng.normal(0.0, model.gyro_noise, size=len(t_marg))
        marg[:, base + 4] = rng.normal(0.0, model.gyro_noise, size=len(t_marg))
        marg[:, base + 5] = (sign * model.twist_gain * rate_m
                             + rng.normal(0.0, model.gyro_noise, size=len(t_marg)))
        # magnetometer: constant field plus noise
        for axis in range(3):
            marg[:, base + 6 + axis] = (
                model.mag_field[axis]
                + rng.normal(0.0, model.mag_noise, size=len(t_marg))
            )

    return (
        SensorStream("camera_angle", t_cam, cam_vals, rates.camera),
        SensorStream("pressure", t_press, press, rates.pressure),
        SensorStream("marg", t_marg, marg, rates.marg),
    )
