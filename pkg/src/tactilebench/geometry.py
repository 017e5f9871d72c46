"""Quaternion algebra, Euler conversions, and a gyro+accel Madgwick filter.

Conventions used everywhere in this package:

* Hamilton quaternion product, scalar-first storage ``(w, x, y, z)``,
  right-handed frames.
* A quaternion rotates body-frame vectors into the world frame via
  ``v' = q v q*``.
* Euler angles are intrinsic x-y-z: ``q = qx(roll) * qy(pitch) * qz(yaw)``,
  with yaw in ``(-pi, pi]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import GimbalLockWarning

_NORM_EPS = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """Unit quaternion, scalar first.

    Public constructors renormalize, so instances returned by this module
    always satisfy ``|q| = 1`` to within 1e-9.
    """

    w: float = 1.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @staticmethod
    def identity() -> "Quaternion":
        return Quaternion(1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def from_axis_angle(axis, angle: float) -> "Quaternion":
        ax = np.asarray(axis, dtype=float)
        n = float(np.linalg.norm(ax))
        if n < _NORM_EPS:
            return Quaternion.identity()
        ax = ax / n
        half = 0.5 * angle
        s = math.sin(half)
        return quat_normalize(
            Quaternion(math.cos(half), s * ax[0], s * ax[1], s * ax[2])
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        # Unit quaternion: inverse equals conjugate.
        return quat_normalize(self.conjugate())

    def rotate(self, v) -> np.ndarray:
        """Rotate a 3-vector by this quaternion (body -> world)."""
        return rotation_matrix(self) @ np.asarray(v, dtype=float)


def quat_normalize(q: Quaternion) -> Quaternion:
    n = q.norm()
    if n < _NORM_EPS:
        return Quaternion.identity()
    return Quaternion(q.w / n, q.x / n, q.y / n, q.z / n)


def quat_multiply(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a * b``, renormalized."""
    w = a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z
    x = a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y
    y = a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x
    z = a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w
    return quat_normalize(Quaternion(w, x, y, z))


def quat_delta(q_t: Quaternion, q_prev: Quaternion) -> Quaternion:
    """Orientation change from ``q_prev`` to ``q_t``: ``q_t * q_prev^-1``."""
    return quat_multiply(q_t, q_prev.inverse())


def quat_angle(a: Quaternion, b: Quaternion) -> float:
    """Geodesic rotation angle between two orientations, in rad.

    Sign-insensitive: q and -q describe the same rotation.
    """
    dot = abs(a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z)
    return 2.0 * math.acos(min(1.0, dot))


def rotation_matrix(q: Quaternion) -> np.ndarray:
    """3x3 rotation matrix mapping body vectors to world vectors."""
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ],
        dtype=float,
    )


def euler_to_quat(roll: float, pitch: float, yaw: float) -> Quaternion:
    """Intrinsic x-y-z Euler angles to quaternion."""
    qx = Quaternion.from_axis_angle((1, 0, 0), roll)
    qy = Quaternion.from_axis_angle((0, 1, 0), pitch)
    qz = Quaternion.from_axis_angle((0, 0, 1), yaw)
    return quat_multiply(quat_multiply(qx, qy), qz)


# |sin(pitch)| must be within this of 1 for the lock branch; matches a
# pitch within ~1e-6 rad of +/-pi/2.
_GIMBAL_EPS = 1e-6


def quat_to_euler(q: Quaternion) -> np.ndarray:
    """Quaternion to intrinsic x-y-z Euler angles ``(roll, pitch, yaw)``.

    At pitch = +/-pi/2 the roll/yaw split is degenerate; a
    ``GimbalLockWarning`` is emitted and roll is set to 0 by convention.
    """
    q = quat_normalize(q)
    r = rotation_matrix(q)
    sp = max(-1.0, min(1.0, float(r[0, 2])))
    if abs(abs(math.asin(sp)) - math.pi / 2) < _GIMBAL_EPS:
        warnings.warn(
            "pitch at +/-90 deg: roll set to 0 by convention", GimbalLockWarning
        )
        pitch = math.copysign(math.pi / 2, sp)
        roll = 0.0
        yaw = math.atan2(r[1, 0], r[1, 1])
    else:
        pitch = math.asin(sp)
        roll = math.atan2(-r[1, 2], r[2, 2])
        yaw = math.atan2(-r[0, 1], r[0, 0])
    return np.array([roll, pitch, yaw], dtype=float)


@dataclass
class FilterState:
    """Madgwick filter state: current orientation, gain, last update time."""

    q: Quaternion = field(default_factory=Quaternion.identity)
    beta: float = 0.1
    last_update: float = 0.0

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("filter gain beta must be >= 0")
        object.__setattr__(self, "q", quat_normalize(self.q))


def madgwick_update(state: FilterState, gyro, accel, dt: float) -> FilterState:
    """One gyro+accel Madgwick step; returns a new FilterState.

    The orientation derivative is the gyro quaternion rate minus the
    beta-scaled, normalized gradient of the gravity objective
    ``f(q, a) = R(q)^T e_z - a_hat``. A zero accelerometer vector skips the
    correction and integrates the gyro alone.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    g = np.asarray(gyro, dtype=float)
    a = np.asarray(accel, dtype=float)
    q1, q2, q3, q4 = state.q.w, state.q.x, state.q.y, state.q.z

    # Gyro quaternion rate: 0.5 * q x (0, gx, gy, gz)
    qd1 = -0.5 * (q2 * g[0] + q3 * g[1] + q4 * g[2])
    qd2 = 0.5 * (q1 * g[0] + q3 * g[2] - q4 * g[1])
    qd3 = 0.5 * (q1 * g[1] - q2 * g[2] + q4 * g[0])
    qd4 = 0.5 * (q1 * g[2] + q2 * g[1] - q3 * g[0])

    a_norm = float(np.linalg.norm(a))
    if a_norm > _NORM_EPS and state.beta > 0:
        ax, ay, az = a / a_norm
        f1 = 2 * (q2 * q4 - q1 * q3) - ax
        f2 = 2 * (q1 * q2 + q3 * q4) - ay
        f3 = 2 * (0.5 - q2 * q2 - q3 * q3) - az
        s1 = -2 * q3 * f1 + 2 * q2 * f2
        s2 = 2 * q4 * f1 + 2 * q1 * f2 - 4 * q2 * f3
        s3 = -2 * q1 * f1 + 2 * q4 * f2 - 4 * q3 * f3
        s4 = 2 * q2 * f1 + 2 * q3 * f2
        s_norm = math.sqrt(s1 * s1 + s2 * s2 + s3 * s3 + s4 * s4)
        if s_norm > _NORM_EPS:
            qd1 -= state.beta * s1 / s_norm
            qd2 -= state.beta * s2 / s_norm
            qd3 -= state.beta * s3 / s_norm
            qd4 -= state.beta * s4 / s_norm

    q = quat_normalize(
        Quaternion(q1 + qd1 * dt, q2 + qd2 * dt, q3 + qd3 * dt, q4 + qd4 * dt)
    )
    return FilterState(q=q, beta=state.beta, last_update=state.last_update + dt)


def tilt_angle(q: Quaternion) -> float:
    """Angle between the body z-axis and the world z-axis, in rad."""
    bz = q.rotate((0.0, 0.0, 1.0))
    return math.acos(max(-1.0, min(1.0, float(bz[2]))))
