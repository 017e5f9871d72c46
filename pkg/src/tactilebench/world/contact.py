"""Penetration-based contact: pad squeeze depth maps linearly to counts.

The tactile modules report raw barometer counts in [0, 400]. A pad's
count is ``baseline + gain * penetration`` clamped to the range; the gain
is set so a 3 mm penetration saturates the sensor. Module orientation
tilts about the contact tangent in proportion to how far off-normal the
contact is, which is what flags collisions to the environments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import Quaternion

BARO_BASELINE = 10.0
BARO_MAX = 400.0
SATURATION_DEPTH = 0.003
PRESSURE_GAIN = (BARO_MAX - BARO_BASELINE) / SATURATION_DEPTH

# Normal-incidence contacts tilt the compliant module only slightly;
# off-normal (descent) collisions tilt it far beyond any sane threshold.
NORMAL_TILT_PER_M = math.radians(0.5) / 0.001
COLLISION_TILT_FLOOR = math.radians(6.0)
COLLISION_TILT_PER_M = 50.0
COLLISION_TILT_MAX = math.radians(30.0)


@dataclass(frozen=True)
class TactileModuleState:
    baro: float = BARO_BASELINE
    orientation: Quaternion = field(default_factory=Quaternion.identity)
    contact_normal: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def to_dict(self):
        q = self.orientation
        return {
            "baro": float(self.baro),
            "orientation": [q.w, q.x, q.y, q.z],
            "contact_normal": [float(v) for v in self.contact_normal],
        }


def baro_from_penetration(penetration: float, noise: float = 0.0) -> float:
    count = BARO_BASELINE + PRESSURE_GAIN * max(0.0, penetration) + noise
    return float(min(BARO_MAX, max(0.0, count)))


@dataclass(frozen=True)
class GraspGeometry:
    """Two pads closing along x onto an object centered at offset dx.

    Fingers open to ``half_width + approach_margin`` on each side of the
    attempt center, descend, then close to the preset grip half-width
    ``half_width - squeeze`` so a centered object is squeezed by
    ``squeeze`` on each side. A finger whose descent footprint overlaps
    the object's top face collides instead of grasping.
    """

    approach_margin: float = 0.025
    squeeze: float = 0.002
    pad_thickness: float = 0.004


def grasp_attempt_contact(half_width: float, dx: float,
                          geometry: GraspGeometry = GraspGeometry(),
                          rng: np.random.Generator | None = None):
    """Contact outcome of one grasp attempt.

    ``dx`` is the object center minus the attempt center along x. Returns
    ``(left, right, collided)`` with per-side TactileModuleState.
    """
    g = geometry
    noise = rng.uniform(-1.0, 1.0, size=2) if rng is not None else np.zeros(2)

    collided = [False, False]
    pens = [0.0, 0.0]
    overlaps = [0.0, 0.0]
    for side, sign in ((0, -1.0), (1, 1.0)):
        finger = sign * (half_width + g.approach_margin)
        gap = abs(dx - finger) - (half_width + g.pad_thickness / 2.0)
        if gap < 0.0:
            collided[side] = True
            overlaps[side] = -gap
    # Closing only reaches the object when it sits between the fingers;
    # past the descent-collision band it is outside the jaws entirely.
    if not any(collided) and abs(dx) < half_width + g.approach_margin:
        pens[0] = max(0.0, g.squeeze - dx)
        pens[1] = max(0.0, g.squeeze + dx)

    states = []
    for side, sign in ((0, -1.0), (1, 1.0)):
        if collided[side]:
            tilt = min(
                COLLISION_TILT_MAX,
                COLLISION_TILT_FLOOR + COLLISION_TILT_PER_M * overlaps[side],
            )
            baro = baro_from_penetration(min(overlaps[side], SATURATION_DEPTH),
                                         noise[side])
            normal = np.array([0.0, 0.0, 1.0])
        else:
            tilt = sign * NORMAL_TILT_PER_M * min(pens[side], SATURATION_DEPTH)
            baro = baro_from_penetration(pens[side], noise[side])
            normal = (np.array([sign, 0.0, 0.0]) if pens[side] > 0.0
                      else np.zeros(3))
        orientation = Quaternion.from_axis_angle((0, 1, 0), tilt)
        states.append(TactileModuleState(baro=baro, orientation=orientation,
                                         contact_normal=normal))
    return states[0], states[1], any(collided)
