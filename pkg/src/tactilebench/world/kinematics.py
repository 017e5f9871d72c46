"""Forward/inverse kinematics for the 4-DoF yaw + 3-pitch manipulator.

Joint 1 yaws the whole arm about the world z axis; joints 2-4 pitch about
the local y axis of the yawed plane. Link lengths follow the published
OpenMANIPULATOR-X-like chain; every consumer of this module only relies on
the chain being self-consistent.

With all pitch angles zero the arm points straight out along +x at the
base-lift height, so the home pose is ``(l2+l3+l4, 0, l1)`` with identity
orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import JointLimitError, WorkspaceLimitError
from ..geometry import Quaternion, quat_multiply

LINK_LENGTHS = (0.077, 0.140, 0.140, 0.126)

JOINT_LIMITS = (
    (-math.pi, math.pi),
    (-2.4, 2.4),
    (-2.4, 2.4),
    (-2.4, 2.4),
)


@dataclass(frozen=True)
class Pose:
    position: np.ndarray
    orientation: Quaternion

    def to_dict(self):
        q = self.orientation
        return {
            "position": [float(v) for v in self.position],
            "orientation": [q.w, q.x, q.y, q.z],
        }


def check_joint_limits(joint_angles):
    for i, (angle, (lo, hi)) in enumerate(zip(joint_angles, JOINT_LIMITS)):
        if not (lo <= angle <= hi):
            raise JointLimitError(
                f"joint {i + 1} angle {angle:.4f} outside [{lo:.3f}, {hi:.3f}]"
            )


def joint_positions(joint_angles, links=LINK_LENGTHS):
    """World positions of base, shoulder, elbow, wrist, end effector."""
    check_joint_limits(joint_angles)
    t1, t2, t3, t4 = joint_angles
    l1, l2, l3, l4 = links
    pts = [np.array([0.0, 0.0, 0.0]), np.array([0.0, 0.0, l1])]
    r, z = 0.0, l1
    cum = 0.0
    for length, theta in ((l2, t2), (l3, t3), (l4, t4)):
        cum += theta
        r += length * math.cos(cum)
        z -= length * math.sin(cum)
        pts.append(np.array([r * math.cos(t1), r * math.sin(t1), z]))
    return pts


def forward_kinematics(joint_angles, links=LINK_LENGTHS) -> Pose:
    pts = joint_positions(joint_angles, links)
    t1 = joint_angles[0]
    pitch = joint_angles[1] + joint_angles[2] + joint_angles[3]
    orientation = quat_multiply(
        Quaternion.from_axis_angle((0, 0, 1), t1),
        Quaternion.from_axis_angle((0, 1, 0), pitch),
    )
    return Pose(position=pts[-1], orientation=orientation)


def inverse_kinematics(position, pitch, links=LINK_LENGTHS):
    """Joint angles reaching ``position`` with total pitch ``pitch``.

    Uses the elbow-up branch. Raises WorkspaceLimitError when the target
    is outside the planar reach and JointLimitError if the solution
    violates a joint limit.
    """
    x, y, z = (float(v) for v in position)
    l1, l2, l3, l4 = links
    t1 = math.atan2(y, x)
    r = math.hypot(x, y)
    # Wrist center, pulled back along the end-effector direction.
    rw = r - l4 * math.cos(pitch)
    # In the planar frame the "down" axis is positive pitch.
    dw = -(z - l1) - l4 * math.sin(pitch)
    d2 = rw * rw + dw * dw
    cos_t3 = (d2 - l2 * l2 - l3 * l3) / (2.0 * l2 * l3)
    if abs(cos_t3) > 1.0:
        raise WorkspaceLimitError(
            f"target {position} with pitch {pitch:.3f} is unreachable"
        )
    t3 = math.atan2(math.sqrt(1.0 - cos_t3 * cos_t3), cos_t3)
    t2 = math.atan2(dw, rw) - math.atan2(
        l3 * math.sin(t3), l2 + l3 * math.cos(t3)
    )
    t4 = pitch - t2 - t3
    angles = (t1, t2, t3, t4)
    check_joint_limits(angles)
    return angles
