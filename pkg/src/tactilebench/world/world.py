"""World state container: manipulator, object, tactile modules, clock."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError
from .contact import (
    BARO_BASELINE,
    GraspGeometry,
    TactileModuleState,
    grasp_attempt_contact,
)
from .kinematics import (
    Pose,
    forward_kinematics,
    inverse_kinematics,
    joint_positions,
)
from .objects import ObjectSpec

# Static holding efforts per joint; contact forces add on top. Purely a
# simulated signal so the observation vector has the published width.
_EFFORT_BASE = np.array([0.0, 0.8, 0.5, 0.2])
_EFFORT_CONTACT = np.array([0.1, 0.4, 0.3, 0.2])
_EFFORT_NOISE = 0.01


@dataclass
class ManipulatorState:
    joint_angles: tuple
    joint_efforts: np.ndarray
    ee_pose: Pose
    gripper_opening: float

    @staticmethod
    def home(gripper_opening: float = 0.08) -> "ManipulatorState":
        angles = (0.0, 0.0, 0.0, 0.0)
        return ManipulatorState(
            joint_angles=angles,
            joint_efforts=_EFFORT_BASE.copy(),
            ee_pose=forward_kinematics(angles),
            gripper_opening=gripper_opening,
        )

    def to_dict(self):
        return {
            "joint_angles": [float(a) for a in self.joint_angles],
            "joint_efforts": [float(e) for e in self.joint_efforts],
            "ee_pose": self.ee_pose.to_dict(),
            "gripper_opening": float(self.gripper_opening),
        }


class WorldState:
    """One deterministic simulation session.

    All randomness flows from the constructor seed, so identical action
    sequences replay to byte-identical serialized snapshots.
    """

    def __init__(self, object_spec: ObjectSpec, object_position=(0.20, 0.0, 0.0),
                 object_yaw: float = 0.0, seed: int = 0,
                 grasp_geometry: GraspGeometry | None = None):
        self.object_spec = object_spec
        self.object_position = np.asarray(object_position, dtype=float)
        self.object_yaw = float(object_yaw)
        self.rng_seed = int(seed)
        self.rng = np.random.default_rng(seed)
        self.grasp_geometry = grasp_geometry or GraspGeometry()
        self.manipulator = ManipulatorState.home()
        self.modules = (TactileModuleState(), TactileModuleState())
        self.time = 0.0

    def move_ee(self, position, pitch: float, dt: float = 0.1):
        """Reposition the end effector via inverse kinematics."""
        angles = inverse_kinematics(position, pitch)
        pose = forward_kinematics(angles)
        efforts = _EFFORT_BASE + self.rng.normal(0.0, _EFFORT_NOISE, size=4)
        self.manipulator = ManipulatorState(
            joint_angles=angles,
            joint_efforts=efforts,
            ee_pose=pose,
            gripper_opening=self.manipulator.gripper_opening,
        )
        self.time += dt
        return pose

    def attempt_grasp(self, dt: float = 0.5):
        """Descend, close the gripper, and read the contact outcome.

        Contact is resolved along x between the end effector and the
        object center. Updates the module states and joint efforts.
        """
        dx = float(self.object_position[0] - self.manipulator.ee_pose.position[0])
        left, right, collided = grasp_attempt_contact(
            self.object_spec.half_width_x, dx, self.grasp_geometry, rng=self.rng
        )
        self.modules = (left, right)
        reaction = (max(0.0, left.baro - BARO_BASELINE)
                    + max(0.0, right.baro - BARO_BASELINE)) / 400.0
        efforts = (_EFFORT_BASE + reaction * _EFFORT_CONTACT
                   + self.rng.normal(0.0, _EFFORT_NOISE, size=4))
        self.manipulator.joint_efforts = efforts
        self.time += dt
        return left, right, collided

    def compute_contact(self):
        """Current per-module tactile state (last resolved contact)."""
        return self.modules

    def lift_check(self, threshold: float) -> bool:
        """Re-read both pads during a simulated lift.

        The rigid grip keeps the penetrations, so only borderline
        contacts whose fresh sensor noise dips below the threshold slip.
        """
        dx = float(self.object_position[0] - self.manipulator.ee_pose.position[0])
        left, right, collided = grasp_attempt_contact(
            self.object_spec.half_width_x, dx, self.grasp_geometry, rng=self.rng
        )
        return (not collided) and min(left.baro, right.baro) >= threshold

    def snapshot(self) -> dict:
        links = [
            [float(v) for v in p]
            for p in joint_positions(self.manipulator.joint_angles)
        ]
        return {
            "time": float(self.time),
            "rng_seed": self.rng_seed,
            "manipulator": self.manipulator.to_dict(),
            "links": links,
            "object": {
                **self.object_spec.to_dict(),
                "position": [float(v) for v in self.object_position],
                "yaw": float(self.object_yaw),
            },
            "modules": [m.to_dict() for m in self.modules],
        }

    def snapshot_json(self) -> str:
        return json.dumps(self.snapshot(), sort_keys=True)


_WORLD_KEYS = {
    "object_kind": str,
    "object_dimensions": list,
    "object_x": float,
    "object_y": float,
    "object_yaw": float,
    "peg_profile": str,
    "seed": int,
    "approach_margin": float,
    "squeeze": float,
    "pad_thickness": float,
}


def world_from_config(config: dict) -> WorldState:
    """Build a WorldState from a flat key-value mapping.

    Unknown keys are rejected; see docs/file-formats.md for the schema.
    """
    for key in config:
        if key not in _WORLD_KEYS:
            raise ConfigError(f"unknown world config key {key!r}")
    kind = config.get("object_kind", "cuboid")
    dims = config.get("object_dimensions", [0.025, 0.025, 0.05])
    spec = ObjectSpec(
        kind=kind,
        dimensions=tuple(dims),
        peg_profile=config.get("peg_profile") if kind == "peg" else None,
        placement_yaw=float(config.get("object_yaw", 0.0)),
    )
    geometry = GraspGeometry(
        approach_margin=float(config.get("approach_margin", 0.025)),
        squeeze=float(config.get("squeeze", 0.002)),
        pad_thickness=float(config.get("pad_thickness", 0.004)),
    )
    return WorldState(
        spec,
        object_position=(
            float(config.get("object_x", 0.20)),
            float(config.get("object_y", 0.0)),
            0.0,
        ),
        object_yaw=float(config.get("object_yaw", 0.0)),
        seed=int(config.get("seed", 0)),
        grasp_geometry=geometry,
    )


def load_world_config(path) -> WorldState:
    with open(path) as fh:
        return world_from_config(json.load(fh))
