from .contact import (
    BARO_BASELINE,
    BARO_MAX,
    PRESSURE_GAIN,
    GraspGeometry,
    TactileModuleState,
    baro_from_penetration,
    grasp_attempt_contact,
)
from .kinematics import (
    LINK_LENGTHS,
    Pose,
    forward_kinematics,
    inverse_kinematics,
    joint_positions,
)
from .objects import (
    CYLINDER_DIAMETERS,
    DEFAULT_ARC_RADIUS,
    DEFAULT_CLEARANCE,
    DEFAULT_HOLE_DEPTH,
    DEFAULT_SLANT,
    HoleChannel,
    ObjectSpec,
    make_channel,
)
from .peg import PegRig
from .profiles import (
    REFERENCE_YAW,
    RotationTrial,
    external_rotation_profile,
    sample_uncertain_position,
)
from .world import ManipulatorState, WorldState, load_world_config, world_from_config

__all__ = [
    "BARO_BASELINE",
    "BARO_MAX",
    "CYLINDER_DIAMETERS",
    "DEFAULT_ARC_RADIUS",
    "DEFAULT_CLEARANCE",
    "DEFAULT_HOLE_DEPTH",
    "DEFAULT_SLANT",
    "GraspGeometry",
    "HoleChannel",
    "LINK_LENGTHS",
    "ManipulatorState",
    "ObjectSpec",
    "PegRig",
    "Pose",
    "PRESSURE_GAIN",
    "REFERENCE_YAW",
    "RotationTrial",
    "TactileModuleState",
    "WorldState",
    "baro_from_penetration",
    "external_rotation_profile",
    "forward_kinematics",
    "grasp_attempt_contact",
    "inverse_kinematics",
    "joint_positions",
    "load_world_config",
    "make_channel",
    "sample_uncertain_position",
    "world_from_config",
]
