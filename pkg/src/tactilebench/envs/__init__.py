from .extract import (
    ACTIONS,
    N_ACTIONS,
    PLACEMENT_YAWS_DEG,
    DemoRecord,
    ExtractEnv,
    ExtractEnvConfig,
    friction_interference_level,
    load_demo_session,
    one_hot,
    replay_session,
    scripted_policy,
)
from .grasp import GraspEnv, GraspEnvConfig, compute_reward

__all__ = [
    "ACTIONS",
    "DemoRecord",
    "ExtractEnv",
    "ExtractEnvConfig",
    "GraspEnv",
    "GraspEnvConfig",
    "N_ACTIONS",
    "PLACEMENT_YAWS_DEG",
    "compute_reward",
    "friction_interference_level",
    "load_demo_session",
    "one_hot",
    "replay_session",
    "scripted_policy",
]
