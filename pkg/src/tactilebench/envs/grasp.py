"""Grasp-approach refinement environment.

One episode: the camera estimate of the object's x position is drawn from
a normal uncertainty model, the arm hovers over the estimate, and each
step nudges the attempt point by up to 5 mm (continuous action in
[-1, 1]), descends, closes the gripper, and reads the tactile outcome.
The episode ends on a successful verified grasp, on a descent collision,
or after 50 attempts.

Observation layout (width 9): joint efforts (4), raw barometer counts
(2), and the Euler angles of the left module's orientation relative to
the right one (3), which is zero for a symmetric grasp and flags
one-sided collisions with a signed tilt.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import ActionClampedWarning
from ..geometry import quat_delta, quat_to_euler, tilt_angle
from ..world.contact import GraspGeometry, TactileModuleState
from ..world.objects import ObjectSpec
from ..world.profiles import sample_uncertain_position
from ..world.world import WorldState

OBSERVATION_WIDTH = 9


@dataclass(frozen=True)
class GraspEnvConfig:
    object_x: float = 0.20
    sigma: float = 0.005          # +/-2 sigma spans the 0.02 m band
    step_size: float = 0.005
    max_steps: int = 50
    baro_threshold: float = 50.0
    orientation_threshold_deg: float = 5.0
    hover_height: float = 0.08
    grasp_height: float = 0.04
    reward_success: float = 0.5
    reward_fail: float = -0.1
    object_dimensions: tuple = (0.025, 0.025, 0.05)
    search_halfwidth: float = 0.045  # reachable approach corridor around the object
    geometry: GraspGeometry = field(default_factory=GraspGeometry)


def compute_reward(left: TactileModuleState, right: TactileModuleState,
                   orientation_deltas, config: GraspEnvConfig,
                   lift_holds: bool = True):
    """Reward cases, checked in order.

    (a) a module tilted past the collision threshold: -0.1
    (b) no barometer above the grasp threshold (no grasp): -0.1
    (c) exactly one barometer above threshold (offset contact): -0.1
    (d) both above threshold and the simulated lift holds: +0.5
        (a slipping lift falls back to -0.1)
    """
    thr = config.baro_threshold
    collision = max(orientation_deltas) > math.radians(
        config.orientation_threshold_deg
    )
    if collision:
        return config.reward_fail, "collision"
    over_l = left.baro > thr
    over_r = right.baro > thr
    if not over_l and not over_r:
        return config.reward_fail, "no_grasp"
    if over_l != over_r:
        return config.reward_fail, "one_sided"
    if lift_holds:
        return config.reward_success, "success"
    return config.reward_fail, "slip"


class GraspEnv:
    """reset()/step() session over one WorldState."""

    observation_width = OBSERVATION_WIDTH

    def __init__(self, config: GraspEnvConfig = GraspEnvConfig(), seed: int = 0):
        self.config = config
        self._seed = int(seed)
        self.rng = np.random.default_rng(seed)
        self.world = None
        self.steps = 0
        self.done = True
        self.last_reward = 0.0
        self._attempt_x = None

    def _observation(self):
        left, right = self.world.modules
        rel = quat_delta(left.orientation, right.orientation)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            euler = quat_to_euler(rel)
        return np.concatenate([
            self.world.manipulator.joint_efforts,
            [left.baro, right.baro],
            euler,
        ])

    def reset(self, seed: int | None = None):
        if seed is not None:
            self._seed = int(seed)
            self.rng = np.random.default_rng(seed)
        cfg = self.config
        spec = ObjectSpec("cuboid", cfg.object_dimensions)
        world_seed = int(self.rng.integers(0, 2**32))
        self.world = WorldState(
            spec,
            object_position=(cfg.object_x, 0.0, 0.0),
            seed=world_seed,
            grasp_geometry=cfg.geometry,
        )
        # retreat home, then hover above the sampled estimate
        self._attempt_x = sample_uncertain_position(cfg.object_x, cfg.sigma, self.rng)
        self.world.move_ee((self._attempt_x, 0.0, cfg.hover_height), math.pi / 2)
        self.steps = 0
        self.done = False
        self.last_reward = 0.0
        return self._observation()

    @property
    def attempt_x(self):
        return self._attempt_x

    def step(self, action: float):
        if self.done:
            raise RuntimeError("episode is done; call reset()")
        a = float(np.asarray(action).reshape(()))
        if not -1.0 <= a <= 1.0:
            warnings.warn(f"action {a} clamped to [-1, 1]", ActionClampedWarning)
            a = max(-1.0, min(1.0, a))
        cfg = self.config
        # the base-yaw sweep projects onto the object's x axis; hovering
        # straight over the object line the projection factor is 1
        orient_proj = math.cos(self.world.manipulator.joint_angles[0]) or 1.0
        target = self._attempt_x + orient_proj * cfg.step_size * a
        lo = cfg.object_x - cfg.search_halfwidth
        hi = cfg.object_x + cfg.search_halfwidth
        clipped = target < lo or target > hi
        self._attempt_x = min(hi, max(lo, target))

        self.world.move_ee((self._attempt_x, 0.0, cfg.grasp_height), math.pi / 2)
        left, right, _ = self.world.attempt_grasp()
        deltas = (tilt_angle(left.orientation), tilt_angle(right.orientation))
        lift_holds = self.world.lift_check(cfg.baro_threshold)
        reward, case = compute_reward(left, right, deltas, cfg, lift_holds)
        self.steps += 1
        self.last_reward = reward

        self.done = (
            case in ("success", "collision") or self.steps >= cfg.max_steps
        )
        obs = self._observation()
        # retreat to hover for the next attempt
        if not self.done:
            self.world.move_ee((self._attempt_x, 0.0, cfg.hover_height), math.pi / 2)
        info = {
            "case": case,
            "attempt_x": self._attempt_x,
            "offset": self.world.object_position[0] - self._attempt_x,
            "steps": self.steps,
            "clipped": clipped,
        }
        return obs, reward, self.done, info
