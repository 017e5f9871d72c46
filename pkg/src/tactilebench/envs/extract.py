"""Peg-extraction environment with discrete end-effector primitives.

The peg sits seated in its hole; the gripper holds it above the mouth.
Eight primitives move the grip point (5 mm translations along the yawed
frame's x axis or world z) or rotate it (5 degree increments about the
in-plane y axis or about z). Peg/wall interference raises the scaled pad
pressure; exceeding the jam margin blocks the motion outright.

Reward, checked in this order: reaching the goal height ends the episode
with +1; scaled pressure above the friction threshold costs -0.5;
otherwise the height change is shaped by ``clip(10 * dh, -0.1, 0.1)``.

Observation layout (width 17): grip position (3), grip orientation
quaternion (4), two scaled pressures, and the two modules'
orientation-delta quaternions since the previous step (8).
"""

from __future__ import annotations

import json
import math
import time as _time
from dataclasses import dataclass

import numpy as np

from ..errors import SessionClosedError
from ..geometry import Quaternion, quat_delta, quat_multiply
from ..world.contact import BARO_BASELINE, BARO_MAX, PRESSURE_GAIN, NORMAL_TILT_PER_M
from ..world.objects import (
    DEFAULT_ARC_RADIUS,
    DEFAULT_CLEARANCE,
    DEFAULT_HOLE_DEPTH,
    DEFAULT_SLANT,
    HoleChannel,
)
from ..world.peg import PegRig

ACTIONS = ("+x", "-x", "+z", "-z", "+rotY", "-rotY", "+rotZ", "-rotZ")
N_ACTIONS = len(ACTIONS)
OBSERVATION_WIDTH = 17

PLACEMENT_YAWS_DEG = (0.0, 45.0, 90.0, 135.0)


@dataclass(frozen=True)
class ExtractEnvConfig:
    peg: str = "vertical"
    placement_yaw_deg: float = 0.0
    translation_step: float = 0.005
    rotation_step_deg: float = 5.0
    max_steps: int = 64
    friction_threshold: float = 0.5   # scaled pressure in [0, 1]
    goal_margin: float = 0.02
    grip_squeeze: float = 0.0005
    jam_interference: float = 0.0018
    reward_friction: float = -0.5
    reward_success: float = 1.0
    height_gain: float = 10.0
    height_clip: float = 0.1
    hole_depth: float = DEFAULT_HOLE_DEPTH
    clearance: float = DEFAULT_CLEARANCE
    slant: float = DEFAULT_SLANT
    arc_radius: float = DEFAULT_ARC_RADIUS
    grip_span: float = 0.06
    workspace_halfwidth: float = 0.08


@dataclass(frozen=True)
class DemoRecord:
    obs: np.ndarray
    action_onehot: np.ndarray

    def to_dict(self):
        return {
            "obs": [float(v) for v in self.obs],
            "action_onehot": [int(v) for v in self.action_onehot],
        }

    @staticmethod
    def from_dict(d):
        onehot = np.asarray(d["action_onehot"], dtype=float)
        if int(onehot.sum()) != 1 or not np.all((onehot == 0) | (onehot == 1)):
            raise ValueError("action_onehot must have exactly one nonzero entry")
        return DemoRecord(obs=np.asarray(d["obs"], dtype=float), action_onehot=onehot)


def one_hot(index: int) -> np.ndarray:
    v = np.zeros(N_ACTIONS)
    v[index] = 1.0
    return v


class ExtractEnv:
    observation_width = OBSERVATION_WIDTH
    n_actions = N_ACTIONS

    def __init__(self, config: ExtractEnvConfig = ExtractEnvConfig(), seed: int = 0):
        self.config = config
        self._seed = int(seed)
        self.rng = np.random.default_rng(seed)
        self.done = True
        self.steps = 0
        self._session = None
        self.reset()

    # -- environment core ---------------------------------------------

    def reset(self, seed: int | None = None):
        if seed is not None:
            self._seed = int(seed)
            self.rng = np.random.default_rng(seed)
        cfg = self.config
        yaw0 = math.radians(cfg.placement_yaw_deg)
        channel = HoleChannel(
            profile=cfg.peg,
            depth=cfg.hole_depth,
            clearance=cfg.clearance,
            slant=cfg.slant,
            arc_radius=cfg.arc_radius,
        )
        self.rig = PegRig(channel, placement_yaw=yaw0, grip_span=cfg.grip_span)
        self.grip = self.rig.grip_home.copy()
        self.yaw = yaw0
        self.tilt = 0.0
        self.goal_height = self.rig.grip_home[2] + cfg.hole_depth + cfg.goal_margin
        self.steps = 0
        self.done = False
        self._interference = 0.0
        mods = self._module_orientations(0.0)
        self._prev_modules = mods
        self._modules = mods
        return self._observation()

    def _module_orientations(self, signed_interference: float):
        base = quat_multiply(
            Quaternion.from_axis_angle((0, 0, 1), self.yaw),
            Quaternion.from_axis_angle((0, 1, 0), self.tilt),
        )
        tilt = NORMAL_TILT_PER_M * signed_interference
        return (
            quat_multiply(base, Quaternion.from_axis_angle((0, 1, 0), tilt)),
            quat_multiply(base, Quaternion.from_axis_angle((0, 1, 0), -tilt)),
        )

    def scaled_pressure(self) -> float:
        baro = BARO_BASELINE + PRESSURE_GAIN * (
            self.config.grip_squeeze + self._interference
        )
        return float(min(1.0, max(0.0, min(baro, BARO_MAX) / BARO_MAX)))

    def _observation(self):
        p = self.scaled_pressure()
        ee_q = quat_multiply(
            Quaternion.from_axis_angle((0, 0, 1), self.yaw),
            Quaternion.from_axis_angle((0, 1, 0), self.tilt),
        )
        deltas = [
            quat_delta(cur, prev).as_array()
            for cur, prev in zip(self._modules, self._prev_modules)
        ]
        return np.concatenate([
            self.grip,
            ee_q.as_array(),
            [p, p],
            deltas[0],
            deltas[1],
        ])

    def _apply(self, index: int, grip, yaw, tilt):
        cfg = self.config
        grip = grip.copy()
        rot = math.radians(cfg.rotation_step_deg)
        if index == 0 or index == 1:
            sign = 1.0 if index == 0 else -1.0
            grip[0] += sign * cfg.translation_step * math.cos(yaw)
            grip[1] += sign * cfg.translation_step * math.sin(yaw)
        elif index == 2 or index == 3:
            grip[2] += cfg.translation_step if index == 2 else -cfg.translation_step
        elif index == 4 or index == 5:
            tilt += rot if index == 4 else -rot
        else:
            yaw += rot if index == 6 else -rot
        clipped = False
        for axis in range(2):
            lo = self.rig.origin[axis] - cfg.workspace_halfwidth
            hi = self.rig.origin[axis] + cfg.workspace_halfwidth
            if grip[axis] < lo or grip[axis] > hi:
                grip[axis] = min(hi, max(lo, grip[axis]))
                clipped = True
        if grip[2] > self.goal_height + 0.05:
            grip[2] = self.goal_height + 0.05
            clipped = True
        return grip, yaw, tilt, clipped

    def action_index(self, action) -> int:
        if isinstance(action, str):
            if action not in ACTIONS:
                raise ValueError(f"unknown action token {action!r}")
            return ACTIONS.index(action)
        idx = int(action)
        if not 0 <= idx < N_ACTIONS:
            raise ValueError(f"action index {idx} out of range")
        return idx

    def _candidate(self, idx, grip, yaw, tilt, inter0):
        """Wedge-aware outcome of one action from a hypothetical state."""
        grip2, yaw2, tilt2, _ = self._apply(idx, grip, yaw, tilt)
        inter, floor = self.rig.interference(grip2, yaw2, tilt2)
        level = friction_interference_level(self.config)
        blocked = (floor or inter > self.config.jam_interference
                   or (inter0 > level and inter >= inter0 - 1e-12))
        return grip2, yaw2, tilt2, inter, floor, blocked

    def peek(self, action):
        """Hypothetical (interference, hit_floor, jammed, dz) for an action."""
        idx = self.action_index(action)
        grip, yaw, tilt, inter, floor, blocked = self._candidate(
            idx, self.grip, self.yaw, self.tilt, self._interference
        )
        return inter, floor, blocked, grip[2] - self.grip[2]

    def peek_sequence(self, actions):
        """Outcome of a short hypothetical action sequence.

        Returns ``(final interference, any step blocked, total dz)``;
        blocked steps leave the hypothetical state unchanged.
        """
        grip, yaw, tilt = self.grip, self.yaw, self.tilt
        inter0 = self._interference
        any_blocked = False
        for action in actions:
            idx = self.action_index(action)
            g2, y2, t2, inter, floor, blocked = self._candidate(
                idx, grip, yaw, tilt, inter0
            )
            if blocked:
                any_blocked = True
            else:
                grip, yaw, tilt, inter0 = g2, y2, t2, inter
        return inter0, any_blocked, grip[2] - self.grip[2]

    def step(self, action):
        if self.done:
            raise RuntimeError("episode is done; call reset()")
        idx = self.action_index(action)
        cfg = self.config
        prev_height = self.grip[2]
        grip, yaw, tilt, clipped = self._apply(idx, self.grip, self.yaw, self.tilt)
        inter, floor = self.rig.interference(grip, yaw, tilt)
        level = friction_interference_level(cfg)
        jammed = floor or inter > cfg.jam_interference
        # wedged: a peg already pressed against the wall cannot slide
        # unless the move relieves the contact
        wedged = (self._interference > level
                  and inter >= self._interference - 1e-12)
        if jammed:
            # motion blocked against the wall or floor; pads read the
            # contact at the jam level
            self._interference = max(self._interference, cfg.jam_interference)
        elif wedged:
            jammed = True
        else:
            self.grip, self.yaw, self.tilt = grip, yaw, tilt
            self._interference = inter

        signed = self._interference * (1.0 if idx % 2 == 0 else -1.0)
        self._prev_modules = self._modules
        self._modules = self._module_orientations(signed)
        self.steps += 1

        dh = self.grip[2] - prev_height
        if self.grip[2] >= self.goal_height:
            reward, case = cfg.reward_success, "success"
            self.done = True
        elif self.scaled_pressure() > cfg.friction_threshold:
            reward, case = cfg.reward_friction, "friction"
        else:
            reward = float(np.clip(cfg.height_gain * dh,
                                   -cfg.height_clip, cfg.height_clip))
            case = "shaped"
        if self.steps >= cfg.max_steps:
            self.done = True

        obs = self._observation()
        info = {
            "case": case,
            "interference": self._interference,
            "jammed": jammed,
            "clipped": clipped,
            "height": float(self.grip[2]),
            "steps": self.steps,
        }
        if self._session is not None:
            self._session["pending"] = None
        return obs, reward, self.done, info

    # -- teleoperation sessions ----------------------------------------

    def start_recording(self, path, timestamp: float | None = None):
        if self._session is not None:
            raise RuntimeError("a recording session is already open")
        header = {
            "peg": self.config.peg,
            "yaw": self.config.placement_yaw_deg,
            "seed": self._seed,
            "timestamp": _time.time() if timestamp is None else timestamp,
        }
        fh = open(path, "w")
        fh.write(json.dumps({"header": header}, sort_keys=True) + "\n")
        fh.flush()
        self._session = {"fh": fh, "path": str(path), "count": 0, "pending": None}
        return header

    def teleop_step(self, key):
        """Same contract as step(), plus a DemoRecord appended in order."""
        if self._session is None:
            raise SessionClosedError("no recording session is open")
        idx = self.action_index(key)
        record = DemoRecord(obs=self._observation(), action_onehot=one_hot(idx))
        result = self.step(idx)
        fh = self._session["fh"]
        fh.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
        fh.flush()
        self._session["count"] += 1
        return result

    def stop_recording(self):
        if self._session is None:
            raise SessionClosedError("no recording session is open")
        fh = self._session["fh"]
        path = self._session["path"]
        count = self._session["count"]
        fh.close()
        self._session = None
        return path, count

    @property
    def recording(self) -> bool:
        return self._session is not None


def load_demo_session(path):
    """Returns ``(header, records)`` from a session JSONL file."""
    header, records = None, []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            doc = json.loads(line)
            if "header" in doc:
                header = doc["header"]
            else:
                records.append(DemoRecord.from_dict(doc))
    return header, records


def replay_session(path, config: ExtractEnvConfig | None = None):
    """Re-run a recorded session headlessly; returns the observation
    sequence produced by stepping the recorded actions from a fresh
    reset with the recorded seed."""
    header, records = load_demo_session(path)
    cfg = config or ExtractEnvConfig()
    if header is not None:
        cfg = ExtractEnvConfig(**{
            **cfg.__dict__,
            "peg": header["peg"],
            "placement_yaw_deg": header["yaw"],
        })
    env = ExtractEnv(cfg, seed=int(header["seed"]) if header else 0)
    observed = [env._observation()]
    for rec in records:
        idx = int(np.argmax(rec.action_onehot))
        obs, _, done, _ = env.step(idx)
        observed.append(obs)
        if done:
            break
    return header, records, observed


def friction_interference_level(config: ExtractEnvConfig) -> float:
    """Interference depth at which scaled pressure crosses the threshold."""
    return (
        (config.friction_threshold * BARO_MAX - BARO_BASELINE) / PRESSURE_GAIN
        - config.grip_squeeze
    )


_INVERSE = {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4, 6: 7, 7: 6}


def scripted_policy(env: ExtractEnv, last_action: int | None = None) -> int:
    """Deterministic teleoperator: greedy one-step lookahead.

    Preference order: a clean lifting action; a lifting action that rubs
    the wall when nothing clean advances; otherwise the repositioning
    action with the least contact, never immediately undoing the previous
    move. Ties break by action order.
    """
    level = friction_interference_level(env.config)
    candidates = []
    for idx in range(N_ACTIONS):
        inter, floor, jammed, dz = env.peek(idx)
        if floor or jammed:
            continue
        candidates.append((idx, inter, dz))
    if not candidates:
        return 3  # back down against a hard jam

    lifting_clean = [c for c in candidates if c[2] > 0 and c[1] <= level]
    if lifting_clean:
        return min(lifting_clean, key=lambda c: (c[1], c[0]))[0]

    # a clean repositioning move that unlocks a clean lift next step
    forbidden = _INVERSE.get(last_action)
    unlocking = []
    for idx, inter, dz in candidates:
        if dz != 0.0 or inter > level or idx == forbidden:
            continue
        nxt_inter, blocked, nxt_dz = env.peek_sequence([idx, 2])
        if not blocked and nxt_dz > 0 and nxt_inter <= level:
            unlocking.append((idx, nxt_inter, inter))
    if unlocking:
        return min(unlocking, key=lambda c: (c[1], c[2], c[0]))[0]

    lifting = [c for c in candidates if c[2] > 0]
    if lifting:
        return min(lifting, key=lambda c: (c[1], c[0]))[0]
    repositioning = [c for c in candidates if c[0] != forbidden]
    if not repositioning:
        repositioning = candidates
    return min(repositioning, key=lambda c: (c[1], c[0]))[0]
