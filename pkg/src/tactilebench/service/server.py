"""WebSocket session service hosting one teleoperation environment.

One environment instance, one writer: the first connection to claim
recording holds the pen until it stops; everyone connected receives the
state snapshots. Demo files land under the data root (the
``TACTILEBENCH_DATA_ROOT`` environment variable, default ``./data``).
"""

from __future__ import annotations

import math
import os
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from ..envs import ACTIONS, ExtractEnv, ExtractEnvConfig
from .protocol import PROTOCOL_VERSION, dumps, make_message, validate_message


def data_root() -> Path:
    return Path(os.environ.get("TACTILEBENCH_DATA_ROOT", "data"))


def extract_snapshot(env: ExtractEnv) -> dict:
    """Self-contained scene description for rendering one frame."""
    cfg = env.config
    pts = env.rig.points(env.grip, env.yaw, env.tilt)
    channel = []
    n = 17
    for i in range(n):
        h = cfg.hole_depth * i / (n - 1)
        lat = env.rig.channel.lateral(h)
        channel.append([
            env.rig.origin[0] + lat * math.cos(env.rig.placement_yaw),
            env.rig.origin[1] + lat * math.sin(env.rig.placement_yaw),
            h - cfg.hole_depth,
        ])
    p = env.scaled_pressure()
    return {
        "peg": cfg.peg,
        "placement_yaw_deg": cfg.placement_yaw_deg,
        "grip": [float(v) for v in env.grip],
        "yaw": float(env.yaw),
        "tilt": float(env.tilt),
        "goal_height": float(env.goal_height),
        "hole_depth": float(cfg.hole_depth),
        "clearance": float(cfg.clearance),
        "scaled_pressures": [p, p],
        "steps": int(env.steps),
        "done": bool(env.done),
        "interference": float(env._interference),
        "peg_points": [[float(v) for v in row] for row in pts],
        "channel_points": channel,
        "actions": list(ACTIONS),
        "last_reward": float(getattr(env, "last_reward", 0.0)),
    }


class SessionHub:
    """Connection registry, write lock, and per-connection sequencing."""

    def __init__(self, env: ExtractEnv):
        self.env = env
        self.connections: dict[WebSocket, int] = {}
        self.writer: WebSocket | None = None

    def next_seq(self, ws) -> int:
        seq = self.connections[ws]
        self.connections[ws] = seq + 1
        return seq

    async def send(self, ws, msg_type, payload):
        await ws.send_text(dumps(make_message(msg_type, self.next_seq(ws), payload)))

    async def broadcast_snapshot(self):
        payload = extract_snapshot(self.env)
        for ws in list(self.connections):
            await self.send(ws, "state_snapshot", payload)

    async def push_metrics(self, payload: dict):
        for ws in list(self.connections):
            await self.send(ws, "metrics_update", payload)


def create_app(env_config: ExtractEnvConfig | None = None,
               seed: int = 0) -> FastAPI:
    env = ExtractEnv(env_config or ExtractEnvConfig(), seed=seed)
    env.reset()
    hub = SessionHub(env)
    app = FastAPI(title="tactilebench session service")
    app.state.hub = hub

    @app.get("/healthz")
    def healthz():
        return {"ok": True, "protocol_version": PROTOCOL_VERSION}

    @app.websocket("/ws")
    async def session(ws: WebSocket):
        await ws.accept()
        hub.connections[ws] = 0
        try:
            while True:
                doc = validate_message(await ws.receive_json())
                msg_type = doc["type"]
                payload = doc["payload"]
                if msg_type == "hello":
                    await hub.send(ws, "hello", {
                        "ack": True,
                        "protocol_version": PROTOCOL_VERSION,
                    })
                    await hub.send(ws, "state_snapshot", extract_snapshot(env))
                elif msg_type == "record_start":
                    if hub.writer is not None or env.recording:
                        await hub.send(ws, "error", {
                            "code": "ConcurrentWriter",
                            "message": "another teleop session is active",
                        })
                        continue
                    peg = payload.get("peg", env.config.peg)
                    yaw = float(payload.get("yaw", env.config.placement_yaw_deg))
                    tag = str(payload.get("tag", "session"))
                    seed_ = int(payload.get("seed", 0))
                    env.config = ExtractEnvConfig(**{
                        **env.config.__dict__, "peg": peg,
                        "placement_yaw_deg": yaw,
                    })
                    env.reset(seed=seed_)
                    root = data_root() / "demos"
                    root.mkdir(parents=True, exist_ok=True)
                    path = root / f"{peg}_yaw{int(yaw)}_{tag}.jsonl"
                    header = env.start_recording(path)
                    hub.writer = ws
                    await hub.send(ws, "record_start", {
                        "header": header, "path": str(path),
                    })
                    await hub.broadcast_snapshot()
                elif msg_type == "teleop_key":
                    if hub.writer is not ws or not env.recording:
                        await hub.send(ws, "error", {
                            "code": "SessionClosed",
                            "message": "no recording session owned by this connection",
                        })
                        continue
                    key = payload.get("key")
                    if key not in ACTIONS:
                        await hub.send(ws, "error", {
                            "code": "UnknownKey",
                            "message": f"unknown action token {key!r}",
                        })
                        continue
                    if env.done:
                        await hub.send(ws, "error", {
                            "code": "EpisodeDone",
                            "message": "episode finished; stop recording",
                        })
                        continue
                    _, reward, done, info = env.teleop_step(key)
                    env.last_reward = reward
                    await hub.broadcast_snapshot()
                elif msg_type == "record_stop":
                    if hub.writer is not ws or not env.recording:
                        await hub.send(ws, "error", {
                            "code": "SessionClosed",
                            "message": "no recording session owned by this connection",
                        })
                        continue
                    path, count = env.stop_recording()
                    hub.writer = None
                    await hub.send(ws, "record_stop", {
                        "path": path, "records": count,
                    })
                else:
                    await hub.send(ws, "error", {
                        "code": "Unsupported",
                        "message": f"{msg_type} is server-to-client only",
                    })
        except WebSocketDisconnect:
            pass
        finally:
            if hub.writer is ws:
                if env.recording:
                    env.stop_recording()
                hub.writer = None
            hub.connections.pop(ws, None)

    return app
