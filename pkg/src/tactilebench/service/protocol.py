"""Versioned session-message schema for the live wire protocol.

Every frame is a JSON object ``{"type", "seq", "payload"}``. ``seq`` is
strictly increasing per connection and direction. ``hello`` is answered
with a ``hello`` carrying ``{"ack": true, "protocol_version": N}``.
Snapshots are self-contained: a client can render frame N from that
frame alone. The byte-exact schema is documented in docs/protocol.md.
"""

from __future__ import annotations

import json

PROTOCOL_VERSION = 1

MESSAGE_TYPES = (
    "hello",
    "state_snapshot",
    "teleop_key",
    "record_start",
    "record_stop",
    "metrics_update",
    "error",
)


class ProtocolError(ValueError):
    pass


def make_message(msg_type: str, seq: int, payload: dict) -> dict:
    if msg_type not in MESSAGE_TYPES:
        raise ProtocolError(f"unknown message type {msg_type!r}")
    return {"type": msg_type, "seq": int(seq), "payload": payload}


def validate_message(doc) -> dict:
    if not isinstance(doc, dict):
        raise ProtocolError("message must be a JSON object")
    if set(doc) != {"type", "seq", "payload"}:
        raise ProtocolError("message must have exactly type, seq, payload")
    if doc["type"] not in MESSAGE_TYPES:
        raise ProtocolError(f"unknown message type {doc['type']!r}")
    if not isinstance(doc["seq"], int) or doc["seq"] < 0:
        raise ProtocolError("seq must be a non-negative integer")
    if not isinstance(doc["payload"], dict):
        raise ProtocolError("payload must be an object")
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)
