/**
 * Versioned session-message schema, mirroring the service side exactly.
 *
 * Every frame is `{type, seq, payload}`; seq is strictly increasing per
 * connection and direction. `hello` is answered with a `hello` carrying
 * `{ack: true, protocol_version}`.
 */

export const PROTOCOL_VERSION = 1;

export const MESSAGE_TYPES = [
  "hello",
  "state_snapshot",
  "teleop_key",
  "record_start",
  "record_stop",
  "metrics_update",
  "error",
] as const;

export type MessageType = (typeof MESSAGE_TYPES)[number];

export interface SessionMessage {
  type: MessageType;
  seq: number;
  payload: Record<string, unknown>;
}

export interface Snapshot {
  peg: string;
  placement_yaw_deg: number;
  grip: [number, number, number];
  yaw: number;
  tilt: number;
  goal_height: number;
  hole_depth: number;
  clearance: number;
  scaled_pressures: [number, number];
  steps: number;
  done: boolean;
  interference: number;
  peg_points: number[][];
  channel_points: number[][];
  actions: string[];
  last_reward: number;
}

export class ProtocolError extends Error {}

export function validateMessage(doc: unknown): SessionMessage {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new ProtocolError("message must be a JSON object");
  }
  const keys = Object.keys(doc as object).sort();
  if (keys.join(",") !== "payload,seq,type") {
    throw new ProtocolError("message must have exactly type, seq, payload");
  }
  const msg = doc as Record<string, unknown>;
  if (!MESSAGE_TYPES.includes(msg.type as MessageType)) {
    throw new ProtocolError(`unknown message type ${String(msg.type)}`);
  }
  if (
    typeof msg.seq !== "number" ||
    !Number.isInteger(msg.seq) ||
    msg.seq < 0
  ) {
    throw new ProtocolError("seq must be a non-negative integer");
  }
  if (
    typeof msg.payload !== "object" ||
    msg.payload === null ||
    Array.isArray(msg.payload)
  ) {
    throw new ProtocolError("payload must be an object");
  }
  return msg as unknown as SessionMessage;
}

export function makeMessage(
  type: MessageType,
  seq: number,
  payload: Record<string, unknown>,
): SessionMessage {
  return validateMessage({ type, seq, payload });
}

const SNAPSHOT_NUMBER_FIELDS = [
  "placement_yaw_deg",
  "yaw",
  "tilt",
  "goal_height",
  "hole_depth",
  "clearance",
  "steps",
  "interference",
  "last_reward",
] as const;

/** Narrowing validator for snapshot payloads. */
export function asSnapshot(payload: Record<string, unknown>): Snapshot {
  for (const field of SNAPSHOT_NUMBER_FIELDS) {
    if (typeof payload[field] !== "number") {
      throw new ProtocolError(`snapshot missing numeric field ${field}`);
    }
  }
  if (typeof payload.peg !== "string") {
    throw new ProtocolError("snapshot missing peg");
  }
  if (typeof payload.done !== "boolean") {
    throw new ProtocolError("snapshot missing done flag");
  }
  const grip = payload.grip;
  if (!Array.isArray(grip) || grip.length !== 3) {
    throw new ProtocolError("snapshot grip must be a 3-vector");
  }
  const pressures = payload.scaled_pressures;
  if (!Array.isArray(pressures) || pressures.length !== 2) {
    throw new ProtocolError("snapshot needs two scaled pressures");
  }
  for (const arr of [payload.peg_points, payload.channel_points]) {
    if (!Array.isArray(arr)) {
      throw new ProtocolError("snapshot point lists must be arrays");
    }
  }
  return payload as unknown as Snapshot;
}
