/**
 * WebSocket session client: hello handshake with protocol-version
 * check, latest-snapshot buffering, keystroke forwarding with a
 * client-side rate limit, and automatic reconnect with a visible
 * connection status.
 */

import {
  PROTOCOL_VERSION,
  SessionMessage,
  asSnapshot,
  makeMessage,
  validateMessage,
} from "./protocol.js";
import { MetricsSeries, SessionTracker, SnapshotBuffer } from "./state.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export type ClientStatus =
  | "connecting"
  | "connected"
  | "version-mismatch"
  | "disconnected";

export interface ClientOptions {
  /** Minimum milliseconds between forwarded keystrokes (10 Hz default). */
  minKeyIntervalMs?: number;
  reconnectDelayMs?: number;
  now?: () => number;
}

export class TeleopClient {
  readonly snapshots = new SnapshotBuffer();
  readonly metrics = new MetricsSeries();
  readonly sessions = new SessionTracker();
  status: ClientStatus = "disconnected";
  lastError: string | null = null;
  onchange: (() => void) | null = null;

  private socket: SocketLike | null = null;
  private outSeq = 0;
  private lastKeyAt = -Infinity;
  private readonly minKeyInterval: number;
  private readonly now: () => number;

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
    options: ClientOptions = {},
  ) {
    this.minKeyInterval = options.minKeyIntervalMs ?? 100;
    this.now = options.now ?? (() => Date.now());
  }

  connect(): void {
    this.status = "connecting";
    this.notify();
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.send("hello", {});
    };
    socket.onmessage = (ev) => this.handleFrame(ev.data);
    socket.onclose = () => {
      if (this.status !== "version-mismatch") {
        this.status = "disconnected";
      }
      this.notify();
    };
  }

  disconnect(): void {
    this.socket?.close();
    this.socket = null;
    this.status = "disconnected";
    this.notify();
  }

  private notify(): void {
    this.onchange?.();
  }

  private send(type: SessionMessage["type"], payload: Record<string, unknown>): void {
    this.socket?.send(JSON.stringify(makeMessage(type, this.outSeq++, payload)));
  }

  handleFrame(data: string): void {
    let msg: SessionMessage;
    try {
      msg = validateMessage(JSON.parse(data));
    } catch (err) {
      this.lastError = String(err);
      this.notify();
      return;
    }
    switch (msg.type) {
      case "hello": {
        const version = msg.payload.protocol_version;
        if (version !== PROTOCOL_VERSION) {
          this.status = "version-mismatch";
          this.lastError = `server speaks protocol ${String(version)}, client ${PROTOCOL_VERSION}`;
          this.socket?.close();
        } else {
          this.status = "connected";
        }
        break;
      }
      case "state_snapshot": {
        try {
          const snap = asSnapshot(msg.payload);
          if (this.snapshots.offer(msg.seq, snap)) {
            this.sessions.observeSnapshot(snap.steps, snap.last_reward);
          }
        } catch (err) {
          this.lastError = String(err);
        }
        break;
      }
      case "metrics_update":
        this.metrics.append(msg.payload);
        break;
      case "record_start": {
        const path = msg.payload.path;
        if (typeof path === "string") {
          this.sessions.confirmStarted(path);
        }
        break;
      }
      case "record_stop": {
        const path = msg.payload.path;
        if (typeof path === "string") {
          this.sessions.stop(path);
        }
        break;
      }
      case "error":
        this.lastError = `${String(msg.payload.code)}: ${String(msg.payload.message)}`;
        break;
      default:
        break;
    }
    this.notify();
  }

  /** Forward a keystroke action; rate-limited to keep demos human-scaled. */
  sendKey(action: string): boolean {
    const t = this.now();
    if (t - this.lastKeyAt < this.minKeyInterval) {
      return false;
    }
    this.lastKeyAt = t;
    this.send("teleop_key", { key: action });
    return true;
  }

  startRecording(peg: string, yaw: number, tag: string, seed: number): void {
    this.sessions.start(peg, yaw);
    this.send("record_start", { peg, yaw, tag, seed });
  }

  stopRecording(): void {
    this.send("record_stop", {});
  }
}
