/**
 * Client-side view state. Everything displayed comes from service
 * payloads; the client never simulates. Rendering reads the latest
 * accepted snapshot, and seq regressions are discarded so replays or
 * reordered frames can never roll the view backward.
 */

import { Snapshot } from "./protocol.js";

export class SnapshotBuffer {
  private latest: Snapshot | null = null;
  private latestSeq = -1;
  discarded = 0;

  /** Returns true when the snapshot was accepted. */
  offer(seq: number, snapshot: Snapshot): boolean {
    if (seq <= this.latestSeq) {
      this.discarded += 1;
      return false;
    }
    this.latestSeq = seq;
    this.latest = snapshot;
    return true;
  }

  current(): Snapshot | null {
    return this.latest;
  }

  currentSeq(): number {
    return this.latestSeq;
  }
}

export interface MetricsPoint {
  episode: number;
  reward: number;
  steps: number;
}

export class MetricsSeries {
  points: MetricsPoint[] = [];

  append(payload: Record<string, unknown>): void {
    const episode = payload.episode;
    const reward = payload.reward;
    const steps = payload.steps;
    if (
      typeof episode === "number" &&
      typeof reward === "number" &&
      typeof steps === "number"
    ) {
      this.points.push({ episode, reward, steps });
    }
  }
}

export interface SessionInfo {
  peg: string;
  yaw: number;
  path: string | null;
  steps: number;
  totalReward: number;
  active: boolean;
}

/** Recording-session bookkeeping plus the demo checklist. */
export class SessionTracker {
  session: SessionInfo | null = null;
  completed: { peg: string; yaw: number; path: string }[] = [];

  start(peg: string, yaw: number): void {
    if (this.session?.active) {
      throw new Error("a session is already active");
    }
    this.session = {
      peg,
      yaw,
      path: null,
      steps: 0,
      totalReward: 0,
      active: true,
    };
  }

  confirmStarted(path: string): void {
    if (this.session) {
      this.session.path = path;
    }
  }

  /**
   * Sync step count and running reward from a snapshot: displayed
   * numbers always originate from service payloads.
   */
  observeSnapshot(steps: number, lastReward: number): void {
    if (this.session?.active && steps > this.session.steps) {
      this.session.steps = steps;
      this.session.totalReward += lastReward;
    }
  }

  stop(path: string): void {
    if (this.session) {
      this.session.active = false;
      this.completed.push({
        peg: this.session.peg,
        yaw: this.session.yaw,
        path,
      });
    }
  }

  /** Sessions done per placement yaw, for the 3-per-yaw checklist. */
  checklist(peg: string, yaws: number[], per: number): Map<number, number> {
    const counts = new Map<number, number>();
    for (const yaw of yaws) {
      counts.set(
        yaw,
        Math.min(
          per,
          this.completed.filter((c) => c.peg === peg && c.yaw === yaw).length,
        ),
      );
    }
    return counts;
  }

  checklistComplete(peg: string, yaws: number[], per: number): boolean {
    const counts = this.checklist(peg, yaws, per);
    return yaws.every((yaw) => (counts.get(yaw) ?? 0) >= per);
  }
}
