import { describe, expect, it } from "vitest";

import { Snapshot } from "../src/protocol.js";
import { MetricsSeries, SessionTracker, SnapshotBuffer } from "../src/state.js";

function snap(steps: number, reward = 0): Snapshot {
  return {
    peg: "slanted",
    placement_yaw_deg: 0,
    grip: [0, 0, 0.02],
    yaw: 0,
    tilt: 0,
    goal_height: 0.08,
    hole_depth: 0.04,
    clearance: 0.0035,
    scaled_pressures: [0.2, 0.2],
    steps,
    done: false,
    interference: 0,
    peg_points: [[0, 0, -0.04], [0, 0, 0.02]],
    channel_points: [[0, 0, -0.04], [0, 0, 0]],
    actions: ["+x"],
    last_reward: reward,
  };
}

describe("SnapshotBuffer", () => {
  it("keeps the latest snapshot", () => {
    const buf = new SnapshotBuffer();
    expect(buf.offer(1, snap(1))).toBe(true);
    expect(buf.offer(2, snap(2))).toBe(true);
    expect(buf.current()?.steps).toBe(2);
  });

  it("discards seq regressions without changing the view", () => {
    const buf = new SnapshotBuffer();
    buf.offer(5, snap(3));
    expect(buf.offer(4, snap(99))).toBe(false);
    expect(buf.offer(5, snap(99))).toBe(false);
    expect(buf.current()?.steps).toBe(3);
    expect(buf.discarded).toBe(2);
  });
});

describe("MetricsSeries", () => {
  it("appends points from metrics_update payloads", () => {
    const series = new MetricsSeries();
    series.append({ episode: 0, reward: -0.4, steps: 17 });
    series.append({ episode: 1, reward: 1.1, steps: 12 });
    expect(series.points.length).toBe(2);
    expect(series.points[1].reward).toBe(1.1);
  });

  it("ignores malformed payloads", () => {
    const series = new MetricsSeries();
    series.append({ episode: "x", reward: 1, steps: 2 });
    expect(series.points.length).toBe(0);
  });
});

describe("SessionTracker", () => {
  it("tracks steps and running reward from snapshots only", () => {
    const t = new SessionTracker();
    t.start("slanted", 45);
    t.observeSnapshot(1, 0.05);
    t.observeSnapshot(2, -0.5);
    t.observeSnapshot(2, -0.5); // repeated frame: no double count
    expect(t.session?.steps).toBe(2);
    expect(t.session?.totalReward).toBeCloseTo(-0.45);
  });

  it("refuses overlapping sessions", () => {
    const t = new SessionTracker();
    t.start("slanted", 0);
    expect(() => t.start("slanted", 45)).toThrow();
  });

  it("tracks the 3x4 checklist for the slanted peg", () => {
    const t = new SessionTracker();
    const yaws = [0, 45, 90, 135];
    for (const yaw of yaws) {
      for (let rep = 0; rep < 3; rep++) {
        t.start("slanted", yaw);
        t.stop(`slanted_${yaw}_${rep}.jsonl`);
      }
    }
    expect(t.completed.length).toBe(12);
    expect(t.checklistComplete("slanted", yaws, 3)).toBe(true);
    expect(t.checklistComplete("curved", yaws, 3)).toBe(false);
  });
});
