/**
 * Canvas rendering of the scene from one snapshot: a side view of the
 * peg in its hole, a top view of the placement, pressure gauges, and a
 * reward chart. Pure functions over a minimal drawing interface so
 * tests can record calls without a DOM.
 */

import { Snapshot } from "./protocol.js";
import { MetricsPoint } from "./state.js";

export interface Draw2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  strokeRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  set strokeStyle(v: string);
  set fillStyle(v: string);
  set lineWidth(v: number);
}

export interface Viewport {
  width: number;
  height: number;
}

/** World x/z (side view) to canvas pixels; 1 m spans the viewport. */
function sideProject(v: Viewport, x: number, z: number): [number, number] {
  const scale = v.width / 0.4;
  return [v.width / 2 + x * scale, v.height * 0.75 - z * scale];
}

export function drawSideView(ctx: Draw2D, v: Viewport, snap: Snapshot): void {
  ctx.clearRect(0, 0, v.width, v.height);

  // hole channel walls from the centerline points
  ctx.strokeStyle = "#888";
  ctx.lineWidth = 1;
  for (const side of [-1, 1]) {
    ctx.beginPath();
    snap.channel_points.forEach((p, i) => {
      const lateral = Math.hypot(p[0], p[1]) * Math.sign(p[0] || 1);
      const [cx, cy] = sideProject(v, lateral + side * snap.clearance, p[2]);
      if (i === 0) ctx.moveTo(cx, cy);
      else ctx.lineTo(cx, cy);
    });
    ctx.stroke();
  }

  // mouth line at z = 0
  ctx.strokeStyle = "#444";
  ctx.beginPath();
  const [mx0, my] = sideProject(v, -0.15, 0);
  const [mx1] = sideProject(v, 0.15, 0);
  ctx.moveTo(mx0, my);
  ctx.lineTo(mx1, my);
  ctx.stroke();

  // peg polyline
  ctx.strokeStyle = snap.interference > 0 ? "#c33" : "#26c";
  ctx.lineWidth = 3;
  ctx.beginPath();
  snap.peg_points.forEach((p, i) => {
    const lateral = Math.hypot(p[0], p[1]) * Math.sign(p[0] || 1);
    const [cx, cy] = sideProject(v, lateral, p[2]);
    if (i === 0) ctx.moveTo(cx, cy);
    else ctx.lineTo(cx, cy);
  });
  ctx.stroke();

  // goal height marker (grip height that ends the episode)
  ctx.strokeStyle = "#2a2";
  ctx.lineWidth = 1;
  ctx.beginPath();
  const [gx0, gy] = sideProject(v, -0.12, snap.goal_height);
  const [gx1] = sideProject(v, 0.12, snap.goal_height);
  ctx.moveTo(gx0, gy);
  ctx.lineTo(gx1, gy);
  ctx.stroke();

  ctx.fillStyle = "#000";
  ctx.fillText(`step ${snap.steps}`, 8, 14);
  ctx.fillText(`reward ${snap.last_reward.toFixed(2)}`, 8, 28);
  if (snap.done) ctx.fillText("episode done", 8, 42);
}

export function drawTopView(ctx: Draw2D, v: Viewport, snap: Snapshot): void {
  ctx.clearRect(0, 0, v.width, v.height);
  const scale = v.width / 0.4;
  const cx = v.width / 2;
  const cy = v.height / 2;

  // hole mouth
  ctx.strokeStyle = "#444";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.arc(cx, cy, 0.02 * scale, 0, Math.PI * 2);
  ctx.stroke();

  // placement direction ray
  const yaw = (snap.placement_yaw_deg * Math.PI) / 180;
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(cx, cy);
  ctx.lineTo(cx + Math.cos(yaw) * 0.1 * scale, cy - Math.sin(yaw) * 0.1 * scale);
  ctx.stroke();

  // grip position
  ctx.fillStyle = "#26c";
  ctx.beginPath();
  ctx.arc(cx + snap.grip[0] * scale, cy - snap.grip[1] * scale, 4, 0, Math.PI * 2);
  ctx.fill();
}

/** Horizontal bar gauges for the two scaled pressures in [0, 1]. */
export function drawPressureGauges(
  ctx: Draw2D,
  v: Viewport,
  pressures: [number, number],
  threshold = 0.5,
): void {
  ctx.clearRect(0, 0, v.width, v.height);
  const barHeight = v.height / 2 - 8;
  pressures.forEach((p, i) => {
    const y = 4 + i * (barHeight + 8);
    ctx.strokeStyle = "#444";
    ctx.strokeRect(0, y, v.width, barHeight);
    ctx.fillStyle = p > threshold ? "#c33" : "#2a2";
    ctx.fillRect(0, y, Math.max(0, Math.min(1, p)) * v.width, barHeight);
  });
}

export function drawRewardChart(
  ctx: Draw2D,
  v: Viewport,
  points: MetricsPoint[],
): void {
  ctx.clearRect(0, 0, v.width, v.height);
  if (points.length === 0) return;
  const rewards = points.map((p) => p.reward);
  const lo = Math.min(...rewards);
  const hi = Math.max(...rewards);
  const span = hi - lo || 1;
  ctx.strokeStyle = "#26c";
  ctx.lineWidth = 1;
  ctx.beginPath();
  points.forEach((p, i) => {
    const x = (i / Math.max(1, points.length - 1)) * v.width;
    const y = v.height - ((p.reward - lo) / span) * (v.height - 4) - 2;
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  ctx.stroke();
}
