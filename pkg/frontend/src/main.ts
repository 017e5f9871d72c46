/** Browser entry: wires the canvases, keyboard, and session controls. */

import { TeleopClient } from "./client.js";
import { KeyBindings } from "./keybindings.js";
import {
  Draw2D,
  drawPressureGauges,
  drawRewardChart,
  drawSideView,
  drawTopView,
} from "./render.js";

const YAWS = [0, 45, 90, 135];
const SESSIONS_PER_YAW = 3;

function canvasCtx(id: string): { ctx: Draw2D; w: number; h: number } {
  const canvas = document.getElementById(id) as HTMLCanvasElement;
  const ctx = canvas.getContext("2d") as unknown as Draw2D;
  return { ctx, w: canvas.width, h: canvas.height };
}

function text(id: string, value: string): void {
  const el = document.getElementById(id);
  if (el) el.textContent = value;
}

export function start(): void {
  const endpoint =
    (document.location.hash || "#ws://127.0.0.1:8765/ws").slice(1);
  const client = new TeleopClient(endpoint, (url) =>
    new WebSocket(url) as unknown as import("./client.js").SocketLike,
  );
  const bindings = new KeyBindings();

  const side = canvasCtx("side-view");
  const top = canvasCtx("top-view");
  const gauges = canvasCtx("gauges");
  const chart = canvasCtx("reward-chart");

  const render = () => {
    text("status", `connection: ${client.status}`);
    text("error", client.lastError ?? "");
    const snap = client.snapshots.current();
    if (snap) {
      drawSideView(side.ctx, { width: side.w, height: side.h }, snap);
      drawTopView(top.ctx, { width: top.w, height: top.h }, snap);
      drawPressureGauges(
        gauges.ctx,
        { width: gauges.w, height: gauges.h },
        snap.scaled_pressures,
      );
      text("step-counter", `steps: ${snap.steps}`);
    }
    drawRewardChart(
      chart.ctx,
      { width: chart.w, height: chart.h },
      client.metrics.points,
    );
    const session = client.sessions.session;
    if (session) {
      text(
        "session",
        `${session.active ? "recording" : "stopped"} ${session.peg} @ ${session.yaw} deg | ` +
          `steps ${session.steps} | reward ${session.totalReward.toFixed(2)}`,
      );
    }
    const peg =
      (document.getElementById("peg") as HTMLSelectElement | null)?.value ??
      "slanted";
    const counts = client.sessions.checklist(peg, YAWS, SESSIONS_PER_YAW);
    text(
      "checklist",
      YAWS.map((y) => `${y} deg: ${counts.get(y) ?? 0}/${SESSIONS_PER_YAW}`).join(
        "  ",
      ) +
        (client.sessions.checklistComplete(peg, YAWS, SESSIONS_PER_YAW)
          ? "  (complete)"
          : ""),
    );
  };
  client.onchange = render;

  document.addEventListener("keydown", (ev) => {
    const action = bindings.actionFor(ev.key);
    if (action) {
      ev.preventDefault();
      client.sendKey(action);
    }
  });

  document.getElementById("record-start")?.addEventListener("click", () => {
    const peg = (document.getElementById("peg") as HTMLSelectElement).value;
    const yaw = Number(
      (document.getElementById("yaw") as HTMLSelectElement).value,
    );
    const done = client.sessions.completed.filter(
      (c) => c.peg === peg && c.yaw === yaw,
    ).length;
    client.startRecording(peg, yaw, `rep${done}`, done);
  });
  document.getElementById("record-stop")?.addEventListener("click", () => {
    client.stopRecording();
  });
  document.getElementById("reconnect")?.addEventListener("click", () => {
    client.connect();
  });

  client.connect();
  render();
}

declare global {
  interface Window {
    tactilebenchStart: () => void;
  }
}
if (typeof window !== "undefined") {
  window.tactilebenchStart = start;
}
