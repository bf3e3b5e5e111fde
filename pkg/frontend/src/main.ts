/** Browser entry point: wires the store, canvas, and control panel. */

import { ApiClient, QuiverData, ServiceError } from "./api.js";
import { SessionStore, SessionView } from "./state.js";
import {
  drawQuiver,
  hitTest,
  layoutCircle,
  Point,
  vertexShape,
} from "./render.js";
import { foldedModel, quiverModel, renderTable } from "./matrix.js";
import { relabelPositions, stepSequence } from "./playback.js";
import { withAddedVertex } from "./editor.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function defaultBaseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("service") ?? "http://127.0.0.1:7070";
}

async function boot(): Promise<void> {
  const client = new ApiClient(defaultBaseUrl());
  const store = await SessionStore.open(client);

  const canvas = el<HTMLCanvasElement>("quiver-canvas");
  const ctx = canvas.getContext("2d");
  if (ctx === null) throw new Error("canvas 2d context unavailable");
  let positions = new Map<number, Point>();
  const tooltip = el<HTMLDivElement>("tooltip");

  function syncPositions(view: SessionView): void {
    const n = view.quiver?.n ?? 0;
    if (n === 0) {
      positions = new Map();
      return;
    }
    const fresh = layoutCircle(n, canvas.width / 2, canvas.height / 2, Math.min(canvas.width, canvas.height) / 2 - 60);
    for (const [v, p] of positions) {
      if (v <= n) fresh.set(v, p);
    }
    positions = fresh;
  }

  function redraw(view: SessionView): void {
    drawQuiver(ctx as never, {
      quiver: view.quiver,
      orbits: view.orbits,
      positions,
      vertexColors: view.framed?.colors ?? null,
      width: canvas.width,
      height: canvas.height,
    });
    const panel = el<HTMLDivElement>("matrix-panel");
    if (view.folded !== null) {
      panel.innerHTML = renderTable(foldedModel(view.folded));
    } else if (view.quiver !== null) {
      panel.innerHTML = renderTable(quiverModel(view.quiver));
    } else {
      panel.innerHTML = "<p>no matrix yet</p>";
    }
    el<HTMLDivElement>("error-line").textContent = view.lastError ?? "";
    el<HTMLUListElement>("history").innerHTML = view.history
      .map((h) => `<li>${h.label}</li>`)
      .join("");
  }

  store.subscribe((view) => {
    syncPositions(view);
    redraw(view);
  });

  let dragging: number | null = null;
  let moved = false;
  canvas.addEventListener("pointerdown", (ev) => {
    const rect = canvas.getBoundingClientRect();
    dragging = hitTest(positions, ev.clientX - rect.left, ev.clientY - rect.top);
    moved = false;
  });
  canvas.addEventListener("pointermove", (ev) => {
    if (dragging === null) return;
    const rect = canvas.getBoundingClientRect();
    positions.set(dragging, { x: ev.clientX - rect.left, y: ev.clientY - rect.top });
    moved = true;
    redraw(store.view);
  });
  canvas.addEventListener("pointerup", (ev) => {
    const v = dragging;
    dragging = null;
    if (v === null || moved) return;
    const view = store.view;
    if (view.quiver === null) return;
    if (vertexShape(view.quiver, v) === "square") {
      const rect = canvas.getBoundingClientRect();
      tooltip.textContent = "frozen";
      tooltip.style.left = `${ev.clientX - rect.left + 12}px`;
      tooltip.style.top = `${ev.clientY - rect.top}px`;
      tooltip.style.display = "block";
      window.setTimeout(() => {
        tooltip.style.display = "none";
      }, 1200);
      return;
    }
    const orbitMode = el<HTMLInputElement>("orbit-mode").checked;
    if (orbitMode && view.orbits !== null) {
      void store.mutateOrbit(v);
    } else {
      void store.mutateVertex(v);
    }
  });

  el<HTMLButtonElement>("load-quiver").addEventListener("click", () => {
    try {
      const data = JSON.parse(el<HTMLTextAreaElement>("quiver-json").value) as QuiverData;
      void store.loadQuiver(data);
    } catch (exc) {
      store.view.lastError = `bad quiver JSON: ${String(exc)}`;
      redraw(store.view);
    }
  });

  el<HTMLButtonElement>("add-vertex").addEventListener("click", () => {
    const draft = withAddedVertex(store.view.quiver);
    el<HTMLTextAreaElement>("quiver-json").value = JSON.stringify(draft);
    void store.loadQuiver(draft);
  });

  el<HTMLButtonElement>("assign-action").addEventListener("click", () => {
    try {
      const data = JSON.parse(el<HTMLTextAreaElement>("action-json").value);
      void store.assignAction(data);
    } catch (exc) {
      store.view.lastError = `bad action JSON: ${String(exc)}`;
      redraw(store.view);
    }
  });

  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    void store.undo();
  });

  el<HTMLButtonElement>("play").addEventListener("click", () => {
    const stepsText = el<HTMLInputElement>("play-steps").value.trim();
    const postText = el<HTMLInputElement>("play-post").value.trim();
    if (!stepsText) return;
    const steps = stepsText.split(",").map((s) => parseInt(s.trim(), 10));
    const post = postText ? postText.split(",").map((s) => parseInt(s.trim(), 10)) : undefined;
    const status = el<HTMLSpanElement>("play-status");
    void (async () => {
      const result = await stepSequence(store, { steps, post }, async () => {
        await new Promise((resolve) => window.setTimeout(resolve, 350));
      });
      if (result.completed && post) {
        positions = relabelPositions(positions, post);
        redraw(store.view);
      }
      status.textContent = result.completed
        ? `played ${result.framesShown} steps, relabel ${result.relabel}`
        : `stopped after ${result.framesShown} steps (${store.view.lastError ?? "error"})`;
    })();
  });

  el<HTMLSpanElement>("session-id").textContent = store.view.sessionId;
  redraw(store.view);
}

boot().catch((exc) => {
  const line = document.getElementById("error-line");
  const detail = exc instanceof ServiceError ? `${exc.code}: ${exc.detail}` : String(exc);
  if (line) line.textContent = `startup failed: ${detail}`;
});
