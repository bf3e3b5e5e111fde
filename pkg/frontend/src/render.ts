/**
 * Canvas rendering for the quiver view.
 *
 * Pure helpers (layout, hit testing, labels, colors) are exported separately
 * from the drawing routine so they can be tested without a DOM. The drawing
 * routine only visualizes what the store holds; it never changes it.
 */

import { QuiverData } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export const VERTEX_RADIUS = 18;

const ORBIT_COLORS = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#ff9da7",
];

export function layoutCircle(n: number, cx: number, cy: number, r: number): Map<number, Point> {
  const pos = new Map<number, Point>();
  for (let v = 1; v <= n; v++) {
    const angle = (2 * Math.PI * (v - 1)) / n - Math.PI / 2;
    pos.set(v, { x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  return pos;
}

/** Color per vertex from its orbit index; unlisted vertices get gray. */
export function orbitColoring(n: number, orbits: number[][] | null): Map<number, string> {
  const colors = new Map<number, string>();
  for (let v = 1; v <= n; v++) colors.set(v, "#b0b0b0");
  if (orbits === null) return colors;
  orbits.forEach((orbit, idx) => {
    const color = ORBIT_COLORS[idx % ORBIT_COLORS.length] ?? "#b0b0b0";
    for (const v of orbit) colors.set(v, color);
  });
  return colors;
}

export function arrowLabel(weight: number): string {
  return Math.abs(weight) > 1 ? String(Math.abs(weight)) : "";
}

export function vertexShape(quiver: QuiverData, v: number): "circle" | "square" {
  return quiver.frozen.includes(v) ? "square" : "circle";
}

export function haloColor(colors: Record<string, string> | null, v: number): string | null {
  if (colors === null) return null;
  const state = colors[String(v)];
  if (state === "green") return "#2e9e44";
  if (state === "red") return "#d13838";
  return null;
}

export function hitTest(positions: Map<number, Point>, x: number, y: number): number | null {
  for (const [v, p] of positions) {
    const dx = p.x - x;
    const dy = p.y - y;
    if (dx * dx + dy * dy <= VERTEX_RADIUS * VERTEX_RADIUS) return v;
  }
  return null;
}

/** Arrows of the quiver as (from, to, count) with count > 0. */
export function arrowList(quiver: QuiverData): Array<[number, number, number]> {
  const out: Array<[number, number, number]> = [];
  for (let i = 1; i <= quiver.n; i++) {
    const row = quiver.b[i - 1];
    if (row === undefined) continue;
    for (let j = 1; j <= quiver.n; j++) {
      const w = row[j - 1] ?? 0;
      if (w > 0) out.push([i, j, w]);
    }
  }
  return out;
}

/** Minimal slice of CanvasRenderingContext2D used by the renderer. */
export interface Canvas2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  strokeStyle: string;
  fillStyle: string;
  lineWidth: number;
  font: string;
  textAlign: string;
  textBaseline: string;
}

export interface DrawInput {
  quiver: QuiverData | null;
  orbits: number[][] | null;
  positions: Map<number, Point>;
  vertexColors: Record<string, string> | null;
  width: number;
  height: number;
}

function drawArrow(ctx: Canvas2D, from: Point, to: Point, label: string): void {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  const sx = from.x + ux * VERTEX_RADIUS;
  const sy = from.y + uy * VERTEX_RADIUS;
  const ex = to.x - ux * (VERTEX_RADIUS + 4);
  const ey = to.y - uy * (VERTEX_RADIUS + 4);
  ctx.beginPath();
  ctx.moveTo(sx, sy);
  ctx.lineTo(ex, ey);
  ctx.stroke();
  const head = 8;
  ctx.beginPath();
  ctx.moveTo(ex, ey);
  ctx.lineTo(ex - ux * head - uy * (head / 2), ey - uy * head + ux * (head / 2));
  ctx.lineTo(ex - ux * head + uy * (head / 2), ey - uy * head - ux * (head / 2));
  ctx.fill();
  if (label) {
    ctx.fillText(label, (sx + ex) / 2 + uy * 10, (sy + ey) / 2 - ux * 10);
  }
}

export function drawQuiver(ctx: Canvas2D, input: DrawInput): void {
  ctx.clearRect(0, 0, input.width, input.height);
  ctx.font = "13px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  if (input.quiver === null) {
    ctx.fillStyle = "#808080";
    ctx.fillText("no quiver loaded: paste one below and press load", input.width / 2, input.height / 2);
    return;
  }
  const quiver = input.quiver;
  const coloring = orbitColoring(quiver.n, input.orbits);
  ctx.strokeStyle = "#404040";
  ctx.fillStyle = "#404040";
  ctx.lineWidth = 1.5;
  for (const [i, j, w] of arrowList(quiver)) {
    const from = input.positions.get(i);
    const to = input.positions.get(j);
    if (from === undefined || to === undefined) continue;
    drawArrow(ctx, from, to, arrowLabel(w));
  }
  for (let v = 1; v <= quiver.n; v++) {
    const p = input.positions.get(v);
    if (p === undefined) continue;
    const halo = haloColor(input.vertexColors, v);
    if (halo !== null) {
      ctx.strokeStyle = halo;
      ctx.lineWidth = 4;
      ctx.beginPath();
      ctx.arc(p.x, p.y, VERTEX_RADIUS + 4, 0, 2 * Math.PI);
      ctx.stroke();
    }
    ctx.fillStyle = coloring.get(v) ?? "#b0b0b0";
    ctx.strokeStyle = "#202020";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    if (vertexShape(quiver, v) === "square") {
      ctx.rect(p.x - VERTEX_RADIUS, p.y - VERTEX_RADIUS, 2 * VERTEX_RADIUS, 2 * VERTEX_RADIUS);
    } else {
      ctx.arc(p.x, p.y, VERTEX_RADIUS, 0, 2 * Math.PI);
    }
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#ffffff";
    ctx.fillText(String(v), p.x, p.y);
  }
}
