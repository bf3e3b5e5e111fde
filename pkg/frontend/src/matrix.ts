/**
 * Matrix display panel.
 *
 * Cells show the service-provided strings untouched; the panel never
 * reformats, renormalizes, or recomputes an entry. `cellText` is the single
 * point where a displayed string is produced, so byte-identity with the
 * service response can be checked there.
 */

import { FoldedData, QuiverData } from "./api.js";

export interface MatrixModel {
  title: string;
  cells: string[][];
}

export function foldedModel(folded: FoldedData): MatrixModel {
  return { title: `folded matrix (${folded.m} x ${folded.m})`, cells: folded.pretty };
}

export function quiverModel(quiver: QuiverData): MatrixModel {
  return {
    title: `exchange matrix (${quiver.n} x ${quiver.n})`,
    cells: quiver.b.map((row) => row.map((x) => String(x))),
  };
}

export function cellText(model: MatrixModel, i: number, j: number): string {
  const row = model.cells[i];
  if (row === undefined || row[j] === undefined) {
    throw new RangeError(`no cell (${i}, ${j})`);
  }
  return row[j];
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

export function renderTable(model: MatrixModel): string {
  const rows = model.cells
    .map((row) => {
      const tds = row.map((cell) => `<td>${escapeHtml(cell)}</td>`).join("");
      return `<tr>${tds}</tr>`;
    })
    .join("");
  return `<table class="matrix"><caption>${escapeHtml(model.title)}</caption>${rows}</table>`;
}
