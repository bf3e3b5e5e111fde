/**
 * Draft editing of an input quiver before it is sent to the service.
 *
 * These helpers build the quiver the researcher wants to load; they are data
 * entry, not mutation arithmetic. The service re-validates whatever is sent.
 */

import { QuiverData } from "./api.js";

export function emptyQuiver(): QuiverData {
  return { n: 0, frozen: [], b: [] };
}

export function withAddedVertex(quiver: QuiverData | null): QuiverData {
  const base = quiver ?? emptyQuiver();
  const n = base.n + 1;
  const b = base.b.map((row) => [...row, 0]);
  b.push(new Array<number>(n).fill(0));
  return { n, frozen: [...base.frozen], b };
}

/** Add one arrow from -> to in the draft matrix. */
export function withArrow(quiver: QuiverData, from: number, to: number): QuiverData {
  if (from === to) throw new RangeError("no loops allowed");
  if (from < 1 || to < 1 || from > quiver.n || to > quiver.n) {
    throw new RangeError(`arrow ${from}->${to} outside 1..${quiver.n}`);
  }
  const b = quiver.b.map((row) => [...row]);
  const fromRow = b[from - 1];
  const toRow = b[to - 1];
  if (fromRow === undefined || toRow === undefined) throw new RangeError("ragged matrix");
  fromRow[to - 1] = (fromRow[to - 1] ?? 0) + 1;
  toRow[from - 1] = (toRow[from - 1] ?? 0) - 1;
  return { n: quiver.n, frozen: [...quiver.frozen], b };
}
