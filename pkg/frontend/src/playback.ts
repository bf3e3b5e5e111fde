/**
 * Sequence playback: one service mutation per step, with a hook between
 * steps so callers can show intermediate frames. The final permutation of a
 * sequence is a pure relabeling shown on screen; the service is already in
 * the post-sequence state, so applying it touches only the layout.
 */

import { Point } from "./render.js";

/** The slice of the session store playback needs. */
export interface MutationRunner {
  mutateVertex(vertex: number): Promise<boolean>;
}

export interface PlaybackSequence {
  steps: number[];
  /** Image form: post[v-1] is where label v goes. */
  post?: number[];
}

export interface PlaybackResult {
  completed: boolean;
  framesShown: number;
  relabel: string;
}

/** Cycle notation of a permutation in image form, "identity" if trivial. */
export function permCycleText(img: number[]): string {
  const seen = new Set<number>();
  const parts: string[] = [];
  for (let v = 1; v <= img.length; v++) {
    if (seen.has(v)) continue;
    const cycle = [v];
    seen.add(v);
    let w = img[v - 1] ?? v;
    while (w !== v) {
      cycle.push(w);
      seen.add(w);
      w = img[w - 1] ?? w;
    }
    if (cycle.length > 1) parts.push(`(${cycle.join(" ")})`);
  }
  return parts.length > 0 ? parts.join("") : "identity";
}

/** Move each vertex position to its image's slot; layout change only. */
export function relabelPositions(positions: Map<number, Point>, img: number[]): Map<number, Point> {
  const out = new Map<number, Point>(positions);
  for (let v = 1; v <= img.length; v++) {
    const target = img[v - 1] ?? v;
    const p = positions.get(v);
    if (p !== undefined) out.set(target, p);
  }
  return out;
}

export async function stepSequence(
  store: MutationRunner,
  seq: PlaybackSequence,
  onFrame?: (stepIndex: number) => Promise<void> | void,
): Promise<PlaybackResult> {
  let frames = 0;
  for (const [idx, vertex] of seq.steps.entries()) {
    const ok = await store.mutateVertex(vertex);
    if (!ok) {
      return { completed: false, framesShown: frames, relabel: "none" };
    }
    frames += 1;
    if (onFrame) await onFrame(idx);
  }
  const relabel = seq.post ? permCycleText(seq.post) : "identity";
  return { completed: true, framesShown: frames, relabel };
}
