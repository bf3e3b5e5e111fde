import { describe, expect, it } from "vitest";

import { FoldedData } from "../src/api.js";
import { cellText, foldedModel, quiverModel, renderTable } from "../src/matrix.js";
import { withAddedVertex, withArrow } from "../src/editor.js";
import {
  arrowLabel,
  arrowList,
  hitTest,
  layoutCircle,
  orbitColoring,
  vertexShape,
} from "../src/render.js";
import { permCycleText, relabelPositions, stepSequence } from "../src/playback.js";

function foldedFixture(pretty: string[][]): FoldedData {
  const m = pretty.length;
  return {
    group: { generators: [] },
    m,
    stab_orders: new Array(m).fill(1),
    entries: pretty.map((row) => row.map(() => ({ terms: [] }))),
    pretty,
    orbits: pretty.map((_, i) => [i + 1]),
  };
}

describe("matrix panel", () => {
  it("shows the service strings untouched", () => {
    const pretty = [
      ["0", "1 - w + 1/2*w^2"],
      ["-1 + eps", "0"],
    ];
    const model = foldedModel(foldedFixture(pretty));
    expect(cellText(model, 0, 1)).toBe("1 - w + 1/2*w^2");
    expect(cellText(model, 1, 0)).toBe("-1 + eps");
  });

  it("escapes markup in the table but not in the model", () => {
    const pretty = [["a < b"]];
    const model = foldedModel(foldedFixture(pretty));
    expect(cellText(model, 0, 0)).toBe("a < b");
    expect(renderTable(model)).toContain("a &lt; b");
  });

  it("renders plain integers for an unfolded quiver", () => {
    const model = quiverModel({ n: 2, frozen: [], b: [[0, 2], [-2, 0]] });
    expect(model.cells).toEqual([["0", "2"], ["-2", "0"]]);
    expect(() => cellText(model, 2, 0)).toThrow(RangeError);
  });
});

describe("quiver rendering helpers", () => {
  it("lays out n vertices on a circle", () => {
    const pos = layoutCircle(5, 100, 100, 50);
    expect(pos.size).toBe(5);
    for (const p of pos.values()) {
      expect(Math.hypot(p.x - 100, p.y - 100)).toBeCloseTo(50);
    }
  });

  it("gives the star quiver's three folding sets three colors", () => {
    const colors = orbitColoring(5, [[1], [2, 4], [3, 5]]);
    expect(colors.get(2)).toBe(colors.get(4));
    expect(colors.get(3)).toBe(colors.get(5));
    const distinct = new Set([colors.get(1), colors.get(2), colors.get(3)]);
    expect(distinct.size).toBe(3);
  });

  it("labels arrows only when the weight exceeds one", () => {
    expect(arrowLabel(1)).toBe("");
    expect(arrowLabel(2)).toBe("2");
    expect(arrowLabel(-3)).toBe("3");
  });

  it("draws frozen vertices square and finds vertices under the cursor", () => {
    const quiver = { n: 2, frozen: [2], b: [[0, 1], [-1, 0]] };
    expect(vertexShape(quiver, 1)).toBe("circle");
    expect(vertexShape(quiver, 2)).toBe("square");
    const pos = new Map([[1, { x: 50, y: 50 }]]);
    expect(hitTest(pos, 55, 52)).toBe(1);
    expect(hitTest(pos, 120, 120)).toBeNull();
  });

  it("extracts the positive arrows with counts", () => {
    const quiver = { n: 3, frozen: [], b: [[0, 2, -1], [-2, 0, 1], [1, -1, 0]] };
    expect(arrowList(quiver)).toEqual([
      [1, 2, 2],
      [2, 3, 1],
      [3, 1, 1],
    ]);
  });
});

describe("draft editing", () => {
  it("adds a disconnected vertex", () => {
    const q1 = withAddedVertex(null);
    expect(q1).toEqual({ n: 1, frozen: [], b: [[0]] });
    const q2 = withAddedVertex(q1);
    expect(q2.b).toEqual([[0, 0], [0, 0]]);
  });

  it("adds arrows skew-symmetrically and rejects loops", () => {
    const q = withArrow(withAddedVertex(withAddedVertex(null)), 1, 2);
    expect(q.b).toEqual([[0, 1], [-1, 0]]);
    expect(() => withArrow(q, 1, 1)).toThrow(RangeError);
    expect(() => withArrow(q, 1, 5)).toThrow(RangeError);
  });
});

describe("playback", () => {
  it("prints the final permutation in cycle notation", () => {
    expect(permCycleText([1, 2, 4, 3])).toBe("(3 4)");
    expect(permCycleText([1, 2, 3])).toBe("identity");
    expect(permCycleText([2, 3, 1])).toBe("(1 2 3)");
  });

  it("relabels positions without touching the store", () => {
    const pos = new Map([
      [3, { x: 1, y: 1 }],
      [4, { x: 9, y: 9 }],
    ]);
    const moved = relabelPositions(pos, [1, 2, 4, 3]);
    expect(moved.get(4)).toEqual({ x: 1, y: 1 });
    expect(moved.get(3)).toEqual({ x: 9, y: 9 });
    expect(pos.get(3)).toEqual({ x: 1, y: 1 });
  });

  it("runs one service mutation per step and stops on failure", async () => {
    const calls: number[] = [];
    const runner = {
      mutateVertex: (v: number) => {
        calls.push(v);
        return Promise.resolve(v !== 3);
      },
    };
    const ok = await stepSequence(runner, { steps: [1, 2], post: [2, 1] });
    expect(ok).toEqual({ completed: true, framesShown: 2, relabel: "(1 2)" });
    expect(calls).toEqual([1, 2]);

    calls.length = 0;
    const stopped = await stepSequence(runner, { steps: [1, 3, 2] });
    expect(stopped.completed).toBe(false);
    expect(stopped.framesShown).toBe(1);
    expect(calls).toEqual([1, 3]);
  });

  it("shows intermediate frames in order", async () => {
    const frames: number[] = [];
    const runner = { mutateVertex: () => Promise.resolve(true) };
    await stepSequence(runner, { steps: [5, 6, 7] }, (idx) => {
      frames.push(idx);
    });
    expect(frames).toEqual([0, 1, 2]);
  });
});
