import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike, ServiceError } from "../src/api.js";

interface Call {
  url: string;
  method: string;
  body?: string;
}

function scripted(responses: Array<{ status: number; text: string }>) {
  const calls: Call[] = [];
  const fetchFn: FetchLike = (url, init) => {
    calls.push({ url, method: init.method, body: init.body });
    const next = responses.shift();
    if (next === undefined) throw new Error("no scripted response left");
    return Promise.resolve({ status: next.status, text: () => Promise.resolve(next.text) });
  };
  return { calls, fetchFn };
}

describe("ApiClient", () => {
  it("creates a session", async () => {
    const { calls, fetchFn } = scripted([{ status: 200, text: '{"id": "abc123"}' }]);
    const client = new ApiClient("http://host", fetchFn);
    expect(await client.createSession()).toBe("abc123");
    expect(calls[0]).toEqual({ url: "http://host/api/session", method: "POST", body: undefined });
  });

  it("sends the quiver as the PUT body", async () => {
    const quiver = { n: 2, frozen: [], b: [[0, 1], [-1, 0]] };
    const { calls, fetchFn } = scripted([
      { status: 200, text: JSON.stringify(quiver) },
    ]);
    const client = new ApiClient("http://host", fetchFn);
    const out = await client.putQuiver("s", quiver);
    expect(out.b).toEqual([[0, 1], [-1, 0]]);
    expect(calls[0]?.url).toBe("http://host/api/session/s/quiver");
    expect(JSON.parse(calls[0]?.body ?? "")).toEqual(quiver);
  });

  it("keeps the folded response text exactly as served", async () => {
    const raw =
      '{"group": {"generators": []}, "m": 1, "stab_orders": [1],' +
      ' "entries": [[{"terms": []}]], "pretty": [["0"]], "orbits": [[1]]}';
    const { fetchFn } = scripted([{ status: 200, text: raw }]);
    const client = new ApiClient("http://host", fetchFn);
    const { folded, raw: got } = await client.getFolded("s");
    expect(got).toBe(raw);
    expect(folded.m).toBe(1);
    expect(folded.pretty).toEqual([["0"]]);
  });

  it("includes the rule when mutating an orbit", async () => {
    const result = {
      mutated: { orbit: 2, rule: "diag3", steps: [1, 2, 3, 1] },
      quiver: { n: 3, frozen: [], b: [[0, 0, 0], [0, 0, 0], [0, 0, 0]] },
    };
    const { calls, fetchFn } = scripted([{ status: 200, text: JSON.stringify(result) }]);
    const client = new ApiClient("http://host", fetchFn);
    const out = await client.mutateOrbit("s", 2, "diag3");
    expect(out.mutated).toEqual({ orbit: 2, rule: "diag3", steps: [1, 2, 3, 1] });
    expect(JSON.parse(calls[0]?.body ?? "")).toEqual({ orbit: 2, rule: "diag3" });
  });

  it("surfaces service errors verbatim", async () => {
    const { fetchFn } = scripted([
      {
        status: 409,
        text: '{"error": "invalid-action", "detail": "generator 1 is not an automorphism: arrow count 1->0", "witness": {"generator": 1, "arrow": [1, 2]}}',
      },
    ]);
    const client = new ApiClient("http://host", fetchFn);
    try {
      await client.putAction("s", { generators: [], vertex_maps: [] });
      expect.unreachable("expected a ServiceError");
    } catch (exc) {
      expect(exc).toBeInstanceOf(ServiceError);
      const err = exc as ServiceError;
      expect(err.status).toBe(409);
      expect(err.code).toBe("invalid-action");
      expect(err.detail).toBe("generator 1 is not an automorphism: arrow count 1->0");
      expect(err.witness).toEqual({ generator: 1, arrow: [1, 2] });
    }
  });

  it("asks the service for the isomorphism check", async () => {
    const { calls, fetchFn } = scripted([
      { status: 200, text: '{"isomorphic": true, "witness": [1, 2, 4, 3]}' },
    ]);
    const client = new ApiClient("http://host", fetchFn);
    const quiver = { n: 4, frozen: [], b: [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]] };
    const out = await client.isomorphic("s", quiver);
    expect(out.isomorphic).toBe(true);
    expect(out.witness).toEqual([1, 2, 4, 3]);
    expect(calls[0]?.url).toBe("http://host/api/session/s/isomorphic");
    expect(JSON.parse(calls[0]?.body ?? "")).toEqual({ quiver });
  });

  it("passes the graph budget through as a query parameter", async () => {
    const { calls, fetchFn } = scripted([
      { status: 200, text: '{"nodes": 2, "edges": [[0, 1, 1]], "complete": true}' },
    ]);
    const client = new ApiClient("http://host", fetchFn);
    const out = await client.graph("s", 50);
    expect(out.nodes).toBe(2);
    expect(out.complete).toBe(true);
    expect(calls[0]?.url).toBe("http://host/api/session/s/graph?budget=50");
  });
});
