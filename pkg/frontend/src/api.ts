/**
 * Typed client for the qfold HTTP/JSON service.
 *
 * Every method returns data parsed from the service response and, for the
 * folded matrix, the exact response text as received. The client never
 * derives mathematical state itself; it only transports what the service
 * said.
 */

import { z } from "zod";

export const groupElementSchema = z.union([
  z.object({ type: z.literal("perm"), img: z.array(z.number().int()) }),
  z.object({
    type: z.literal("cyclic"),
    mod: z.number().int(),
    pow: z.number().int(),
  }),
]);

export type GroupElement = z.infer<typeof groupElementSchema>;

export const quiverSchema = z.object({
  n: z.number().int(),
  frozen: z.array(z.number().int()),
  b: z.array(z.array(z.number().int())),
  orbits: z.array(z.array(z.number().int())).optional(),
  reps: z.array(z.number().int()).optional(),
});

export type QuiverData = z.infer<typeof quiverSchema>;

export interface ActionData {
  generators: GroupElement[];
  vertex_maps: number[][];
  reps?: number[];
}

const ringTermSchema = z.object({
  g: groupElementSchema,
  num: z.number().int(),
  den: z.number().int(),
});

const ringElementSchema = z.object({ terms: z.array(ringTermSchema) });

export const foldedSchema = z.object({
  group: z.object({ generators: z.array(groupElementSchema) }),
  m: z.number().int(),
  stab_orders: z.array(z.number().int()),
  entries: z.array(z.array(ringElementSchema)),
  reps: z.array(z.number().int()).optional(),
  pretty: z.array(z.array(z.string())),
  orbits: z.array(z.array(z.number().int())),
});

export type FoldedData = z.infer<typeof foldedSchema>;

export const framedSchema = z.object({
  quiver: quiverSchema,
  colors: z.record(z.string(), z.enum(["green", "red", "neither"])),
});

export type FramedData = z.infer<typeof framedSchema>;

const actionSummarySchema = z.object({
  orbits: z.array(z.array(z.number().int())),
  reps: z.array(z.number().int()),
  stab_orders: z.array(z.number().int()),
});

const mutateResultSchema = z.object({
  mutated: z.union([
    z.object({ vertex: z.number().int() }),
    z.object({
      orbit: z.number().int(),
      rule: z.string(),
      steps: z.array(z.number().int()),
    }),
  ]),
  quiver: quiverSchema,
});

export type MutateResult = z.infer<typeof mutateResultSchema>;

const graphSummarySchema = z.object({
  nodes: z.number().int(),
  edges: z.array(z.array(z.number().int())),
  complete: z.boolean(),
  blocked: z.array(z.tuple([z.number(), z.number(), z.string()])).optional(),
});

const isomorphicSchema = z.object({
  isomorphic: z.boolean(),
  witness: z.array(z.number().int()).optional(),
});

const errorSchema = z.object({
  error: z.string(),
  detail: z.string(),
  witness: z.unknown().optional(),
});

/** A service-reported failure, carried verbatim to the caller. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
    readonly witness?: unknown,
  ) {
    super(`${code}: ${detail}`);
  }
}

export type FetchLike = (
  url: string,
  init: { method: string; headers: Record<string, string>; body?: string },
) => Promise<{ status: number; text(): Promise<string> }>;

export interface FoldedResponse {
  folded: FoldedData;
  /** Exact bytes of the service response, kept for display. */
  raw: string;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<string> {
    const init: { method: string; headers: Record<string, string>; body?: string } = {
      method,
      headers: { "Content-Type": "application/json" },
    };
    if (body !== undefined) init.body = JSON.stringify(body);
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const text = await resp.text();
    if (resp.status >= 400) {
      const parsed = errorSchema.safeParse(JSON.parse(text));
      if (parsed.success) {
        throw new ServiceError(
          resp.status,
          parsed.data.error,
          parsed.data.detail,
          parsed.data.witness,
        );
      }
      throw new ServiceError(resp.status, "unknown", text);
    }
    return text;
  }

  async createSession(): Promise<string> {
    const text = await this.request("POST", "/api/session");
    return z.object({ id: z.string() }).parse(JSON.parse(text)).id;
  }

  async putQuiver(sid: string, quiver: QuiverData): Promise<QuiverData> {
    const text = await this.request("PUT", `/api/session/${sid}/quiver`, quiver);
    return quiverSchema.parse(JSON.parse(text));
  }

  async getQuiver(sid: string): Promise<QuiverData> {
    const text = await this.request("GET", `/api/session/${sid}/quiver`);
    return quiverSchema.parse(JSON.parse(text));
  }

  async putAction(sid: string, action: ActionData) {
    const text = await this.request("PUT", `/api/session/${sid}/action`, action);
    return actionSummarySchema.parse(JSON.parse(text));
  }

  async mutateVertex(sid: string, vertex: number): Promise<MutateResult> {
    const text = await this.request("POST", `/api/session/${sid}/mutate`, { vertex });
    return mutateResultSchema.parse(JSON.parse(text));
  }

  async mutateOrbit(sid: string, orbit: number, rule = "auto"): Promise<MutateResult> {
    const text = await this.request("POST", `/api/session/${sid}/mutate`, { orbit, rule });
    return mutateResultSchema.parse(JSON.parse(text));
  }

  async getFolded(sid: string): Promise<FoldedResponse> {
    const raw = await this.request("GET", `/api/session/${sid}/folded`);
    return { folded: foldedSchema.parse(JSON.parse(raw)), raw };
  }

  async getFramed(sid: string): Promise<FramedData> {
    const text = await this.request("GET", `/api/session/${sid}/framed`);
    return framedSchema.parse(JSON.parse(text));
  }

  async undo(sid: string): Promise<{ undone: boolean; quiver?: QuiverData }> {
    const text = await this.request("POST", `/api/session/${sid}/undo`);
    return z
      .object({ undone: z.boolean(), quiver: quiverSchema.optional() })
      .parse(JSON.parse(text));
  }

  async isomorphic(sid: string, quiver: QuiverData) {
    const text = await this.request("POST", `/api/session/${sid}/isomorphic`, { quiver });
    return isomorphicSchema.parse(JSON.parse(text));
  }

  async graph(sid: string, budget?: number) {
    const suffix = budget === undefined ? "" : `?budget=${budget}`;
    const text = await this.request("GET", `/api/session/${sid}/graph${suffix}`);
    return graphSummarySchema.parse(JSON.parse(text));
  }
}
