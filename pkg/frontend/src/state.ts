/**
 * Client-side mirror of one service session.
 *
 * The store never computes mutations, foldings, or colors on its own. Every
 * field below is copied from a service response, and the folded matrix is
 * kept as the exact bytes the service sent so the display can be compared
 * against the service byte for byte.
 */

import {
  ActionData,
  ApiClient,
  FoldedData,
  FramedData,
  QuiverData,
  ServiceError,
} from "./api.js";

export interface HistoryEntry {
  label: string;
}

export interface SessionView {
  sessionId: string;
  quiver: QuiverData | null;
  orbits: number[][] | null;
  reps: number[] | null;
  folded: FoldedData | null;
  /** Exact response text from the latest GET /folded. */
  foldedRaw: string | null;
  framed: FramedData | null;
  history: HistoryEntry[];
  lastError: string | null;
}

function emptyView(sessionId: string): SessionView {
  return {
    sessionId,
    quiver: null,
    orbits: null,
    reps: null,
    folded: null,
    foldedRaw: null,
    framed: null,
    history: [],
    lastError: null,
  };
}

export class SessionStore {
  view: SessionView;
  private listeners: Array<(view: SessionView) => void> = [];

  constructor(
    private readonly client: ApiClient,
    sessionId: string,
  ) {
    this.view = emptyView(sessionId);
  }

  static async open(client: ApiClient): Promise<SessionStore> {
    const sid = await client.createSession();
    return new SessionStore(client, sid);
  }

  subscribe(fn: (view: SessionView) => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.view);
  }

  private applyQuiver(data: QuiverData): void {
    this.view.quiver = data;
    this.view.orbits = data.orbits ?? null;
    this.view.reps = data.reps ?? null;
  }

  /** Pull folded and framed views after a state change, if available. */
  private async refreshDerived(): Promise<void> {
    const sid = this.view.sessionId;
    if (this.view.orbits !== null) {
      const { folded, raw } = await this.client.getFolded(sid);
      this.view.folded = folded;
      this.view.foldedRaw = raw;
    } else {
      this.view.folded = null;
      this.view.foldedRaw = null;
    }
    try {
      this.view.framed = await this.client.getFramed(sid);
    } catch (exc) {
      if (exc instanceof ServiceError && exc.code === "no-quiver") {
        this.view.framed = null;
      } else {
        throw exc;
      }
    }
  }

  private async run(label: string, step: () => Promise<void>): Promise<boolean> {
    try {
      await step();
      this.view.lastError = null;
      this.view.history.push({ label });
      this.emit();
      return true;
    } catch (exc) {
      if (exc instanceof ServiceError) {
        this.view.lastError = `${exc.code}: ${exc.detail}`;
        this.emit();
        return false;
      }
      throw exc;
    }
  }

  async loadQuiver(quiver: QuiverData): Promise<boolean> {
    return this.run("load quiver", async () => {
      const data = await this.client.putQuiver(this.view.sessionId, quiver);
      this.applyQuiver(data);
      await this.refreshDerived();
    });
  }

  async assignAction(action: ActionData): Promise<boolean> {
    return this.run("assign action", async () => {
      await this.client.putAction(this.view.sessionId, action);
      const data = await this.client.getQuiver(this.view.sessionId);
      this.applyQuiver(data);
      await this.refreshDerived();
    });
  }

  async mutateVertex(vertex: number): Promise<boolean> {
    return this.run(`mutate vertex ${vertex}`, async () => {
      const result = await this.client.mutateVertex(this.view.sessionId, vertex);
      this.applyQuiver(result.quiver);
      await this.refreshDerived();
    });
  }

  async mutateOrbit(orbit: number, rule = "auto"): Promise<boolean> {
    return this.run(`mutate orbit ${orbit}`, async () => {
      const result = await this.client.mutateOrbit(this.view.sessionId, orbit, rule);
      this.applyQuiver(result.quiver);
      await this.refreshDerived();
    });
  }

  async undo(): Promise<boolean> {
    return this.run("undo", async () => {
      const result = await this.client.undo(this.view.sessionId);
      if (result.quiver) {
        this.applyQuiver(result.quiver);
      } else {
        this.view.quiver = null;
        this.view.orbits = null;
        this.view.reps = null;
      }
      await this.refreshDerived();
    });
  }

  /** Ask the service whether the current quiver is isomorphic to another. */
  async confirmIsomorphic(quiver: QuiverData) {
    return this.client.isomorphic(this.view.sessionId, quiver);
  }
}
