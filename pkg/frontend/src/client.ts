// Thin REST client for the engine service.  Every method resolves to the
// server's JSON payload or throws ApiError carrying the HTTP status, so the
// caller can surface 409 (frozen vertex) as a non-blocking notice.

import type { QuiverSnapshot } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = (await res.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(res.status, detail);
  }
  return (await res.json()) as T;
}

export class ExplorerClient {
  constructor(readonly base: string, readonly fetchImpl: typeof fetch = fetch) {}

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.fetchImpl(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? "{}" : JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchImpl(`${this.base}${path}`).then((r) => unwrap<T>(r));
  }

  createSession(build: Record<string, unknown>): Promise<{ id: string }> {
    return this.post("/session", { build });
  }

  createSessionFromQuiver(quiver: unknown): Promise<{ id: string }> {
    return this.post("/session", { quiver });
  }

  quiver(id: string): Promise<QuiverSnapshot> {
    return this.get(`/session/${id}/quiver`);
  }

  mutate(id: string, vertex: string): Promise<QuiverSnapshot> {
    return this.post(`/session/${id}/mutate`, { vertex });
  }

  sequence(
    id: string,
    name: string,
    params: Record<string, unknown>,
  ): Promise<QuiverSnapshot> {
    return this.post(`/session/${id}/sequence`, { name, params });
  }

  rawSequence(id: string, steps: unknown[]): Promise<QuiverSnapshot> {
    return this.post(`/session/${id}/sequence`, { steps });
  }

  undo(id: string): Promise<QuiverSnapshot> {
    return this.post(`/session/${id}/undo`);
  }

  redo(id: string): Promise<QuiverSnapshot> {
    return this.post(`/session/${id}/redo`);
  }

  variable(
    id: string,
    vertex: string,
    kind: "A" | "X" | "coeff",
  ): Promise<{ vertex: string; kind: string; value: string }> {
    return this.get(
      `/session/${id}/variable/${encodeURIComponent(vertex)}?kind=${kind}`,
    );
  }
}
