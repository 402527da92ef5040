// Typed client for the game-session API. The server owns all mathematics;
// this module only moves JSON.

export interface EngineMove {
  type: "cover" | "pick" | "finite_set";
  items: string | string[];
}

export interface HistoryEntry {
  inning: number;
  cover: string[];
  selection?: string | string[];
}

export interface SessionState {
  inning: number;
  history: HistoryEntry[];
  running_join: string;
  engine_move: EngineMove | null;
  status: "awaiting_cover" | "awaiting_pick" | "finished";
}

export interface SessionPayload {
  session_id: string;
  lattice: string;
  game: "G1" | "Gfin";
  human_role: "I" | "II";
  depth: number;
  state: SessionState;
  outcome: { status: string; inning: number } | null;
  layout?: Layout;
}

export interface LayoutNode {
  id: string;
  layer: number;
  pos: number;
  row_size: number;
}

export interface Layout {
  nodes: LayoutNode[];
  edges: [string, string][];
  primes: string[];
  top: string;
  bottom: string;
}

export interface Move {
  type: "cover" | "pick" | "finite_set";
  items: string[];
}

export class ApiError extends Error {
  constructor(public status: number, public errorName: string, detail: string) {
    super(detail);
  }
}

async function request<T>(url: string, body?: unknown): Promise<T> {
  const resp = await fetch(url, body === undefined ? {} : {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  const payload = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, payload.error ?? "Error",
      payload.detail ?? resp.statusText);
  }
  return payload as T;
}

export class ApiClient {
  constructor(private base: string) {}

  catalog(): Promise<{ lattices: string[] }> {
    return request(`${this.base}/api/catalog`);
  }

  createSession(opts: {
    lattice: string;
    game: "G1" | "Gfin";
    human_role: "I" | "II";
    depth: number;
    seed?: number;
  }): Promise<SessionPayload> {
    return request(`${this.base}/api/sessions`, opts);
  }

  state(id: string): Promise<SessionPayload> {
    return request(`${this.base}/api/sessions/${id}`);
  }

  move(id: string, move: Move): Promise<SessionPayload> {
    return request(`${this.base}/api/sessions/${id}/move`, { move });
  }

  layout(id: string): Promise<Layout> {
    return request(`${this.base}/api/sessions/${id}/layout`);
  }

  report(id: string): Promise<{ panels: Record<string, unknown>[] }> {
    return request(`${this.base}/api/sessions/${id}/report`);
  }
}
