// Pure board derivation: every rendered fact comes from the last server
// response plus the human's pending (not yet submitted) selection.  The only
// client-side rule is the legality pre-check mirrored from the API: picks
// must come from the offered cover.

import type { Layout, SessionPayload } from "./api.js";

export interface BoardNode {
  id: string;
  x: number;
  y: number;
  classes: string[];
}

export interface BoardEdge {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface BoardModel {
  nodes: BoardNode[];
  edges: BoardEdge[];
  banner: string | null;
  statusLine: string;
  humanTurn: boolean;
  offered: string[];
  pending: string[];
  canSubmit: boolean;
}

export const WIDTH = 640;
export const HEIGHT = 420;
const MARGIN = 40;

function positions(layout: Layout): Map<string, { x: number; y: number }> {
  const depth = Math.max(...layout.nodes.map((n) => n.layer), 0);
  const out = new Map<string, { x: number; y: number }>();
  for (const n of layout.nodes) {
    const x = (WIDTH * (n.pos + 1)) / (n.row_size + 1);
    const y = depth === 0
      ? HEIGHT / 2
      : HEIGHT - MARGIN - (n.layer * (HEIGHT - 2 * MARGIN)) / depth;
    out.set(n.id, { x, y });
  }
  return out;
}

export function offeredItems(session: SessionPayload): string[] {
  if (session.human_role !== "II") return [];
  const move = session.state.engine_move;
  if (!move || move.type !== "cover") return [];
  return Array.isArray(move.items) ? move.items : [move.items];
}

export function picksSoFar(session: SessionPayload): string[] {
  const out: string[] = [];
  for (const entry of session.state.history) {
    if (entry.selection === undefined) continue;
    if (Array.isArray(entry.selection)) out.push(...entry.selection);
    else out.push(entry.selection);
  }
  return out;
}

export function legalPendingToggle(
  session: SessionPayload, pending: string[], id: string,
): string[] | null {
  // mirrored legality pre-check; the server remains authoritative
  if (session.state.status === "finished") return null;
  if (session.human_role === "II") {
    const offered = offeredItems(session);
    if (!offered.includes(id)) return null;
    if (session.game === "G1") return pending.includes(id) ? [] : [id];
  }
  return pending.includes(id)
    ? pending.filter((p) => p !== id)
    : [...pending, id];
}

export function banner(session: SessionPayload): string | null {
  const outcome = session.outcome;
  if (!outcome) return null;
  if (outcome.status === "WonByII") {
    return `Player II wins at inning ${outcome.inning}`;
  }
  return `Undecided at depth ${outcome.inning}`;
}

export function deriveBoard(
  layout: Layout, session: SessionPayload, pending: string[],
): BoardModel {
  const pos = positions(layout);
  const offered = offeredItems(session);
  const picks = new Set(picksSoFar(session));
  const running = session.state.running_join;
  const primes = new Set(layout.primes);

  const nodes: BoardNode[] = layout.nodes.map((n) => {
    const p = pos.get(n.id)!;
    const classes = ["node"];
    if (primes.has(n.id)) classes.push("prime");
    if (offered.includes(n.id)) classes.push("offered");
    if (picks.has(n.id)) classes.push("picked");
    if (pending.includes(n.id)) classes.push("pending");
    if (n.id === running) classes.push("running");
    return { id: n.id, x: p.x, y: p.y, classes };
  });

  const edges: BoardEdge[] = layout.edges.map(([from, to]) => {
    const a = pos.get(from)!;
    const b = pos.get(to)!;
    return { from, to, x1: a.x, y1: a.y, x2: b.x, y2: b.y };
  });

  const humanTurn = session.state.status !== "finished" &&
    ((session.human_role === "I" && session.state.status === "awaiting_cover") ||
     (session.human_role === "II" && session.state.status === "awaiting_pick"));

  const exactlyOne = session.human_role === "II" && session.game === "G1";
  const canSubmit = humanTurn &&
    (exactlyOne ? pending.length === 1 : pending.length >= 1);
  const statusLine = session.state.status === "finished"
    ? `finished; running join ${running}`
    : `inning ${session.state.inning} of ${session.depth}; running join ${running}`;

  return {
    nodes,
    edges,
    banner: banner(session),
    statusLine,
    humanTurn,
    offered,
    pending,
    canSubmit,
  };
}
