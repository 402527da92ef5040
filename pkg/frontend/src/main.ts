// Wiring: session form, board interactions, move submission.  Optimistic
// updates are disabled: every move waits for the authoritative response.

import { ApiClient, ApiError } from "./api.js";
import type { Layout, Move, SessionPayload } from "./api.js";
import { deriveBoard, legalPendingToggle } from "./model.js";
import { renderBoard, renderHistory, renderPanels } from "./render.js";

const api = new ApiClient("");

let session: SessionPayload | null = null;
let layout: Layout | null = null;
let pending: string[] = [];

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function historyRows(s: SessionPayload): string[] {
  return s.state.history.map((h) => {
    const sel = h.selection === undefined ? "..."
      : Array.isArray(h.selection) ? `{${h.selection.join(", ")}}` : h.selection;
    return `inning ${h.inning}: cover [${h.cover.join(", ")}] ; pick ${sel}`;
  });
}

function boardSvg(): SVGSVGElement {
  return document.getElementById("board") as unknown as SVGSVGElement;
}

function redraw(): void {
  if (!session || !layout) return;
  const board = deriveBoard(layout, session, pending);
  renderBoard(boardSvg(), board, (id) => {
    if (!session) return;
    const next = legalPendingToggle(session, pending, id);
    if (next !== null) {
      pending = next;
      redraw();
    }
  });
  el("status").textContent = board.statusLine;
  const bannerEl = el("banner");
  bannerEl.textContent = board.banner ?? "";
  bannerEl.style.display = board.banner ? "block" : "none";
  renderHistory(el("history"), historyRows(session));
  el<HTMLButtonElement>("submit").disabled = !board.canSubmit;
  el("error").textContent = "";
}

async function refreshPanels(): Promise<void> {
  if (!session) return;
  const rep = await api.report(session.session_id);
  renderPanels(el("panels"), rep.panels);
}

async function start(): Promise<void> {
  try {
    const opts = {
      lattice: el<HTMLSelectElement>("lattice").value,
      game: el<HTMLSelectElement>("game").value as "G1" | "Gfin",
      human_role: el<HTMLSelectElement>("role").value as "I" | "II",
      depth: Number(el<HTMLInputElement>("depth").value),
    };
    session = await api.createSession(opts);
    layout = session.layout ?? await api.layout(session.session_id);
    pending = [];
    redraw();
    await refreshPanels();
  } catch (e) {
    showError(e);
  }
}

async function submit(): Promise<void> {
  if (!session) return;
  const type = session.human_role === "I" ? "cover"
    : session.game === "G1" ? "pick" : "finite_set";
  const move: Move = { type, items: pending };
  try {
    session = await api.move(session.session_id, move);
    pending = [];
    redraw();
    await refreshPanels();
  } catch (e) {
    showError(e);  // rejected moves leave the board unchanged
  }
}

function showError(e: unknown): void {
  const msg = e instanceof ApiError ? `${e.errorName}: ${e.message}`
    : String(e);
  el("error").textContent = msg;
}

async function boot(): Promise<void> {
  const cat = await api.catalog();
  const select = el<HTMLSelectElement>("lattice");
  for (const name of cat.lattices) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    select.appendChild(opt);
  }
  el("start").addEventListener("click", () => void start());
  el("submit").addEventListener("click", () => void submit());
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  void boot();
}
