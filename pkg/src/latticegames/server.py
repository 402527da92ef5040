"""Interactive game-session API over HTTP (JSON bodies, CORS enabled).

Routes:
  GET  /api/catalog                 lattice names
  POST /api/sessions                create (lattice, game, human_role, depth, ...)
  GET  /api/sessions/<id>           current state
  POST /api/sessions/<id>/move      submit a move; rejections leave state unchanged
  GET  /api/sessions/<id>/layout    Hasse layout (layer = longest-chain rank)
  GET  /api/sessions/<id>/report    engine decode panels per inning

Sessions are isolated single-writer state machines; requests within one
session are serialized by its lock.
"""

from __future__ import annotations

import itertools
import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Dict, List, Optional

from . import catalog
from .counterplay import menger_counterplay, rothberger_counterplay
from .covers import Cover, is_cover
from .errors import LatticeGamesError, SessionError
from .fileio import lattice_from_spec, load_strategy_spec, resolve_elems
from .games import (
    G1,
    GFIN,
    CallbackStrategy,
    ConstantStrategy,
    SeededStrategy,
    normalize_to_nice,
)
from .order import FiniteLattice, classify

_SESSION_IDS = itertools.count(1)


def hasse_layout(L: FiniteLattice) -> dict:
    layers = L.layers()
    by_layer: Dict[int, List] = {}
    for e, k in layers.items():
        by_layer.setdefault(k, []).append(e)
    nodes = []
    for k in sorted(by_layer):
        row = sorted(by_layer[k], key=L.sort_key)
        for i, e in enumerate(row):
            nodes.append({
                "id": L.label(e),
                "layer": k,
                "pos": i,
                "row_size": len(row),
            })
    edges = [[L.label(a), L.label(b)] for a, b in L.covering_pairs()]
    prs = [L.label(q) for q in (L.traits().primes or ())]
    return {"nodes": nodes, "edges": edges, "primes": prs,
            "top": L.label(L.top), "bottom": L.label(L.bottom)}


class GameSession:
    """One live game; the engine answers immediately after each human move."""

    def __init__(self, lattice_spec, game: str, human_role: str, depth: int,
                 seed: int = 0, strict: bool = True, strategy_spec=None):
        if game not in (G1, GFIN):
            raise SessionError(f"game must be G1 or Gfin, got {game!r}")
        if human_role not in ("I", "II"):
            raise SessionError(f"human_role must be I or II, got {human_role!r}")
        if not 1 <= depth <= 16:
            raise SessionError(f"depth must be in 1..16, got {depth}")
        self.lock = threading.Lock()
        self.session_id = str(next(_SESSION_IDS))
        self.L = lattice_from_spec(lattice_spec)
        if not isinstance(self.L, FiniteLattice):
            raise SessionError("sessions need a finite lattice")
        self.report = classify(self.L)
        if strict and not self.report.is_pre_pawlikowski:
            wit = self.report.witnesses.get("enough_primes")
            wit_labels = [self.L.label(w) for w in wit] if wit else None
            raise SessionError(
                "not pre-Pawlikowski: witness pair "
                f"{wit_labels}" if wit_labels else "not pre-Pawlikowski")
        self.game = game
        self.human_role = human_role
        self.depth = depth
        self.seed = seed
        self.strict = strict
        self.target = self.L.top
        self.inning = 0
        self.covers: List[Cover] = []
        self.picks: List = []
        self.running = self.L.bottom
        self.status = "awaiting_cover" if human_role == "I" else "awaiting_pick"
        self.outcome: Optional[dict] = None
        self.engine_move = None
        self.panels: List[dict] = []
        if human_role == "II":
            if strategy_spec is not None:
                self.engine_i = load_strategy_spec(strategy_spec, self.L, self.target)
            else:
                pool = catalog.seeded_pool(self.L, self.target, seed)
                self.engine_i = SeededStrategy(self.L, self.target, pool, seed)
            self._engine_offer()

    # -- engine-as-I ------------------------------------------------------

    def _engine_offer(self):
        cover = self.engine_i.answer(tuple(self.picks))
        self.covers.append(cover)
        self.engine_move = {"type": "cover", "items": cover.labels()}

    # -- engine-as-II -----------------------------------------------------

    def _revealed_strategy(self):
        covers = list(self.covers)

        def fn(history):
            k = min(len(history), len(covers) - 1)
            return covers[k]

        return CallbackStrategy(fn)

    def _greedy_advance(self, cover: Cover):
        """First item whose join with the running join is maximal."""
        L = self.L
        joins = [L.join(self.running, e) for e in cover.items]
        best = None
        for k, j in enumerate(joins):
            if best is None or (L.leq(joins[best], j) and joins[best] != j):
                best = k
        return cover.items[best if best is not None else 0]

    def _engine_pick_g1(self):
        """Single-pick reply: the counter-play pipeline recomputed against the
        revealed covers (constant extension), with a progress fallback."""
        n = self.inning
        cover = self.covers[n]
        pick = None
        try:
            result = rothberger_counterplay(
                self.L, self._revealed_strategy(), self.depth,
                strict=self.strict)
            if n < len(result.decoded) and result.decoded[n] in cover.items:
                pick = result.decoded[n]
            if n < len(result.panels):
                self.panels.append(result.panels[n])
        except LatticeGamesError:
            pick = None
        stalls = pick is not None and self.L.join(self.running, pick) == self.running
        if pick is None or (stalls and self.running != self.target):
            pick = self._greedy_advance(cover)
        return pick

    def _engine_pick_gfin(self):
        """Finite-set reply decoded from the minimal counter-play pick."""
        n = self.inning
        cover = self.covers[n]
        try:
            tree = normalize_to_nice(self.L, self._revealed_strategy(),
                                     self.target, self.depth,
                                     max(2, min(3, len(cover.items))))
            result = menger_counterplay(self.L, tree, strict=self.strict)
            inning_meta = [m for m in result.picks_meta if m[0] == n]
            if inning_meta:
                _, _, _, tags = inning_meta[0]
                decoded = {b for (d, c, b) in tags if b in cover.items}
                if decoded:
                    self.panels.append({
                        "inning": n,
                        "cuts": result.levels[n].combined_cut,
                        "decoded": sorted(self.L.label(b) for b in decoded),
                    })
                    return frozenset(decoded)
        except LatticeGamesError:
            pass
        return frozenset({max(cover.items,
                              key=lambda e: self.L.sort_key(
                                  self.L.join(self.running, e)))})

    # -- moves -------------------------------------------------------------

    def submit(self, move: dict) -> dict:
        with self.lock:
            if self.status == "finished":
                raise SessionError("session is finished")
            mtype = move.get("type")
            items = move.get("items", [])
            if self.human_role == "I":
                if mtype != "cover":
                    raise SessionError("human plays covers in this session")
                elems = resolve_elems(self.L, items, "move")
                if not is_cover(self.L, elems, self.target):
                    sup = self.L.sup(elems)
                    raise SessionError(
                        f"not a cover of {self.L.label(self.target)}: "
                        f"sup is {self.L.label(sup)}")
                self.covers.append(Cover(self.L, elems, self.target))
                pick = (self._engine_pick_g1() if self.game == G1
                        else self._engine_pick_gfin())
                self._apply_selection(pick)
                self.engine_move = {
                    "type": "pick" if self.game == G1 else "finite_set",
                    "items": (self.L.label(pick) if self.game == G1
                              else sorted(self.L.label(e) for e in pick)),
                }
            else:
                offered = self.covers[self.inning]
                if self.game == G1:
                    if mtype != "pick" or len(items) != 1:
                        raise SessionError("submit one picked item")
                    elems = resolve_elems(self.L, items, "move")
                    if elems[0] not in offered.items:
                        raise SessionError("selection outside the offered cover")
                    self._apply_selection(elems[0])
                else:
                    if mtype != "finite_set":
                        raise SessionError("submit a finite item set")
                    elems = resolve_elems(self.L, items, "move")
                    if not frozenset(elems) <= frozenset(offered.items):
                        raise SessionError("selection outside the offered cover")
                    self._apply_selection(frozenset(elems))
                if self.status != "finished":
                    self._engine_offer()
            return self.state()

    def _apply_selection(self, sel):
        picks = sel if isinstance(sel, frozenset) else frozenset({sel})
        self.running = self.L.sup([self.running, *picks])
        self.picks.append(sel)
        if self.running == self.target:
            self.outcome = {"status": "WonByII", "inning": self.inning}
            self.status = "finished"
        elif self.inning + 1 >= self.depth:
            self.outcome = {"status": "Undecided", "inning": self.depth}
            self.status = "finished"
        self.inning += 1

    def state(self) -> dict:
        history = []
        for k in range(len(self.covers)):
            entry = {"inning": k, "cover": self.covers[k].labels()}
            if k < len(self.picks):
                sel = self.picks[k]
                entry["selection"] = (sorted(self.L.label(e) for e in sel)
                                      if isinstance(sel, frozenset)
                                      else self.L.label(sel))
            history.append(entry)
        return {
            "session_id": self.session_id,
            "lattice": self.L.name,
            "game": self.game,
            "human_role": self.human_role,
            "depth": self.depth,
            "state": {
                "inning": self.inning,
                "history": history,
                "running_join": self.L.label(self.running),
                "engine_move": self.engine_move,
                "status": self.status,
            },
            "outcome": self.outcome,
        }


class SessionStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: Dict[str, GameSession] = {}

    def create(self, body: dict) -> GameSession:
        sess = GameSession(
            body.get("lattice", "b2"),
            body.get("game", G1),
            body.get("human_role", "I"),
            int(body.get("depth", 4)),
            seed=int(body.get("seed", 0)),
            strict=bool(body.get("strict", True)),
            strategy_spec=body.get("strategy"),
        )
        with self._lock:
            self._sessions[sess.session_id] = sess
        return sess

    def get(self, sid: str) -> GameSession:
        with self._lock:
            if sid not in self._sessions:
                raise SessionError(f"unknown session {sid!r}")
            return self._sessions[sid]


def make_handler(store: SessionStore):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet
            pass

        def _send(self, code: int, payload: dict):
            body = json.dumps(payload, sort_keys=True).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.end_headers()
            self.wfile.write(body)

        def do_OPTIONS(self):
            self._send(204, {})

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if not length:
                return {}
            try:
                return json.loads(self.rfile.read(length).decode())
            except json.JSONDecodeError:
                raise SessionError("request body is not valid JSON")

        def do_GET(self):
            try:
                parts = [p for p in self.path.split("?")[0].split("/") if p]
                if parts == ["api", "catalog"]:
                    self._send(200, {"lattices": catalog.catalog_names()})
                    return
                if len(parts) >= 3 and parts[:2] == ["api", "sessions"]:
                    sess = store.get(parts[2])
                    if len(parts) == 3:
                        self._send(200, sess.state())
                    elif parts[3] == "layout":
                        self._send(200, hasse_layout(sess.L))
                    elif parts[3] == "report":
                        self._send(200, {"panels": sess.panels})
                    else:
                        self._send(404, {"error": "NotFound"})
                    return
                self._send(404, {"error": "NotFound"})
            except LatticeGamesError as e:
                self._send(404 if isinstance(e, SessionError) else 400,
                           {"error": e.name, "detail": str(e)})

        def do_POST(self):
            try:
                parts = [p for p in self.path.split("?")[0].split("/") if p]
                if parts == ["api", "sessions"]:
                    sess = store.create(self._body())
                    payload = sess.state()
                    payload["layout"] = hasse_layout(sess.L)
                    self._send(201, payload)
                    return
                if (len(parts) == 4 and parts[:2] == ["api", "sessions"]
                        and parts[3] == "move"):
                    sess = store.get(parts[2])
                    body = self._body()
                    state = sess.submit(body.get("move", body))
                    self._send(200, state)
                    return
                self._send(404, {"error": "NotFound"})
            except LatticeGamesError as e:
                code = 409 if isinstance(e, SessionError) else 400
                self._send(code, {"error": e.name, "detail": str(e)})

    return Handler


def make_server(port: int = 0) -> ThreadingHTTPServer:
    store = SessionStore()
    return ThreadingHTTPServer(("127.0.0.1", port), make_handler(store))


def serve(port: int) -> None:
    httpd = make_server(port)
    host, actual = httpd.server_address[:2]
    print(f"serving on http://{host}:{actual}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        httpd.shutdown()
