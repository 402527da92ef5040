"""Finite-depth play of the single-pick and finite-pick cover games.

Player I plays covers of a fixed target, Player II selects one item (G1)
or a finite item set (Gfin) per inning; II wins when the running join of
the selections reaches the target.  Finite truncation cannot certify a
Player I win, so the only outcomes are WonByII(inning) and Undecided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

from .catalog import stable_int
from .covers import Cover, IncreasingCover, fit_length, normalize_increasing
from .errors import (
    CorruptTranscript,
    IllegalSelection,
    NotACover,
    SearchBound,
    StrategyPartial,
)
from .order import Lattice

G1 = "G1"
GFIN = "Gfin"


# -- strategies ----------------------------------------------------------------


class PlayerIStrategy:
    """Answers a history of Player II selections with a cover of the target.

    Histories are tuples of past selections (elements for G1 and nice play,
    frozensets for Gfin).  Strategies must be total up to the game depth.
    """

    def answer(self, history: tuple) -> Cover:
        raise NotImplementedError

    def decode_pick(self, elem, tags: frozenset, inning: int, index: int = 0):
        """How a normalized pick enters this strategy's history."""
        return elem


class ConstantStrategy(PlayerIStrategy):
    def __init__(self, cover: Cover):
        self.cover = cover

    def answer(self, history):
        return self.cover


class CallbackStrategy(PlayerIStrategy):
    def __init__(self, fn: Callable[[tuple], Cover]):
        self.fn = fn

    def answer(self, history):
        return self.fn(history)


class TreeFileStrategy(PlayerIStrategy):
    """Strategy given by covers at dot-separated pick-index paths.

    In a raw play the history holds actual picked items, matched back to
    item indices; under niceness normalization the picks are cumulative
    joins, so decode_pick records the pick index instead and navigation is
    by index path, which is what the file format names anyway.
    """

    _IDX = "#index"

    def __init__(self, lattice, target, nodes: Dict[tuple, Sequence]):
        self.lattice = lattice
        self.target = target
        self.covers = {path: Cover(lattice, items, target)
                       for path, items in nodes.items()}

    def decode_pick(self, elem, tags, inning, index: int = 0):
        return (self._IDX, index)

    def answer_by_path(self, path: tuple) -> Cover:
        if path not in self.covers:
            raise StrategyPartial(path, f"no cover at index path {path}")
        return self.covers[path]

    def answer(self, history):
        path: tuple = ()
        cover = self.answer_by_path(path)
        for pick in history:
            if isinstance(pick, tuple) and len(pick) == 2 and pick[0] == self._IDX:
                idx = pick[1]
            else:
                try:
                    idx = cover.items.index(pick)
                except ValueError:
                    raise StrategyPartial(history,
                                          "pick not an item of the offered cover")
            path = path + (idx,)
            cover = self.answer_by_path(path)
        return cover


class SeededStrategy(PlayerIStrategy):
    """Draws deterministically from a declared pool of covers of the target."""

    def __init__(self, lattice, target, pool: Sequence[Sequence], seed: int):
        if not pool:
            raise StrategyPartial((), "seeded strategy needs a nonempty pool")
        self.lattice = lattice
        self.seed = seed
        self.pool = [Cover(lattice, items, target) for items in pool]

    def answer(self, history):
        key = tuple(self._pick_key(x) for x in history)
        idx = stable_int("strategy", self.seed, key) % len(self.pool)
        return self.pool[idx]

    def _pick_key(self, pick):
        if isinstance(pick, frozenset):
            return tuple(sorted(self.lattice.sort_key(e) for e in pick))
        return self.lattice.sort_key(pick)


class PlayerIISelector:
    """Chooses a selection from the offered cover each inning."""

    def select(self, inning: int, cover: Cover, running):
        raise NotImplementedError


class IndexSelector(PlayerIISelector):
    """Picks by item index: fixed, cycling, or minimal ("bottom-most")."""

    def __init__(self, policy: str = "first", kind: str = G1):
        self.policy = policy
        self.kind = kind

    def select(self, inning, cover, running):
        L = cover.lattice
        if self.policy == "first":
            i = 0
        elif self.policy == "last":
            i = len(cover) - 1
        elif self.policy == "cycle":
            i = inning % len(cover)
        elif self.policy == "min":
            i = min(range(len(cover)), key=lambda k: L.sort_key(cover.items[k]))
        else:
            raise IllegalSelection(f"unknown pick policy {self.policy!r}")
        return cover.items[i] if self.kind == G1 else frozenset({cover.items[i]})


class SeededSelector(PlayerIISelector):
    def __init__(self, seed: int, kind: str = G1):
        self.seed = seed
        self.kind = kind

    def select(self, inning, cover, running):
        idx = stable_int("selector", self.seed, inning, len(cover)) % len(cover)
        e = cover.items[idx]
        return e if self.kind == G1 else frozenset({e})


# -- transcripts -----------------------------------------------------------------


@dataclass(frozen=True)
class Outcome:
    status: str            # "WonByII" | "Undecided"
    inning: Optional[int]  # winning inning, or depth reached

    @classmethod
    def won(cls, inning: int) -> "Outcome":
        return cls("WonByII", inning)

    @classmethod
    def undecided(cls, depth: int) -> "Outcome":
        return cls("Undecided", depth)


@dataclass(frozen=True)
class Inning:
    cover: Cover
    selection: object      # Elem (G1) or frozenset (Gfin)
    running_join: object


@dataclass
class PlayTranscript:
    """Alternating record of covers and selections with running joins."""

    lattice: Lattice
    kind: str
    target: object
    innings: Tuple[Inning, ...]
    outcome: Outcome

    def validate(self):
        run = self.lattice.bottom
        for k, inn in enumerate(self.innings):
            sel = inn.selection if isinstance(inn.selection, frozenset) else {inn.selection}
            for e in sel:
                if e not in inn.cover.items:
                    raise CorruptTranscript(f"inning {k}: selection outside the cover")
            nxt = self.lattice.sup([run, *sel])
            if nxt != inn.running_join:
                raise CorruptTranscript(f"inning {k}: stored running join is wrong")
            if not self.lattice.leq(run, nxt):
                raise CorruptTranscript(f"inning {k}: running join decreased")
            run = nxt
        return True

    def to_dict(self) -> dict:
        L = self.lattice

        def sel_labels(sel):
            if isinstance(sel, frozenset):
                return sorted(L.label(e) for e in sel)
            return L.label(sel)

        return {
            "game": self.kind,
            "target": L.label(self.target),
            "innings": [
                {
                    "inning": k,
                    "cover": inn.cover.labels(),
                    "selection": sel_labels(inn.selection),
                    "running_join": L.label(inn.running_join),
                }
                for k, inn in enumerate(self.innings)
            ],
            "outcome": {"status": self.outcome.status, "inning": self.outcome.inning},
        }


def adjudicate(t: PlayTranscript, p) -> Outcome:
    """Recompute running joins independently and re-derive the outcome."""
    t.validate()
    run = t.lattice.bottom
    for k, inn in enumerate(t.innings):
        sel = inn.selection if isinstance(inn.selection, frozenset) else {inn.selection}
        run = t.lattice.sup([run, *sel])
        if run == p:
            return Outcome.won(k)
    return Outcome.undecided(len(t.innings))


def play(L: Lattice, kind: str, strat_i: PlayerIStrategy, strat_ii: PlayerIISelector,
         p, depth: int, stop_early: bool = True) -> PlayTranscript:
    """Alternate moves for `depth` innings or until the running join hits p."""
    history: tuple = ()
    innings = []
    run = L.bottom
    outcome = None
    for n in range(depth):
        try:
            cover = strat_i.answer(history)
        except NotACover:
            raise
        except StrategyPartial:
            raise
        except Exception as e:  # noqa: BLE001 - strategy callbacks are user code
            raise StrategyPartial(history, f"strategy failed: {e}") from e
        if cover.target != p or cover.lattice is not L:
            raise NotACover(L.label(cover.target), L.label(p), history)
        sel = strat_ii.select(n, cover, run)
        picks = sel if isinstance(sel, frozenset) else frozenset({sel})
        if kind == G1 and len(picks) != 1:
            raise IllegalSelection("G1 requires exactly one item per inning")
        if not picks <= frozenset(cover.items):
            raise IllegalSelection("selection outside the offered cover")
        run = L.sup([run, *picks])
        innings.append(Inning(cover, sel, run))
        history = history + (sel,)
        if run == p and outcome is None:
            outcome = Outcome.won(n)
            if stop_early:
                break
    if outcome is None:
        outcome = Outcome.undecided(depth)
    return PlayTranscript(L, kind, p, tuple(innings), outcome)


# -- nice strategy trees ----------------------------------------------------------


@dataclass
class NiceStrategyTree:
    """Truncated tree of increasing covers indexed by pick-index sequences.

    Every node cover has exactly `branching` items, covers the target, and
    the first item of a child equals the picked item of its parent.
    """

    lattice: Lattice
    target: object
    depth: int
    branching: int
    nodes: Dict[tuple, IncreasingCover]

    def cover_at(self, s: tuple) -> IncreasingCover:
        return self.nodes[s]

    def paths(self, length: int):
        return itertools.product(range(self.branching), repeat=length)

    def validate(self):
        for length in range(self.depth):
            for s in self.paths(length):
                if s not in self.nodes:
                    raise CorruptTranscript(f"missing node {s}")
                cov = self.nodes[s]
                if len(cov) != self.branching:
                    raise CorruptTranscript(f"node {s} has {len(cov)} items")
                if s:
                    parent = self.nodes[s[:-1]]
                    if cov.items[0] != parent.items[s[-1]]:
                        raise CorruptTranscript(f"first-item rule broken at {s}")
        return True

    def as_strategy(self) -> PlayerIStrategy:
        """Induced strategy: answers by locating each pick in its node cover."""
        tree = self

        def fn(history):
            s: tuple = ()
            for pick in history:
                cover = tree.nodes[s]
                try:
                    idx = cover.items.index(pick)
                except ValueError:
                    raise StrategyPartial(history, "pick is not an item of the node cover")
                s = s + (idx,)
            return tree.nodes[s]

        return CallbackStrategy(fn)


def normalize_to_nice(L: Lattice, strat: PlayerIStrategy, p, depth: int,
                      branching: int) -> NiceStrategyTree:
    """Walk all pick histories and normalize each answer to nice form.

    Raw answers are validated as covers of p, joined with the prior pick
    (which also becomes the first item), made increasing by cumulative
    joins, and resized to `branching` items.  Untagged raw items receive a
    (inning, None, item) mark so composite picks stay decodable.
    """
    if depth < 1 or branching < 1:
        raise SearchBound("depth and branching must be >= 1")
    nodes: Dict[tuple, IncreasingCover] = {}

    def auto_tags(cover: Cover, inning: int):
        if cover.tags is not None:
            return list(cover.tags)
        return [frozenset({(inning, None, e)}) for e in cover.items]

    def build(s: tuple, history: tuple, prior):
        inning = len(s)
        try:
            raw = strat.answer(history)
        except (NotACover, StrategyPartial):
            raise
        except Exception as e:  # noqa: BLE001
            raise StrategyPartial(history, f"strategy failed: {e}") from e
        if raw.lattice is not L or raw.target != p:
            raise NotACover(L.label(raw.target), L.label(p), history)
        tags = auto_tags(raw, inning)
        if prior is None:
            items = list(raw.items)
        else:
            pe, pt = prior
            items = [pe] + [L.join(pe, x) for x in raw.items]
            tags = [pt] + [pt | t for t in tags]
        inc = normalize_increasing(Cover(L, items, p, tags, history=history))
        node = fit_length(inc, branching)
        nodes[s] = node
        if inning + 1 < depth:
            for m in range(branching):
                pick_elem = node.items[m]
                pick_tags = node.tag_at(m)
                payload = strat.decode_pick(pick_elem, pick_tags, inning, m)
                build(s + (m,), history + (payload,), (pick_elem, pick_tags))

    build((), (), None)
    tree = NiceStrategyTree(L, p, depth, branching, nodes)
    tree.validate()
    return tree


# -- brute-force game value ---------------------------------------------------------


def game_value(L: Lattice, kind: str, p, depth: int, cover_pool: Sequence[Cover],
               max_depth: int = 4, max_pool: int = 4) -> bool:
    """Backward induction: can Player II force the join to p within depth
    against every strategy drawing covers from the pool?  True = CanForce."""
    if depth > max_depth or len(cover_pool) > max_pool:
        raise SearchBound("game_value is restricted to tiny instances")
    for c in cover_pool:
        if c.target != p:
            raise NotACover(L.label(c.target), L.label(p))

    memo: Dict[tuple, bool] = {}

    def selections(cover: Cover):
        if kind == G1:
            for e in cover.items:
                yield (e,)
        else:
            idxs = range(len(cover.items))
            for r in range(1, len(cover.items) + 1):
                for picked in itertools.combinations(idxs, r):
                    yield tuple(cover.items[i] for i in picked)

    def canforce(run, d) -> bool:
        if run == p:
            return True
        if d == 0:
            return False
        key = (L.sort_key(run), d)
        if key in memo:
            return memo[key]
        ok = all(
            any(canforce(L.sup([run, *sel]), d - 1) for sel in selections(cover))
            for cover in cover_pool
        )
        memo[key] = ok
        return ok

    return canforce(L.bottom, depth)
