"""Constructive counter-play machinery for Player II.

Given a nice strategy tree for Player I, the branch families at each level
are tail sets: every bounded-support cut across the branches has an infimum,
and those infima again cover the target.  Selecting finitely many cut infima
per level and replaying the tree with the pointwise-maximal cuts yields a
play that Player II wins.  Lifting a strategy to almost-constant sequences
gives plays whose projected selections exceed every prime often (severe
defeat), and decoding meets of those selections through history-wedge
bookkeeping defeats single-pick strategies as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .covers import Cover, IncreasingCover, s1_select, sfin_select
from .errors import (
    DecodeFailure,
    DepthExceeded,
    EmptyInstance,
    HistoryBlowup,
    NotACover,
    NotEnoughPrimes,
    NotPawlikowski,
    SearchBound,
    SelectorFailed,
    SizeBound,
    StrategyPartial,
)
from .games import (
    GFIN,
    G1,
    Inning,
    NiceStrategyTree,
    Outcome,
    PlayTranscript,
    PlayerIStrategy,
    normalize_to_nice,
)
from .order import FiniteLattice, Lattice
from .symbolic import AlmostConstantLattice, almost_constant


# -- branch families and cuts ---------------------------------------------------


@dataclass(frozen=True)
class CutVector:
    """Per-branch start indices encoding a bounded-complement subfamily.

    Only nonzero cuts are stored; under the stabilization convention the
    entry m for branch s encodes the tail {items of s at indices >= m}.
    """

    entries: Tuple[Tuple[tuple, int], ...]  # ((path, m), ...), m > 0, sorted

    @classmethod
    def of(cls, mapping: Dict[tuple, int]) -> "CutVector":
        return cls(tuple(sorted((s, m) for s, m in mapping.items() if m > 0)))

    def cut(self, path: tuple) -> int:
        for s, m in self.entries:
            if s == path:
                return m
        return 0

    @property
    def support(self) -> Tuple[tuple, ...]:
        return tuple(s for s, _ in self.entries)

    def max_with(self, other: "CutVector") -> "CutVector":
        keys = {s for s, _ in self.entries} | {s for s, _ in other.entries}
        return CutVector.of({s: max(self.cut(s), other.cut(s)) for s in keys})

    def to_dict(self) -> dict:
        return {".".join(map(str, s)) if s else "": m for s, m in self.entries}


ZERO_CUT = CutVector(())


@dataclass
class BranchFamily:
    """All node covers at one tree level: the union of Player I's possible
    answers in that inning."""

    lattice: Lattice
    target: object
    level: int
    branches: Tuple[Tuple[tuple, IncreasingCover], ...]


@dataclass
class TailFamily:
    """Deduplicated infima of bounded cuts, each with a witness cut vector."""

    lattice: Lattice
    elements: Tuple
    witness: Dict  # element -> CutVector (lexicographically first)
    cut_bound: Optional[int]
    max_support: Optional[int]


def union_family(tree: NiceStrategyTree, n: int) -> BranchFamily:
    """Branch family at level n: covers A_s for every index path of length n."""
    if not 0 <= n < tree.depth:
        raise DepthExceeded(f"level {n} outside tree depth {tree.depth}")
    branches = tuple((s, tree.nodes[s]) for s in tree.paths(n))
    return BranchFamily(tree.lattice, tree.target, n, branches)


def inf_of_cut(fam: BranchFamily, cuts: CutVector):
    """Meet over branches of the item at each branch's cut index."""
    L = fam.lattice
    return L.inf(cov.at(cuts.cut(s)) for s, cov in fam.branches)


def tail_family(fam: BranchFamily, cut_bound: Optional[int] = None,
                max_support: Optional[int] = None) -> TailFamily:
    """Enumerate cut infima exactly via value-level dynamic programming.

    States are (meet value, branches cut so far); the witness kept per value
    is the lexicographically first cut vector in branch order.  The default
    bounds are exact for truncated trees: every cut index up to the branch
    length and unrestricted support.
    """
    L = fam.lattice
    states = {(L.top, 0): ()}
    for s, cov in fam.branches:
        hi = len(cov.items) - 1
        if cut_bound is not None:
            hi = min(hi, cut_bound)
        new = {}
        for (val, supp), prefix in sorted(states.items(),
                                          key=lambda kv: kv[1]):
            for m in range(hi + 1):
                nsupp = supp + (1 if m > 0 else 0)
                if max_support is not None and nsupp > max_support:
                    continue
                key = (L.meet(val, cov.at(m)), nsupp)
                if key not in new:
                    new[key] = prefix + (m,)
        states = new
    best: Dict[object, tuple] = {}
    for (val, _), prefix in states.items():
        if val not in best or prefix < best[val]:
            best[val] = prefix
    paths = [s for s, _ in fam.branches]
    witness = {
        val: CutVector.of({s: m for s, m in zip(paths, prefix) if m > 0})
        for val, prefix in best.items()
    }
    elements = tuple(sorted(best, key=L.sort_key))
    return TailFamily(L, elements, witness, cut_bound, max_support)


def verify_tail_set(fam: BranchFamily, p, cut_bound: Optional[int] = None) -> bool:
    """True iff the cut infima again cover p (the tail-set condition)."""
    tf = tail_family(fam, cut_bound)
    return fam.lattice.sup(tf.elements) == p


# -- the finite-pick counter-play ------------------------------------------------


@dataclass
class LevelReport:
    level: int
    branch_count: int
    family: List[str]
    tail_set_verified: bool
    selected: List[dict] = field(default_factory=list)
    combined_cut: dict = field(default_factory=dict)
    cut_bound: str = "exact"  # surfaced so no approximation passes silently


@dataclass
class MengerResult:
    transcript: PlayTranscript
    levels: List[LevelReport]
    selection_policy: str
    picks_meta: List[tuple]  # (inning, path, index, tags)

    def to_dict(self) -> dict:
        return {
            "selection_policy": self.selection_policy,
            "levels": [
                {
                    "level": lv.level,
                    "branches": lv.branch_count,
                    "tail_family": lv.family,
                    "tail_set_verified": lv.tail_set_verified,
                    "selected": lv.selected,
                    "combined_cut": lv.combined_cut,
                    "cut_bound": lv.cut_bound,
                }
                for lv in self.levels
            ],
            "transcript": self.transcript.to_dict(),
        }


def menger_counterplay(L: Lattice, tree: NiceStrategyTree,
                       strict: bool = True, selection: str = "sfin",
                       stop_early: bool = True,
                       max_nodes: int = 2_000_000) -> MengerResult:
    """Defeat a nice finite-pick strategy.

    Per level, the tail family of the branch union is itself a cover of the
    target; a finite selection across levels (minimal by default, the
    all-stabilized-end cuts under the "saturate" policy) fixes per-level
    combined cuts, and replaying the tree picking each inning's item at the
    combined cut index wins within depth.
    """
    p = tree.target
    traits = L.traits()
    if strict and not traits.enough_primes:
        raise NotEnoughPrimes("counter-play needs the prime separation property")
    depth = tree.depth
    fams = [union_family(tree, n) for n in range(depth)]
    tails = [tail_family(f) for f in fams]
    levels = [
        LevelReport(
            level=n,
            branch_count=len(fams[n].branches),
            family=[L.label(e) for e in tails[n].elements],
            tail_set_verified=(L.sup(tails[n].elements) == p),
        )
        for n in range(depth)
    ]

    if selection == "saturate":
        # one selected element per level: the all-end cut, whose infimum is p
        chosen: List[List] = []
        for n, fam in enumerate(fams):
            cut = CutVector.of({s: len(cov.items) - 1 for s, cov in fam.branches})
            chosen.append([(p, cut)])
    elif selection == "sfin":
        covers = [Cover(L, tf.elements, p) for tf in tails]
        picked = sfin_select(L, covers, p, max_covers=max(8, depth),
                             max_nodes=max_nodes)
        if picked is None:
            raise SelectorFailed("no finite selection over the tail families")
        chosen = [[(f, tails[n].witness[f]) for f in fs]
                  for n, fs in enumerate(picked)]
    else:
        raise SelectorFailed(f"unknown selection policy {selection!r}")

    combined: List[CutVector] = []
    for n, sel in enumerate(chosen):
        cut = ZERO_CUT
        for f, w in sel:
            cut = cut.max_with(w)
        combined.append(cut)
        levels[n].selected = [
            {"element": L.label(f), "cuts": w.to_dict()} for f, w in sel
        ]
        levels[n].combined_cut = cut.to_dict()

    # replay: at inning n the current node is a level-n branch
    s: tuple = ()
    run = L.bottom
    innings: List[Inning] = []
    picks_meta = []
    outcome = None
    for n in range(depth):
        cov = tree.nodes[s]
        idx = min(combined[n].cut(s), len(cov.items) - 1)
        pick = cov.items[idx]
        run = L.join(run, pick)
        innings.append(Inning(cov, pick, run))
        picks_meta.append((n, s, idx, cov.tag_at(idx)))
        if run == p and outcome is None:
            outcome = Outcome.won(n)
            if stop_early:
                break
        s = s + (idx,)
    if outcome is None:
        outcome = Outcome.undecided(depth)
    transcript = PlayTranscript(L, GFIN, p, tuple(innings), outcome)
    return MengerResult(transcript, levels, selection, picks_meta)


# -- lifting to almost-constant sequences ------------------------------------------


class LiftedStrategy(PlayerIStrategy):
    """Plays the delta image of a base finite-pick strategy on the sequence
    lattice; width-truncated, targeting top on the tracked coordinates."""

    def __init__(self, L: FiniteLattice, base: PlayerIStrategy, width: int,
                 seq: Optional[AlmostConstantLattice] = None):
        if width < 1:
            raise SizeBound("width must be >= 1")
        self.L = L
        self.base = base
        self.width = width
        self.seq = seq if seq is not None else almost_constant(L)
        self.target = self.seq.truncated_top(width)

    def answer(self, history):
        base_cover = self.base.answer(tuple(history))
        if base_cover.target != self.L.top:
            raise NotACover(self.L.label(base_cover.target),
                            self.L.label(self.L.top), history)
        inning = len(history)
        items, tags = [], []
        for a in base_cover.items:
            for c in range(self.width):
                items.append(self.seq.delta(c, a))
                tags.append(frozenset({(inning, c, a)}))
        return Cover(self.seq, items, self.target, tags, history=history)

    def decode_pick(self, elem, tags, inning, index: int = 0):
        return frozenset(b for (d, c, b) in tags if d == inning)


class GfinTreeAdapter(PlayerIStrategy):
    """Reads a nice tree as a finite-pick strategy: a selected finite set is
    located in the node cover through its join."""

    def __init__(self, tree: NiceStrategyTree):
        self.tree = tree

    def answer(self, history):
        L = self.tree.lattice
        s: tuple = ()
        for sel in history:
            cover = self.tree.nodes[s]
            if isinstance(sel, frozenset) and not sel:
                idx = 0  # nothing new selected: repeating the prior pick
            else:
                joined = L.sup(sel) if isinstance(sel, frozenset) else sel
                try:
                    idx = cover.items.index(joined)
                except ValueError:
                    raise StrategyPartial(history, "selection join is not a node item")
            s = s + (idx,)
        return self.tree.nodes[s]


def lift_strategy(L: FiniteLattice, sigma, width: int,
                  depth: Optional[int] = None,
                  branching: Optional[int] = None):
    """Nice tree of the delta-lifted strategy over the sequence lattice.

    Returns (tree, sequence lattice, lifted target).  `sigma` is either a
    base nice tree or a finite-pick strategy; project_selections maps lifted
    picks back to base item sets through the delta provenance tags.
    """
    if isinstance(sigma, NiceStrategyTree):
        depth = depth if depth is not None else sigma.depth
        branching = branching if branching is not None else sigma.branching
        base: PlayerIStrategy = GfinTreeAdapter(sigma)
    else:
        base = sigma
        if depth is None or branching is None:
            raise SizeBound("depth and branching are required for callback strategies")
    lifted = LiftedStrategy(L, base, width)
    tree = normalize_to_nice(lifted.seq, lifted, lifted.target, depth, branching)
    return tree, lifted.seq, lifted.target


def project_selection(tags: frozenset, inning: Optional[int] = None) -> frozenset:
    """Base items behind a lifted pick; restricted to one inning if given."""
    return frozenset(b for (d, c, b) in tags if inning is None or d == inning)


# -- severe defeat ------------------------------------------------------------------


@dataclass
class SevereDefeatReport:
    depth: int
    width: int
    recurrence_target: int
    counts: Dict             # prime Elem -> number of innings exceeding it
    misses: List[tuple]      # (prime, count) below target
    satisfied: bool

    def to_dict(self, L: FiniteLattice) -> dict:
        return {
            "depth": self.depth,
            "width": self.width,
            "recurrence_target": self.recurrence_target,
            "per_prime": {L.label(q): c for q, c in self.counts.items()},
            "misses": [[L.label(q), c] for q, c in self.misses],
            "satisfied": self.satisfied,
        }


@dataclass
class SevereDefeatResult:
    base: FiniteLattice
    menger: MengerResult
    base_covers: List[Cover]        # the base strategy's answers along the play
    selections: List[List]          # per inning, full projected base items
    current_selections: List[List]  # per inning, same-inning base items only
    projections: List[List]         # per inning, (coord, base item) pairs
    report: SevereDefeatReport

    def to_dict(self) -> dict:
        L = self.base
        return {
            "report": self.report.to_dict(L),
            "base_play": [
                {"inning": n, "cover": cov.labels(),
                 "selection": [L.label(e) for e in F]}
                for n, (cov, F) in enumerate(zip(self.base_covers,
                                                 self.selections))
            ],
            "current_selections": [[L.label(e) for e in F]
                                   for F in self.current_selections],
            "projections": [[[c, L.label(b)] for c, b in P]
                            for P in self.projections],
            "lifted": self.menger.to_dict(),
        }


def severe_defeat_play(L: FiniteLattice, sigma, depth: int, width: int,
                       recurrence: int, branching: int = 3,
                       strict: bool = True) -> SevereDefeatResult:
    """Play the lifted game to full depth and check the recurrence proxy.

    The lifted counter-play under the "saturate" policy absorbs every fresh
    delta each inning, so the projected selections join to top per inning;
    the report counts, per prime of the base, the innings whose selection
    join exceeds it, demanding at least `recurrence` apiece.
    """
    traits = L.traits()
    if strict and not traits.enough_primes:
        raise NotEnoughPrimes("severe defeat needs the prime separation property")
    if width < max(1, recurrence):
        raise SizeBound("width must be at least the recurrence target")
    tree, seq, target = lift_strategy(L, sigma, width,
                                      depth=depth, branching=branching)
    menger = menger_counterplay(seq, tree, strict=strict,
                                selection="saturate", stop_early=False)
    selections, current, projections = [], [], []
    for inning, _path, _idx, tags in menger.picks_meta:
        full = sorted(project_selection(tags), key=L.sort_key)
        cur = sorted(project_selection(tags, inning), key=L.sort_key)
        selections.append(full)
        current.append(cur)
        projections.append(sorted(((c, b) for (d, c, b) in tags if d == inning),
                                  key=lambda cb: (cb[0], L.sort_key(cb[1]))))
    base_covers = [
        sigma.answer(tuple(frozenset(F) for F in current[:n]))
        for n in range(len(current))
    ]
    prs = traits.primes or ()
    counts = {
        q: sum(1 for F in selections if not L.leq(L.sup(F), q))
        for q in prs
    }
    misses = [(q, c) for q, c in counts.items() if c < recurrence]
    report = SevereDefeatReport(depth, width, recurrence, counts, misses,
                                satisfied=not misses)
    return SevereDefeatResult(L, menger, base_covers, selections, current,
                              projections, report)


# -- distinct-inning meets and pick decoding ------------------------------------------


@dataclass
class MeetsFamily:
    elements: Tuple
    witness: Dict  # element -> (indices tuple, picks tuple), lexicographically first


def meets_family(L: Lattice, Fs: Sequence[Sequence], k: int,
                 max_nodes: int = 500_000) -> MeetsFamily:
    """All meets of k+1 elements drawn from k+1 pairwise distinct sets."""
    if k + 1 > len(Fs):
        raise SearchBound(f"needs {k + 1} sets, got {len(Fs)}")
    ordered = [sorted(F, key=L.sort_key) for F in Fs]
    elements: Dict = {}
    nodes = 0
    for J in itertools.combinations(range(len(Fs)), k + 1):
        for G in itertools.product(*(ordered[j] for j in J)):
            nodes += 1
            if nodes > max_nodes:
                raise SearchBound(f"meets enumeration exceeded {max_nodes} nodes")
            v = L.inf(G)
            if v not in elements:
                elements[v] = (J, G)
    return MeetsFamily(tuple(sorted(elements, key=L.sort_key)), elements)


@dataclass
class PickDecode:
    picks: Tuple                 # one element per input set
    levels_used: int
    assigned: Dict               # set index -> element chosen by the decoding
    meets: List[dict]            # per level: element and its witness


def rothberger_pick(L: Lattice, Fs: Sequence[Sequence],
                    levels: Optional[int] = None, level_cap: int = 6,
                    max_nodes: int = 200_000) -> Optional[PickDecode]:
    """One element per set with supremum top, through distinct-inning meets.

    Builds the meets families V_0..V_{K-1}, runs the single-pick selector
    over them, and decodes each picked meet to a representative element of a
    fresh set; remaining sets contribute their first element.  K defaults to
    the smallest of the set count, the number of primes, and `level_cap`,
    stepping down when a level's family fails to cover.  When the selector
    search exceeds its budget, the prime-directed transversal (one prime per
    level, first element exceeding it per fresh set) is used instead.
    """
    traits = L.traits()
    if not traits.enough_primes:
        raise NotEnoughPrimes("pick decoding needs the prime separation property")
    if not Fs or any(not F for F in Fs):
        raise EmptyInstance("every selection set must be nonempty")
    top = L.top
    nprimes = len(traits.primes) if traits.primes else level_cap
    k0 = max(1, min(len(Fs), nprimes, level_cap))
    ordered = [sorted(F, key=L.sort_key) for F in Fs]

    for K in range(k0, 0, -1):
        fams: List[MeetsFamily] = []
        ok = True
        for k in range(K):
            mf = meets_family(L, Fs, k, max_nodes=max_nodes)
            if L.sup(mf.elements) != top:
                ok = False
                break
            fams.append(mf)
        if not ok:
            continue
        # big elements first so the product search hits a solution early
        covers = [Cover(L, tuple(reversed(mf.elements)), top) for mf in fams]
        try:
            sel = s1_select(L, covers, top, max_covers=max(8, K),
                            max_nodes=max_nodes)
        except SearchBound:
            sel = _prime_directed(L, ordered, K, traits.primes)
        if sel is None and traits.primes:
            sel = _prime_directed(L, ordered, K, traits.primes)
        if sel is None:
            continue
        used: Dict[int, object] = {}
        meets_info = []
        failed = False
        for k, v in enumerate(sel):
            if v in fams[k].witness:
                J, G = fams[k].witness[v]
            else:
                J, G = _witness_for(L, ordered, v, k, set(used))
                if J is None:
                    failed = True
                    break
            cand = [(j, g) for j, g in zip(J, G) if j not in used]
            if not cand:
                failed = True
                break
            j, g = cand[0]
            used[j] = g
            meets_info.append({"level": k, "element": L.label(v),
                               "sets": list(J), "assigned_to": j})
        if failed:
            continue
        picks = tuple(used.get(n, ordered[n][0]) for n in range(len(Fs)))
        if L.sup(picks) != top:
            continue
        return PickDecode(picks, K, used, meets_info)
    return None


def _prime_directed(L, ordered, K, prs):
    """Transversal assigning one prime per level: the meet over k+1 fresh sets
    of their first element exceeding that prime."""
    if not prs or len(prs) < 1:
        return None
    qs = sorted(prs, key=L.sort_key)
    sel = []
    for k in range(K):
        q = qs[k % len(qs)]
        factors = []
        for F in ordered:
            e = next((x for x in F if not L.leq(x, q)), None)
            if e is not None:
                factors.append(e)
            if len(factors) == k + 1:
                break
        if len(factors) < k + 1:
            return None
        sel.append(L.inf(factors))
    return tuple(sel)


def _witness_for(L, ordered, v, k, used):
    """Recover a distinct-set witness for a meet value not in the family table
    (prime-directed selections); prefers sets outside `used`."""
    pools = []
    for j, F in enumerate(ordered):
        cand = [e for e in F if L.leq(v, e)]
        if cand:
            pools.append((j, cand[0]))
    fresh = [pc for pc in pools if pc[0] not in used]
    rest = [pc for pc in pools if pc[0] in used]
    chosen = (fresh + rest)[:k + 1]
    if len(chosen) < k + 1 or not fresh:
        return None, None
    # put one fresh set first so the caller's assignment succeeds
    chosen.sort(key=lambda pc: (pc[0] in used, pc[0]))
    J = tuple(pc[0] for pc in chosen)
    G = tuple(pc[1] for pc in chosen)
    return J, G


# -- history wedges and the single-pick counter-play -----------------------------------


class WedgeStrategy(PlayerIStrategy):
    """Finite-pick auxiliary strategy wedging a single-pick strategy over all
    histories consistent with play so far.

    Wedge covers are deduplicated by value; each value keeps the
    lexicographically first choice function, recoverable per history prefix
    for decoding.  Selecting values extends the candidate histories by their
    representative choice functions.
    """

    def __init__(self, L: FiniteLattice, strat1: PlayerIStrategy,
                 cap: Optional[int] = 64):
        if not L.traits().pawlikowski:
            raise NotPawlikowski("history wedges need distributivity over suprema")
        self.L = L
        self.strat1 = strat1
        self.cap = cap
        self._states: Dict[tuple, tuple] = {}
        self._covers: Dict[tuple, Cover] = {}

    def cover_of(self, h: tuple) -> Cover:
        """The single-pick strategy's raw answer at history h."""
        if h not in self._covers:
            cov = self.strat1.answer(h)
            if cov.target != self.L.top:
                raise NotACover(self.L.label(cov.target),
                                self.L.label(self.L.top), h)
            self._covers[h] = cov
        return self._covers[h]

    def _hkey(self, h: tuple):
        return tuple(self.L.sort_key(e) for e in h)

    def state(self, history: tuple):
        """(candidate histories, wedge value -> choice function) at a prefix."""
        history = tuple(history)
        if history in self._states:
            return self._states[history]
        if not history:
            H: Tuple[tuple, ...] = ((),)
        else:
            H_prev, wedge_prev = self.state(history[:-1])
            sel = history[-1]
            sel = sel if isinstance(sel, frozenset) else frozenset({sel})
            chosen = sorted((v for v in sel if v in wedge_prev),
                            key=self.L.sort_key)
            if chosen:
                nxt = {h + (wedge_prev[v][h],) for v in chosen for h in H_prev}
                H = tuple(sorted(nxt, key=self._hkey))
            else:
                H = H_prev
        if self.cap is not None and len(H) > self.cap:
            raise HistoryBlowup(len(H), len(history), self.cap)
        wedge = self._wedge(H)
        self._states[history] = (H, wedge)
        return self._states[history]

    def _wedge(self, H):
        L = self.L
        covers = [self.cover_of(h) for h in H]
        states: Dict[object, tuple] = {L.top: ()}
        for cov in covers:
            new: Dict[object, tuple] = {}
            for val, prefix in sorted(states.items(), key=lambda kv: kv[1]):
                for idx, item in enumerate(cov.items):
                    nval = L.meet(val, item)
                    key_new = nval
                    if key_new not in new:
                        new[key_new] = prefix + (idx,)
            states = new
        return {
            val: {h: covers[i].items[prefix[i]] for i, h in enumerate(H)}
            for val, prefix in states.items()
        }

    def answer(self, history):
        _H, wedge = self.state(tuple(history))
        items = sorted(wedge, key=self.L.sort_key)
        return Cover(self.L, items, self.L.top, history=history)

    def wedge_values_and_g(self, history: tuple) -> Dict:
        return self.state(tuple(history))[1]

    def candidate_histories(self, history: tuple):
        return self.state(tuple(history))[0]


def history_wedge_strategy(L: FiniteLattice, strat1: PlayerIStrategy,
                           cap: Optional[int] = 64) -> WedgeStrategy:
    return WedgeStrategy(L, strat1, cap)


@dataclass
class RothbergerResult:
    transcript: PlayTranscript   # the decoded single-pick play
    picks: Tuple                 # f_n, the wedge values driving each inning
    decoded: Tuple               # u_n, the actual items played
    dominance: Tuple             # u_n >= f_n flags
    levels_used: int
    severe: SevereDefeatResult
    panels: List[dict]           # per-inning decode data for display

    def to_dict(self) -> dict:
        L = self.transcript.lattice
        return {
            "transcript": self.transcript.to_dict(),
            "picks": [L.label(f) for f in self.picks],
            "decoded": [L.label(u) for u in self.decoded],
            "dominance": list(self.dominance),
            "levels_used": self.levels_used,
            "severe": self.severe.to_dict(),
            "panels": self.panels,
        }


def rothberger_counterplay(L: FiniteLattice, strat1: PlayerIStrategy,
                           depth: int, branching: int = 3,
                           width: Optional[int] = None,
                           history_cap: Optional[int] = None,
                           level_cap: int = 6,
                           strict: bool = True) -> RothbergerResult:
    """Defeat a single-pick strategy on a distributive lattice with primes.

    Pipeline: wedge the strategy over candidate histories, lift and severely
    defeat the wedge, decode per-inning selections, choose one wedge value
    per inning with supremum top, and thread a single history through the
    stored choice functions.  The resulting picks dominate the chosen values
    pointwise, so the decoded play is won within depth.
    """
    traits = L.traits()
    if not traits.pawlikowski:
        raise NotPawlikowski("single-pick counter-play needs the frame law")
    if not traits.primes:
        raise NotEnoughPrimes("single-pick counter-play needs prime elements")
    w = width if width is not None else depth
    aux = WedgeStrategy(L, strat1, cap=history_cap)
    r_needed = min(depth, len(traits.primes), level_cap)
    severe = severe_defeat_play(L, aux, depth, w, r_needed,
                                branching=branching, strict=strict)
    Fs_cur = severe.current_selections
    if any(not F for F in Fs_cur):
        raise DecodeFailure("an inning decoded to no fresh wedge values")
    shrunk = [greedy_subcover(L, F, L.top) for F in Fs_cur]
    decode = rothberger_pick(L, shrunk, level_cap=level_cap)
    if decode is None:
        raise SelectorFailed("no transversal over the decoded selections")

    h: tuple = ()
    run = L.bottom
    innings: List[Inning] = []
    decoded_items: List = []
    dominance: List[bool] = []
    panels: List[dict] = []
    outcome = None
    for n in range(depth):
        prefix = tuple(frozenset(F) for F in Fs_cur[:n])
        wedge = aux.wedge_values_and_g(prefix)
        f_n = decode.picks[n]
        if f_n not in wedge:
            raise DecodeFailure(f"value {L.label(f_n)} missing from inning {n} wedge")
        g = wedge[f_n]
        if h not in g:
            raise DecodeFailure(f"threaded history lost at inning {n}")
        u_n = g[h]
        cover = aux.cover_of(h)
        run = L.join(run, u_n)
        innings.append(Inning(cover, u_n, run))
        decoded_items.append(u_n)
        dominance.append(L.leq(f_n, u_n))
        panels.append({
            "inning": n,
            "candidate_histories": len(aux.candidate_histories(prefix)),
            "wedge_size": len(wedge),
            "value": L.label(f_n),
            "pick": L.label(u_n),
            "running_join": L.label(run),
        })
        h = h + (u_n,)
        if run == L.top and outcome is None:
            outcome = Outcome.won(n)
            break
    if outcome is None:
        outcome = Outcome.undecided(depth)
    transcript = PlayTranscript(L, G1, L.top, tuple(innings), outcome)
    return RothbergerResult(transcript, decode.picks[:len(innings)],
                            tuple(decoded_items), tuple(dominance),
                            decode.levels_used, severe, panels)


def greedy_subcover(L: Lattice, items: Sequence, target) -> List:
    """Small deterministic subfamily with the same supremum."""
    out: List = []
    run = L.bottom
    for e in sorted(items, key=L.sort_key):
        nxt = L.join(run, e)
        if nxt != run:
            out.append(e)
            run = nxt
        if run == target:
            break
    if run != target:
        return sorted(items, key=L.sort_key)
    for e in list(out):
        rest = [x for x in out if x != e]
        if L.sup(rest) == target:
            out = rest
    return out
