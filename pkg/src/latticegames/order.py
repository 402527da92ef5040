"""Finite bounded lattices: construction, classification, primes, spectra.

Carriers are indexed 0..n-1; the order is kept as per-element up-set
bitmasks and join/meet are precomputed tables, so all later machinery
(covers, games, counterplays) runs on integer lookups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    ForeignElement,
    NotALattice,
    NotAPoset,
)

_IDS = itertools.count(1)


@dataclass(frozen=True, order=True)
class Elem:
    """Opaque element handle, valid only within the lattice that issued it."""

    lat: int
    index: int

    def __repr__(self):
        return f"Elem({self.lat}:{self.index})"


@dataclass(frozen=True)
class LatticeTraits:
    """Cached gate facts a lattice exposes to covers/games/counterplay."""

    enough_primes: bool
    pawlikowski: bool
    primes: Optional[tuple] = None  # None when not finitely enumerable


class Lattice:
    """Shared interface: leq/join/meet/top/bottom plus fold helpers."""

    lat_id: int

    def owns(self, e) -> bool:
        return getattr(e, "lat", None) == self.lat_id

    def require(self, e):
        if not self.owns(e):
            raise ForeignElement(f"element {e!r} does not belong to this lattice")
        return e

    def sup(self, items: Iterable):
        """Least upper bound of a finite family; bottom for the empty one."""
        out = self.bottom
        for e in items:
            out = self.join(out, e)
        return out

    def inf(self, items: Iterable):
        """Greatest lower bound of a finite family; top for the empty one."""
        out = self.top
        for e in items:
            out = self.meet(out, e)
        return out

    # subclasses: leq, join, meet, top, bottom, label, sort_key, traits


class FiniteLattice(Lattice):
    """Explicit bounded lattice over a finite carrier.

    Immutable after construction; all operations are pure and instances are
    safe to share across threads.
    """

    def __init__(self, labels: Sequence[str], upmasks: Sequence[int],
                 join_table=None, meet_table=None, name: str = ""):
        self.lat_id = next(_IDS)
        self.name = name
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self._up = tuple(upmasks)  # _up[i] = bitmask of {j : i <= j}
        self._down = tuple(
            sum(1 << i for i in range(self.n) if (self._up[i] >> j) & 1)
            for j in range(self.n)
        )
        if join_table is None or meet_table is None:
            join_table, meet_table = self._build_tables()
        self._join = join_table
        self._meet = meet_table
        full = (1 << self.n) - 1
        tops = [i for i in range(self.n) if self._down[i] == full]
        bots = [i for i in range(self.n) if self._up[i] == full]
        if not tops or not bots:
            raise NotALattice((None, None), "join", "carrier has no top or no bottom")
        self._top = tops[0]
        self._bottom = bots[0]
        self.elems = tuple(Elem(self.lat_id, i) for i in range(self.n))
        self._by_label = {lab: self.elems[i] for i, lab in enumerate(self.labels)}
        if len(self._by_label) != self.n:
            raise NotAPoset(None, "duplicate labels")
        self._traits = None

    def _build_tables(self):
        n = len(self.labels)
        up, down = self._up, self._down

        def extremum(mask, of_masks, pair, kind):
            # element of `mask` below (kind=join) / above (kind=meet) all of mask
            for i in range(n):
                if (mask >> i) & 1 and (mask & of_masks[i]) == mask:
                    return i
            raise NotALattice(pair, kind)

        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                ij = (self.labels[i], self.labels[j])
                jn = extremum(up[i] & up[j], up, ij, "join")
                mt = extremum(down[i] & down[j], down, ij, "meet")
                join[i][j] = join[j][i] = jn
                meet[i][j] = meet[j][i] = mt
        return join, meet

    # -- basic ops ---------------------------------------------------------

    def elem(self, i: int) -> Elem:
        return self.elems[i]

    def by_label(self, label: str) -> Elem:
        if label not in self._by_label:
            raise KeyError(f"no element labelled {label!r}")
        return self._by_label[label]

    def label(self, e: Elem) -> str:
        self.require(e)
        return self.labels[e.index]

    def sort_key(self, e: Elem):
        return e.index

    def leq(self, a: Elem, b: Elem) -> bool:
        if a.lat != self.lat_id or b.lat != self.lat_id:
            raise ForeignElement(f"{a!r}, {b!r} vs lattice {self.lat_id}")
        return bool((self._up[a.index] >> b.index) & 1)

    def join(self, a: Elem, b: Elem) -> Elem:
        if a.lat != self.lat_id or b.lat != self.lat_id:
            raise ForeignElement(f"{a!r}, {b!r} vs lattice {self.lat_id}")
        return self.elems[self._join[a.index][b.index]]

    def meet(self, a: Elem, b: Elem) -> Elem:
        if a.lat != self.lat_id or b.lat != self.lat_id:
            raise ForeignElement(f"{a!r}, {b!r} vs lattice {self.lat_id}")
        return self.elems[self._meet[a.index][b.index]]

    @property
    def top(self) -> Elem:
        return self.elems[self._top]

    @property
    def bottom(self) -> Elem:
        return self.elems[self._bottom]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteLattice({self.name or self.n} elems)"

    # -- structure for display/layout ---------------------------------------

    def covering_pairs(self):
        """Hasse edges (lo, hi) with nothing strictly between."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j or not (self._up[i] >> j) & 1:
                    continue
                between = self._up[i] & self._down[j] & ~(1 << i) & ~(1 << j)
                if between == 0:
                    out.append((self.elems[i], self.elems[j]))
        return out

    def layers(self):
        """Longest-chain rank from bottom, per element (for Hasse layout)."""
        rank = {self._bottom: 0}
        order = sorted(range(self.n), key=lambda i: bin(self._down[i]).count("1"))
        for i in order:
            below = [j for j in range(self.n) if j != i and (self._up[j] >> i) & 1]
            rank[i] = max((rank[j] + 1 for j in below), default=0)
        return {self.elems[i]: rank[i] for i in range(self.n)}

    def traits(self) -> LatticeTraits:
        if self._traits is None:
            ep, _ = has_enough_primes(self)
            fd, _ = is_frame_distributive(self)
            self._traits = LatticeTraits(ep, fd, primes=tuple(primes(self)))
        return self._traits


def _closure(n, rel):
    """Reflexive-transitive closure of the relation given as upmask rows."""
    up = list(rel)
    for i in range(n):
        up[i] |= 1 << i
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            m = up[i]
            while m:
                j = (m & -m).bit_length() - 1
                acc |= up[j]
                m &= m - 1
            if acc != up[i]:
                up[i] = acc
                changed = True
    return up


def build_finite_lattice(labels: Sequence[str], leq_pairs: Sequence[tuple],
                         name: str = "") -> FiniteLattice:
    """Validate and build a lattice from labels and generating leq pairs.

    The reflexive-transitive closure is applied; antisymmetry failures raise
    NotAPoset and a pair lacking a join or meet raises NotALattice.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise NotAPoset(None, "duplicate labels")
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    rel = [0] * n
    for lo, hi in leq_pairs:
        if lo not in index or hi not in index:
            raise NotAPoset((lo, hi), f"pair {(lo, hi)} uses unknown labels")
        rel[index[lo]] |= 1 << index[hi]
    up = _closure(n, rel)
    for i in range(n):
        for j in range(i + 1, n):
            if (up[i] >> j) & 1 and (up[j] >> i) & 1:
                raise NotAPoset((labels[i], labels[j]))
    return FiniteLattice(labels, up, name=name)


def lattice_from_closed_sets(point_labels: Sequence[str], masks: Sequence[int],
                             name: str = "") -> FiniteLattice:
    """Lattice of a family of sets closed under union and intersection.

    Join/meet come directly from the set algebra, so no table search runs;
    this keeps topology lattices with dozens of opens cheap to build.
    """
    masks = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
    pos = {m: i for i, m in enumerate(masks)}
    n = len(masks)

    def set_label(m):
        inside = [point_labels[i] for i in range(len(point_labels)) if (m >> i) & 1]
        return "{" + ",".join(inside) + "}"

    labels = [set_label(m) for m in masks]
    up = [0] * n
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i, mi in enumerate(masks):
        for j, mj in enumerate(masks):
            if mi & mj == mi:
                up[i] |= 1 << j
            u, w = mi | mj, mi & mj
            if u not in pos or w not in pos:
                raise NotALattice((labels[i], labels[j]), "join",
                                  "family not closed under union/intersection")
            join[i][j] = pos[u]
            meet[i][j] = pos[w]
    return FiniteLattice(labels, up, join, meet, name=name)


# -- classification -----------------------------------------------------------


def sup_family(L: Lattice, items: Iterable):
    """Supremum of a finite family; bottom when the family is empty."""
    return L.sup(items)


def primes(L: FiniteLattice):
    """All q != top with a^b <= q implying a <= q or b <= q, by exhaustion."""
    out = []
    n = L.n
    for q in range(n):
        if q == L._top:
            continue
        dq = L._down[q]
        ok = True
        for a in range(n):
            if ok:
                for b in range(a, n):
                    if (dq >> L._meet[a][b]) & 1 and not (dq >> a) & 1 and not (dq >> b) & 1:
                        ok = False
                        break
        if ok:
            out.append(L.elems[q])
    return out


def has_enough_primes(L: FiniteLattice):
    """True iff every a <= b failure is separated by a prime above b, not a.

    Returns (flag, witness) where the witness is the first violating pair in
    carrier order.
    """
    ps = [q.index for q in primes(L)]
    for a in range(L.n):
        for b in range(L.n):
            if (L._up[a] >> b) & 1:
                continue
            if not any((L._up[b] >> q) & 1 and not (L._up[a] >> q) & 1 for q in ps):
                return False, (L.elems[a], L.elems[b])
    return True, None


def is_frame_distributive(L: FiniteLattice, exhaustive_cap: int = 12):
    """Check (sup A) ^ b == sup{a ^ b : a in A} for all subsets A and all b.

    Carriers up to `exhaustive_cap` are checked over every subset.  Larger
    finite carriers use the binary law (a v b) ^ c == (a ^ c) v (b ^ c),
    which is equivalent on finite lattices since every supremum is a finite
    fold of binary joins; the equivalence itself is exercised in the test
    suite against the exhaustive form.
    """
    n = L.n
    if n <= exhaustive_cap:
        for mask in range(1 << n):
            sup_i = L._bottom
            members = []
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                members.append(i)
                sup_i = L._join[sup_i][i]
                m &= m - 1
            for b in range(n):
                lhs = L._meet[sup_i][b]
                rhs = L._bottom
                for a in members:
                    rhs = L._join[rhs][L._meet[a][b]]
                if lhs != rhs:
                    return False, (tuple(L.elems[i] for i in members), L.elems[b])
        return True, None
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = L._meet[L._join[a][b]][c]
                rhs = L._join[L._meet[a][c]][L._meet[b][c]]
                if lhs != rhs:
                    return False, ((L.elems[a], L.elems[b]), L.elems[c])
    return True, None


@dataclass
class ClassificationReport:
    """Per-lattice verdicts with witnesses for every false field."""

    is_lattice: bool
    is_bounded: bool
    enough_primes: bool
    is_pre_pawlikowski: bool
    is_distributive_over_sups: bool
    is_pawlikowski: bool
    is_spatial: bool
    witnesses: dict = field(default_factory=dict)

    def to_dict(self, L: FiniteLattice) -> dict:
        def wlabel(w):
            if isinstance(w, Elem):
                return L.label(w)
            if isinstance(w, tuple):
                return [wlabel(x) for x in w]
            return w

        return {
            "is_lattice": self.is_lattice,
            "is_bounded": self.is_bounded,
            "enough_primes": self.enough_primes,
            "is_pre_pawlikowski": self.is_pre_pawlikowski,
            "is_distributive_over_sups": self.is_distributive_over_sups,
            "is_pawlikowski": self.is_pawlikowski,
            "is_spatial": self.is_spatial,
            "witnesses": {k: wlabel(v) for k, v in self.witnesses.items()},
        }


def classify(L: FiniteLattice) -> ClassificationReport:
    """Full report: primes, pre-Pawlikowski, frame law, Pawlikowski, spatial."""
    ep, ep_wit = has_enough_primes(L)
    fd, fd_wit = is_frame_distributive(L)
    witnesses = {}
    if not ep:
        witnesses["enough_primes"] = ep_wit
    if not fd:
        witnesses["is_distributive_over_sups"] = fd_wit
    pre = ep  # bounded holds for every finite lattice built here
    return ClassificationReport(
        is_lattice=True,
        is_bounded=True,
        enough_primes=ep,
        is_pre_pawlikowski=pre,
        is_distributive_over_sups=fd,
        is_pawlikowski=pre and fd,
        is_spatial=ep,  # finite bounded lattices are complete
        witnesses=witnesses,
    )


# -- spectrum -----------------------------------------------------------------


@dataclass
class SpectrumSpace:
    """Prime elements as points; the open of a is {q prime : a !<= q}."""

    points: tuple
    opens: dict  # Elem -> frozenset of primes

    def open_of(self, a: Elem) -> frozenset:
        return self.opens[a]


def spectrum(L: FiniteLattice):
    """Build the prime spectrum and report whether a -> open(a) is faithful.

    Faithful means order-reflecting (hence an order isomorphism onto its
    image); for finite lattices this coincides with has_enough_primes.
    """
    pts = tuple(primes(L))
    opens = {
        a: frozenset(q for q in pts if not L.leq(a, q))
        for a in L.elems
    }
    faithful = True
    for a in L.elems:
        for b in L.elems:
            if opens[a] <= opens[b] and not L.leq(a, b):
                faithful = False
                break
        if not faithful:
            break
    return SpectrumSpace(pts, opens), faithful


# -- products -----------------------------------------------------------------


class ProductLattice(FiniteLattice):
    """Pointwise-ordered product of finitely many finite lattices."""

    def __init__(self, factors: Sequence[FiniteLattice], name: str = ""):
        if not factors:
            raise NotALattice((None, None), "join", "empty factor list")
        self.factors = tuple(factors)
        parts = list(itertools.product(*(range(f.n) for f in factors)))
        pos = {p: i for i, p in enumerate(parts)}
        labels = [
            "(" + ",".join(f.labels[k] for f, k in zip(factors, p)) + ")"
            for p in parts
        ]
        n = len(parts)
        up = [0] * n
        join = [[0] * n for _ in range(n)]
        meet = [[0] * n for _ in range(n)]
        for i, pi in enumerate(parts):
            for j, pj in enumerate(parts):
                if all((f._up[x] >> y) & 1 for f, x, y in zip(factors, pi, pj)):
                    up[i] |= 1 << j
                join[i][j] = pos[tuple(f._join[x][y] for f, x, y in zip(factors, pi, pj))]
                meet[i][j] = pos[tuple(f._meet[x][y] for f, x, y in zip(factors, pi, pj))]
        self._parts = parts
        self._pos = pos
        super().__init__(labels, up, join, meet, name=name or "product")

    def project(self, k: int, e: Elem) -> Elem:
        """Component of e in the k-th factor."""
        self.require(e)
        return self.factors[k].elems[self._parts[e.index][k]]

    def from_parts(self, comps: Sequence[Elem]) -> Elem:
        key = tuple(e.index for e in comps)
        return self.elems[self._pos[key]]


def product(factors: Sequence[FiniteLattice], name: str = "") -> ProductLattice:
    return ProductLattice(factors, name=name)
