"""Covers of a target element and brute-force selection-principle deciders.

A cover is a finite ordered item list whose supremum is the target; an
increasing cover additionally lists cumulative joins and, by the
stabilization convention, stands for the countable cover that repeats its
last item forever.  Selectors search exhaustively and deterministically:
minimal total size first, then items loaded into the earliest covers,
then lexicographic item order.
"""

from __future__ import annotations

import itertools
from typing import List, Optional, Sequence, Tuple

from .errors import (
    EmptyInstance,
    ForeignElement,
    NoPrimes,
    NotACover,
    NotIncreasing,
    NotPawlikowski,
    SearchBound,
)
from .order import Lattice

DEFAULT_MAX_COVERS = 8
DEFAULT_MAX_NODES = 2_000_000


class Cover:
    """Ordered item list with sup(items) == target, checked at construction.

    `tags` optionally carries one frozenset of provenance marks per item;
    the game machinery uses them to decode composite picks.
    """

    __slots__ = ("lattice", "items", "target", "tags")

    def __init__(self, lattice: Lattice, items: Sequence, target,
                 tags: Optional[Sequence[frozenset]] = None, history=None):
        self.lattice = lattice
        self.items = tuple(lattice.require(e) for e in items)
        self.target = lattice.require(target)
        sup = lattice.sup(self.items)
        if sup != target:
            raise NotACover(lattice.label(sup), lattice.label(target), history)
        if tags is not None:
            tags = tuple(frozenset(t) for t in tags)
            if len(tags) != len(self.items):
                raise NotACover("tag row", "item row", history)
        self.tags = tags

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def labels(self) -> List[str]:
        return [self.lattice.label(e) for e in self.items]

    def __repr__(self):
        return f"Cover[{', '.join(self.labels())} -> {self.lattice.label(self.target)}]"


class IncreasingCover(Cover):
    """Cover with nondecreasing items attaining the target at the end."""

    def __init__(self, lattice, items, target, tags=None, history=None):
        super().__init__(lattice, items, target, tags, history)
        if not self.items:
            raise NotIncreasing("stabilization needs at least one item")
        for a, b in zip(self.items, self.items[1:]):
            if not lattice.leq(a, b):
                raise NotIncreasing(f"{lattice.label(a)} !<= {lattice.label(b)}")
        if self.items[-1] != target:
            raise NotIncreasing("increasing cover must end at its target")

    def at(self, i: int):
        """Item at index i under the stabilization convention."""
        return self.items[min(i, len(self.items) - 1)]

    def tag_at(self, i: int) -> frozenset:
        if self.tags is None:
            return frozenset()
        return self.tags[min(i, len(self.items) - 1)]


def is_cover(L: Lattice, items: Sequence, p) -> bool:
    """True iff the family's supremum is exactly p."""
    return L.sup(L.require(e) for e in items) == L.require(p)


def normalize_increasing(cover: Cover) -> IncreasingCover:
    """Replace items by cumulative joins; same length, same target."""
    L = cover.lattice
    items, tags = [], []
    run = L.bottom
    seen: frozenset = frozenset()
    for i, e in enumerate(cover.items):
        run = L.join(run, e)
        items.append(run)
        if cover.tags is not None:
            seen = seen | cover.tags[i]
            tags.append(seen)
    return IncreasingCover(L, items, cover.target,
                           tags if cover.tags is not None else None)


def fit_length(cover: IncreasingCover, length: int) -> IncreasingCover:
    """Resize an increasing cover to exactly `length` items.

    Shorter covers repeat their last item; longer ones keep the first
    length-1 items and end at the target (whose tag is the union of all
    item tags, since the last cumulative join absorbs every item).
    """
    L = cover.lattice
    items = list(cover.items)
    tags = list(cover.tags) if cover.tags is not None else None
    if len(items) > length:
        items = items[:length - 1] + [cover.target]
        if tags is not None:
            tags = tags[:length - 1] + [tags[-1]]
    while len(items) < length:
        items.append(items[-1])
        if tags is not None:
            tags.append(tags[-1])
    return IncreasingCover(L, items, cover.target, tags)


def wedge(A: Cover, B: Cover) -> Cover:
    """Common refinement {a ^ b}, item order a-major; needs the frame law."""
    L = A.lattice
    if L is not B.lattice:
        raise ForeignElement("wedge operands must share a lattice")
    if A.target != B.target:
        raise NotACover(L.label(B.target), L.label(A.target))
    if not L.traits().pawlikowski:
        raise NotPawlikowski("wedge needs distributivity over suprema")
    items = [L.meet(a, b) for a in A.items for b in B.items]
    tags = None
    if A.tags is not None and B.tags is not None:
        tags = [A.tags[i] | B.tags[j]
                for i in range(len(A)) for j in range(len(B))]
    return Cover(L, items, A.target, tags)


def wedge_all(covers: Sequence[Cover]) -> Cover:
    out = covers[0]
    for c in covers[1:]:
        out = wedge(out, c)
    return out


# -- selector search core -------------------------------------------------------


def _families(sizes: Sequence[int], caps: Sequence[int], total: int):
    """All per-cover index subsets with the given total size.

    Order: more items in earlier covers first, then lexicographic subsets;
    this realizes the documented first-cover tie-break.
    """
    def rec(i, left):
        if i == len(sizes):
            if left == 0:
                yield ()
            return
        hi = min(left, sizes[i], caps[i])
        for take in range(hi, -1, -1):
            for picked in itertools.combinations(range(sizes[i]), take):
                for rest in rec(i + 1, left - take):
                    yield (picked,) + rest
    yield from rec(0, total)


def _check_empty(L, covers, p):
    if not covers:
        if p == L.bottom:
            return True
        raise EmptyInstance("no covers given and target is not bottom")
    return False


def _guard(counter, max_nodes):
    counter[0] += 1
    if counter[0] > max_nodes:
        raise SearchBound(f"selector search exceeded {max_nodes} nodes")


def s1_select(L: Lattice, covers: Sequence[Cover], p,
              max_covers: int = DEFAULT_MAX_COVERS,
              max_nodes: int = DEFAULT_MAX_NODES) -> Optional[Tuple]:
    """One item per cover with supremum p, or None.

    Exhaustive product search in item order; the first solution in
    lexicographic index order is returned.
    """
    if _check_empty(L, covers, p):
        return ()
    if len(covers) > max_covers:
        raise SearchBound(f"{len(covers)} covers exceeds bound {max_covers}")
    counter = [0]
    for picks in itertools.product(*(range(len(c)) for c in covers)):
        _guard(counter, max_nodes)
        chosen = tuple(c.items[i] for c, i in zip(covers, picks))
        if L.sup(chosen) == p:
            return chosen
    return None


def sfin_select(L: Lattice, covers: Sequence[Cover], p,
                max_covers: int = DEFAULT_MAX_COVERS,
                max_nodes: int = DEFAULT_MAX_NODES) -> Optional[Tuple[Tuple, ...]]:
    """Minimal-cardinality finite subsets, one per cover, jointly covering p.

    Minimality is total item count; ties prefer earlier covers, then
    lexicographic item positions.  On finite lattices a solution always
    exists (take everything), so the content is the minimum.
    """
    if _check_empty(L, covers, p):
        return ()
    if len(covers) > max_covers:
        raise SearchBound(f"{len(covers)} covers exceeds bound {max_covers}")
    sizes = [len(c) for c in covers]
    caps = sizes
    counter = [0]
    for total in range(0, sum(sizes) + 1):
        for fam in _families(sizes, caps, total):
            _guard(counter, max_nodes)
            chosen = [tuple(c.items[i] for i in picked)
                      for c, picked in zip(covers, fam)]
            if L.sup(e for f in chosen for e in f) == p:
                return tuple(tuple(f) for f in chosen)
    return None


def f_bounded_select(L: Lattice, covers: Sequence[Cover],
                     f: Sequence[int], p,
                     max_covers: int = DEFAULT_MAX_COVERS,
                     max_nodes: int = DEFAULT_MAX_NODES) -> Optional[Tuple[Tuple, ...]]:
    """Subsets B_n with |B_n| <= f(n) jointly covering p, or None."""
    if _check_empty(L, covers, p):
        return ()
    if len(covers) > max_covers:
        raise SearchBound(f"{len(covers)} covers exceeds bound {max_covers}")
    if len(f) < len(covers):
        raise SearchBound("bound function shorter than the cover list")
    sizes = [len(c) for c in covers]
    caps = [max(0, int(f[i])) for i in range(len(covers))]
    counter = [0]
    for total in range(0, sum(min(s, c) for s, c in zip(sizes, caps)) + 1):
        for fam in _families(sizes, caps, total):
            _guard(counter, max_nodes)
            chosen = [tuple(c.items[i] for i in picked)
                      for c, picked in zip(covers, fam)]
            if L.sup(e for g in chosen for e in g) == p:
                return tuple(tuple(g) for g in chosen)
    return None


def hurewicz_check(L, covers: Sequence[Cover], t: int,
                   max_covers: int = DEFAULT_MAX_COVERS,
                   max_nodes: int = DEFAULT_MAX_NODES) -> Optional[Tuple[Tuple, ...]]:
    """Bounded stand-in for the Hurewicz property.

    Searches finite F_n per cover whose joins reach top overall and whose
    per-inning join exceeds every prime at all indices n >= t (the suffix
    replaces "cofinitely many").  Exploratory only.
    """
    prs = L.traits().primes
    if prs is None or not prs:
        raise NoPrimes("prime-quantified suffix condition would be vacuous")
    if not covers:
        raise EmptyInstance("no covers given")
    if len(covers) > max_covers:
        raise SearchBound(f"{len(covers)} covers exceeds bound {max_covers}")
    if t < 0:
        raise SearchBound("suffix index must be >= 0")
    top = L.top
    sizes = [len(c) for c in covers]
    counter = [0]
    for total in range(0, sum(sizes) + 1):
        for fam in _families(sizes, sizes, total):
            _guard(counter, max_nodes)
            chosen = [tuple(c.items[i] for i in picked)
                      for c, picked in zip(covers, fam)]
            joins = [L.sup(g) for g in chosen]
            if L.sup(joins) != top:
                continue
            if all(not L.leq(joins[n], q)
                   for n in range(t, len(covers)) for q in prs):
                return tuple(tuple(g) for g in chosen)
    return None
