"""Two symbolic infinite lattices.

Both are bounded lattices over infinite data kept finitely describable:

* the finite-or-cofinite subsets of the naturals, where non-completeness
  is demonstrable through an eventually-periodic pattern calculus;
* almost-constant sequences over a finite base lattice, the carrier of the
  delta-lifting used by the counterplay constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import CoordinateOutOfRange, InvalidSymbolicSet
from .order import Elem, FiniteLattice, Lattice, LatticeTraits

_IDS = itertools.count(10_000)


# -- finite / cofinite --------------------------------------------------------


@dataclass(frozen=True, order=True)
class FcElem:
    """A finite set (cofinite=False) or the complement of one (cofinite=True)."""

    lat: int
    cofinite: bool
    support: frozenset

    def __repr__(self):
        kind = "Cof" if self.cofinite else "Fin"
        return f"{kind}{{{','.join(map(str, sorted(self.support)))}}}"


@dataclass(frozen=True)
class SymbolicSet:
    """Eventually periodic subset of the naturals.

    Membership is (i mod period in residues) xor (i in exceptions).  The set
    is finite iff residues is empty and cofinite iff residues covers every
    residue class.
    """

    exceptions: frozenset
    period: int
    residues: frozenset

    def __post_init__(self):
        if self.period < 1:
            raise InvalidSymbolicSet(f"period must be >= 1, got {self.period}")
        if not all(0 <= r < self.period for r in self.residues):
            raise InvalidSymbolicSet("residues outside [0, period)")
        if not all(isinstance(e, int) and e >= 0 for e in self.exceptions):
            raise InvalidSymbolicSet("exceptions must be naturals")

    def contains(self, i: int) -> bool:
        return ((i % self.period) in self.residues) != (i in self.exceptions)

    def kind(self) -> str:
        if not self.residues:
            return "finite"
        if len(self.residues) == self.period:
            return "cofinite"
        return "proper"

    @classmethod
    def finite(cls, members):
        return cls(frozenset(members), 1, frozenset())

    @classmethod
    def all_naturals(cls):
        return cls(frozenset(), 1, frozenset({0}))

    @classmethod
    def evens(cls):
        return cls(frozenset(), 2, frozenset({0}))


class FiniteCofiniteLattice(Lattice):
    """Subsets of the naturals that are finite or cofinite, under inclusion.

    Bounded and distributive with enough primes, but not complete: the
    supremum of the singletons over a proper eventually-periodic set does
    not exist, which sup_defined makes observable.
    """

    def __init__(self):
        self.lat_id = next(_IDS)

    def fin(self, members) -> FcElem:
        return FcElem(self.lat_id, False, frozenset(members))

    def cof(self, holes) -> FcElem:
        return FcElem(self.lat_id, True, frozenset(holes))

    def singleton(self, i: int) -> FcElem:
        return self.fin({i})

    @property
    def bottom(self) -> FcElem:
        return self.fin(())

    @property
    def top(self) -> FcElem:
        return self.cof(())

    def leq(self, a: FcElem, b: FcElem) -> bool:
        self.require(a), self.require(b)
        if not a.cofinite and not b.cofinite:
            return a.support <= b.support
        if not a.cofinite and b.cofinite:
            return not (a.support & b.support)
        if a.cofinite and not b.cofinite:
            return False  # a cofinite set is never inside a finite one
        return b.support <= a.support

    def join(self, a: FcElem, b: FcElem) -> FcElem:
        self.require(a), self.require(b)
        if not a.cofinite and not b.cofinite:
            return self.fin(a.support | b.support)
        if a.cofinite and b.cofinite:
            return self.cof(a.support & b.support)
        f, c = (a, b) if not a.cofinite else (b, a)
        return self.cof(c.support - f.support)

    def meet(self, a: FcElem, b: FcElem) -> FcElem:
        self.require(a), self.require(b)
        if not a.cofinite and not b.cofinite:
            return self.fin(a.support & b.support)
        if a.cofinite and b.cofinite:
            return self.cof(a.support | b.support)
        f, c = (a, b) if not a.cofinite else (b, a)
        return self.fin(f.support - c.support)

    def label(self, e: FcElem) -> str:
        self.require(e)
        body = ",".join(map(str, sorted(e.support)))
        return ("Cof{" if e.cofinite else "Fin{") + body + "}"

    def sort_key(self, e: FcElem):
        return (e.cofinite, sorted(e.support))

    def sup_defined(self, family: SymbolicSet) -> Optional[FcElem]:
        """Supremum of {singleton(i) : i in family} when it exists.

        The least upper bound exists exactly when the described set is
        itself finite or cofinite; a proper pattern has arbitrarily smaller
        cofinite upper bounds, so the answer is None.
        """
        kind = family.kind()
        if kind == "finite":
            return self.fin(family.exceptions)
        if kind == "cofinite":
            return self.cof(family.exceptions)
        return None

    def traits(self) -> LatticeTraits:
        # complements of singletons separate; unions distribute over meets
        return LatticeTraits(enough_primes=True, pawlikowski=True, primes=None)


# -- almost-constant sequences ------------------------------------------------


@dataclass(frozen=True)
class SeqElem:
    """Sequence over the base lattice that equals `tail` at all but finitely
    many coordinates; `overrides` holds the exceptional coordinates."""

    lat: int
    tail: Elem
    overrides: tuple  # sorted ((coord, Elem), ...), values != tail

    def __repr__(self):
        ov = ",".join(f"{c}:{v.index}" for c, v in self.overrides)
        return f"Seq(tail={self.tail.index}|{ov})"


class AlmostConstantLattice(Lattice):
    """Pointwise lattice of almost-constant sequences over a finite base.

    Carries no global width; constructors that need one take it explicitly
    and enforce `width_bound` when configured.
    """

    def __init__(self, base: FiniteLattice, width_bound: Optional[int] = None):
        self.lat_id = next(_IDS)
        self.base = base
        self.width_bound = width_bound
        self._join_memo = {}
        self._meet_memo = {}

    def _check_coord(self, n: int):
        if n < 0:
            raise CoordinateOutOfRange(f"coordinate {n} negative")
        if self.width_bound is not None and n >= self.width_bound:
            raise CoordinateOutOfRange(f"coordinate {n} >= width bound {self.width_bound}")

    def make(self, tail: Elem, overrides) -> SeqElem:
        self.base.require(tail)
        canon = []
        for c, v in sorted(overrides):
            if c < 0:
                raise CoordinateOutOfRange(f"coordinate {c} negative")
            self.base.require(v)
            if v != tail:
                canon.append((c, v))
        return SeqElem(self.lat_id, tail, tuple(canon))

    def constant(self, value: Elem) -> SeqElem:
        return self.make(value, ())

    def delta(self, n: int, a: Elem) -> SeqElem:
        """Sequence that is a at coordinate n and bottom elsewhere."""
        self._check_coord(n)
        return self.make(self.base.bottom, ((n, a),))

    def one_omega(self) -> SeqElem:
        """The constantly-top sequence."""
        return self.constant(self.base.top)

    def p_tilde(self, m: int, p: Elem) -> SeqElem:
        """Top everywhere except p at coordinate m."""
        self._check_coord(m)
        return self.make(self.base.top, ((m, p),))

    def truncated_top(self, width: int) -> SeqElem:
        """Top on coordinates < width, bottom beyond: the lifted game target."""
        if width < 1:
            raise CoordinateOutOfRange("width must be >= 1")
        self._check_coord(width - 1)
        return self.make(self.base.bottom, tuple((i, self.base.top) for i in range(width)))

    def value_at(self, e: SeqElem, coord: int) -> Elem:
        self.require(e)
        for c, v in e.overrides:
            if c == coord:
                return v
        return e.tail

    def leq(self, a: SeqElem, b: SeqElem) -> bool:
        self.require(a), self.require(b)
        if not self.base.leq(a.tail, b.tail):
            return False
        da, db = dict(a.overrides), dict(b.overrides)
        return all(
            self.base.leq(da.get(c, a.tail), db.get(c, b.tail))
            for c in da.keys() | db.keys()
        )

    def _combine(self, a: SeqElem, b: SeqElem, op, memo) -> SeqElem:
        if a is b or a == b:
            return a
        key = (a, b)
        out = memo.get(key)
        if out is None:
            tail = op(a.tail, b.tail)
            da, db = dict(a.overrides), dict(b.overrides)
            ov = sorted((c, op(da.get(c, a.tail), db.get(c, b.tail)))
                        for c in da.keys() | db.keys())
            out = SeqElem(self.lat_id, tail,
                          tuple((c, v) for c, v in ov if v != tail))
            memo[key] = memo[(b, a)] = out
        return out

    def join(self, a: SeqElem, b: SeqElem) -> SeqElem:
        self.require(a), self.require(b)
        return self._combine(a, b, self.base.join, self._join_memo)

    def meet(self, a: SeqElem, b: SeqElem) -> SeqElem:
        self.require(a), self.require(b)
        return self._combine(a, b, self.base.meet, self._meet_memo)

    @property
    def top(self) -> SeqElem:
        return self.constant(self.base.top)

    @property
    def bottom(self) -> SeqElem:
        return self.constant(self.base.bottom)

    def label(self, e: SeqElem) -> str:
        self.require(e)
        ov = ",".join(f"{c}:{self.base.label(v)}" for c, v in e.overrides)
        return f"[{ov}|tail={self.base.label(e.tail)}]"

    def sort_key(self, e: SeqElem):
        return (e.tail.index, tuple((c, v.index) for c, v in e.overrides))

    def traits(self) -> LatticeTraits:
        """The pointwise lattice inherits both gate properties from the base:
        primes lift as top-everywhere-but-one-coordinate sequences and the
        frame law is checked coordinatewise."""
        t = self.base.traits()
        return LatticeTraits(t.enough_primes, t.pawlikowski, primes=None)


def almost_constant(base: FiniteLattice, width_bound: Optional[int] = None) -> AlmostConstantLattice:
    return AlmostConstantLattice(base, width_bound)


def finite_cofinite() -> FiniteCofiniteLattice:
    return FiniteCofiniteLattice()
