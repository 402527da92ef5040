"""Named example lattices, seeded random topologies, and seeded covers."""

from __future__ import annotations

import hashlib
import random
import re
from typing import List, Optional

from .errors import SizeBound
from .order import Elem, FiniteLattice, build_finite_lattice, lattice_from_closed_sets

MAX_TOPOLOGY_POINTS = 7
MAX_POWERSET_POINTS = 6
_POINTS = ["x", "y", "z", "w", "v", "u", "t"]


def chain(k: int) -> FiniteLattice:
    """Total order on k elements labelled c0 < c1 < ... ."""
    if k < 1:
        raise SizeBound("chain needs at least one element")
    labels = [f"c{i}" for i in range(k)]
    pairs = [(labels[i], labels[i + 1]) for i in range(k - 1)]
    return build_finite_lattice(labels, pairs, name=f"chain({k})")


def powerset(k: int) -> FiniteLattice:
    """All subsets of k points, ordered by inclusion."""
    if not 0 <= k <= MAX_POWERSET_POINTS:
        raise SizeBound(f"powerset supports 0..{MAX_POWERSET_POINTS} points")
    return lattice_from_closed_sets(_POINTS[:k], list(range(1 << k)),
                                    name=f"powerset({k})")


def m3() -> FiniteLattice:
    """The diamond: three incomparable midpoints (not distributive)."""
    pairs = [("0", m) for m in "abc"] + [(m, "1") for m in "abc"]
    return build_finite_lattice(["0", "a", "b", "c", "1"], pairs, name="m3")


def n5() -> FiniteLattice:
    """The pentagon: 0 < a < b < 1 and 0 < c < 1 (not modular)."""
    pairs = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    return build_finite_lattice(["0", "a", "b", "c", "1"], pairs, name="n5")


def sierpinski() -> FiniteLattice:
    """Open sets of the two-point space with one open point."""
    return lattice_from_closed_sets(["x", "y"], [0b00, 0b01, 0b11], name="sierpinski")


def random_topology(points: int, seed: int, max_points: int = MAX_TOPOLOGY_POINTS) -> FiniteLattice:
    """Open-set lattice of the Alexandrov topology of a seeded random preorder.

    Opens are the up-closed subsets, so the result is always a finite frame;
    generation is deterministic per (points, seed).
    """
    if not 1 <= points <= max_points:
        raise SizeBound(f"points must be in 1..{max_points}")
    rng = random.Random(seed)
    succ = [1 << i for i in range(points)]
    for i in range(points):
        for j in range(points):
            if i != j and rng.random() < 0.35:
                succ[i] |= 1 << j
    changed = True
    while changed:  # transitive closure
        changed = False
        for i in range(points):
            acc = succ[i]
            m = succ[i]
            while m:
                j = (m & -m).bit_length() - 1
                acc |= succ[j]
                m &= m - 1
            if acc != succ[i]:
                succ[i] = acc
                changed = True
    opens = []
    for mask in range(1 << points):
        ok = True
        m = mask
        while m and ok:
            i = (m & -m).bit_length() - 1
            ok = (succ[i] & mask) == succ[i]
            m &= m - 1
        if ok:
            opens.append(mask)
    return lattice_from_closed_sets(_POINTS[:points], opens,
                                    name=f"topology({points},{seed})")


_NAMED = {
    "m3": m3,
    "n5": n5,
    "diamond": m3,
    "sierpinski": sierpinski,
    "b2": lambda: powerset(2),
    "b3": lambda: powerset(3),
}


def named(name: str) -> FiniteLattice:
    """Catalog lookup: m3, n5, sierpinski, b2, chain(k), powerset(k),
    topology(points,seed)."""
    key = name.strip().lower()
    if key in _NAMED:
        return _NAMED[key]()
    m = re.fullmatch(r"chain\((\d+)\)|chain(\d+)", key)
    if m:
        return chain(int(m.group(1) or m.group(2)))
    m = re.fullmatch(r"powerset\((\d+)\)|powerset(\d+)", key)
    if m:
        return powerset(int(m.group(1) or m.group(2)))
    m = re.fullmatch(r"topology\((\d+),(\d+)\)", key)
    if m:
        return random_topology(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown lattice name {name!r}")


def catalog_names() -> List[str]:
    return ["b2", "powerset(3)", "chain(3)", "chain(4)", "sierpinski",
            "m3", "n5", "topology(3,7)", "topology(4,42)"]


def generate(kind: str, points: Optional[int] = None, seed: Optional[int] = None) -> FiniteLattice:
    """Named catalog entry or `random_topology` with its size bound."""
    if kind == "random_topology":
        return random_topology(points if points is not None else 4,
                               seed if seed is not None else 0)
    return named(kind)


# -- seeded instance supply ----------------------------------------------------


def stable_int(*parts) -> int:
    """Deterministic 32-bit hash for seeding, independent of PYTHONHASHSEED."""
    text = "|".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:4], "big")


def seeded_cover_items(L: FiniteLattice, p: Elem, rng: random.Random,
                       max_items: int = 4) -> List[Elem]:
    """Random item list with supremum exactly p (repeats allowed)."""
    below = [e for e in L.elems if L.leq(e, p)]
    items: List[Elem] = []
    budget = max(1, max_items)
    run = L.bottom
    while len(items) < budget - 1 and rng.random() < 0.8:
        e = rng.choice(below)
        items.append(e)
        run = L.join(run, e)
    if run != p:
        # close the cover: greedily add complements, ending with p if needed
        candidates = [e for e in below if L.join(run, e) == p]
        items.append(rng.choice(candidates) if candidates else p)
    rng.shuffle(items)
    return items


def seeded_pool(L: FiniteLattice, p: Elem, seed: int, count: int = 3,
                max_items: int = 4) -> List[List[Elem]]:
    """Deterministic pool of covers of p, for seeded strategies."""
    rng = random.Random(stable_int("pool", L.name, L.labels, seed))
    return [seeded_cover_items(L, p, rng, max_items) for _ in range(count)]
