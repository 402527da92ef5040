"""JSON-shaped input files: lattices, covers, strategies; canonical output.

Lattice files: { "name": str, "kind": "explicit" | "powerset" | "chain" |
"topology" | "product" | "finite_cofinite" | "named", kind-specific body }.
Cover files: { "lattice": name-or-inline, "target": label, "items": [...] }
or { ..., "covers": [[...], ...], "f": [ints] }.  Strategy files:
{ "kind": "constant" | "tree" | "seeded_random", ... }.
"""

from __future__ import annotations

import json
from typing import List, Optional, Sequence, Tuple, Union

from . import catalog
from .covers import Cover
from .errors import FileFormatError
from .games import ConstantStrategy, PlayerIStrategy, SeededStrategy, TreeFileStrategy
from .order import FiniteLattice, build_finite_lattice, lattice_from_closed_sets, product
from .symbolic import FiniteCofiniteLattice, finite_cofinite


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise FileFormatError(f"{where}: missing field {key!r}")
    return d[key]


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise FileFormatError(f"{path}: {e}")


def lattice_from_spec(spec: Union[str, dict]) -> Union[FiniteLattice, FiniteCofiniteLattice]:
    """Build a lattice from a catalog name or an inline description."""
    if isinstance(spec, str):
        try:
            return catalog.named(spec)
        except KeyError as e:
            raise FileFormatError(str(e))
    kind = _need(spec, "kind", "lattice")
    name = spec.get("name", kind)
    if kind == "named":
        return lattice_from_spec(str(_need(spec, "name", "lattice: named")))
    if kind == "explicit":
        elements = _need(spec, "elements", "lattice: explicit")
        leq = _need(spec, "leq", "lattice: explicit")
        pairs = [(lo, hi) for lo, hi in leq]
        return build_finite_lattice(elements, pairs, name=name)
    if kind == "powerset":
        pts = _need(spec, "points", "lattice: powerset")
        k = pts if isinstance(pts, int) else len(pts)
        return catalog.powerset(k)
    if kind == "chain":
        return catalog.chain(int(_need(spec, "length", "lattice: chain")))
    if kind == "topology":
        points = list(_need(spec, "points", "lattice: topology"))
        opens = _need(spec, "opens", "lattice: topology")
        index = {p: i for i, p in enumerate(points)}
        masks = []
        for row in opens:
            m = 0
            for p in row:
                if p not in index:
                    raise FileFormatError(f"lattice: topology: unknown point {p!r}")
                m |= 1 << index[p]
            masks.append(m)
        mask_set = set(masks)
        full = (1 << len(points)) - 1
        if 0 not in mask_set or full not in mask_set:
            raise FileFormatError("lattice: topology: opens must include {} and the full set")
        for a in masks:
            for b in masks:
                if (a | b) not in mask_set:
                    raise FileFormatError("lattice: topology: opens not closed under union")
                if (a & b) not in mask_set:
                    raise FileFormatError("lattice: topology: opens not closed under intersection")
        return lattice_from_closed_sets(points, masks, name=name)
    if kind == "product":
        factors = [lattice_from_spec(f) for f in _need(spec, "factors", "lattice: product")]
        if any(isinstance(f, FiniteCofiniteLattice) for f in factors):
            raise FileFormatError("lattice: product factors must be finite")
        return product(factors, name=name)
    if kind == "finite_cofinite":
        return finite_cofinite()
    raise FileFormatError(f"lattice: unknown kind {kind!r}")


def resolve_elems(L: FiniteLattice, labels: Sequence[str], where: str):
    out = []
    for lab in labels:
        try:
            out.append(L.by_label(lab))
        except KeyError:
            raise FileFormatError(f"{where}: unknown element label {lab!r}")
    return out


def load_covers_spec(spec: dict, L: Optional[FiniteLattice] = None
                     ) -> Tuple[FiniteLattice, List[Cover], Optional[List[int]]]:
    """Cover or cover-sequence file; returns (lattice, covers, bounds or None)."""
    if L is None:
        L = lattice_from_spec(_need(spec, "lattice", "covers"))
    target = L.by_label(_need(spec, "target", "covers"))
    rows = spec["covers"] if "covers" in spec else [_need(spec, "items", "covers")]
    covers = [Cover(L, resolve_elems(L, row, "covers"), target) for row in rows]
    bounds = spec.get("f")
    if bounds is not None:
        bounds = [int(x) for x in bounds]
    return L, covers, bounds


def load_strategy_spec(spec: dict, L: FiniteLattice, target) -> PlayerIStrategy:
    kind = _need(spec, "kind", "strategy")
    if kind == "constant":
        items = resolve_elems(L, _need(spec, "cover", "strategy: constant"), "strategy")
        return ConstantStrategy(Cover(L, items, target))
    if kind == "tree":
        nodes = {}
        for path_str, row in _need(spec, "nodes", "strategy: tree").items():
            path = tuple(int(x) for x in path_str.split(".")) if path_str else ()
            nodes[path] = resolve_elems(L, row, f"strategy: tree node {path_str!r}")
        return TreeFileStrategy(L, target, nodes)
    if kind == "seeded_random":
        seed = int(_need(spec, "seed", "strategy: seeded_random"))
        if "pool" in spec:
            pool = [resolve_elems(L, row, "strategy: pool") for row in spec["pool"]]
        else:
            pool = catalog.seeded_pool(L, target, seed)
        return SeededStrategy(L, target, pool, seed)
    raise FileFormatError(f"strategy: unknown kind {kind!r}")


def canonical_json(obj) -> str:
    """Stable rendering for golden files and CLI output."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
