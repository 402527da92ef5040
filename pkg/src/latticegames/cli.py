"""Command-line front door.

Exit codes: 0 success, 1 domain error (error name in the JSON output),
2 usage error.  All randomness is seeded and the seed is echoed in the
output header.
"""

from __future__ import annotations

import argparse
import json
import sys
from . import catalog
from .counterplay import (
    menger_counterplay,
    rothberger_counterplay,
    severe_defeat_play,
)
from .covers import f_bounded_select, is_cover, s1_select, sfin_select
from .errors import LatticeGamesError
from .fileio import (
    canonical_json,
    lattice_from_spec,
    load_covers_spec,
    load_json,
    load_strategy_spec,
)
from .games import G1, GFIN, IndexSelector, SeededSelector, normalize_to_nice, play
from .order import classify, primes, spectrum
from .symbolic import FiniteCofiniteLattice


def _load_lattice(path_or_name: str):
    if path_or_name.endswith(".json"):
        return lattice_from_spec(load_json(path_or_name))
    return lattice_from_spec(path_or_name)


def _emit(payload: dict, args) -> None:
    header = {"command": payload.pop("_command", None)}
    if getattr(args, "seed", None) is not None:
        header["seed"] = args.seed
    out = {k: v for k, v in header.items() if v is not None}
    out.update(payload)
    sys.stdout.write(canonical_json(out))


def _cmd_classify(args) -> int:
    L = _load_lattice(args.lattice)
    if isinstance(L, FiniteCofiniteLattice):
        _emit({"_command": "classify", "lattice": "finite_cofinite",
               "is_lattice": True, "is_bounded": True, "enough_primes": True,
               "is_pre_pawlikowski": True, "is_distributive_over_sups": True,
               "is_pawlikowski": True, "is_spatial": False,
               "note": "not complete; supremum of a proper symbolic family is undefined"},
              args)
        return 0
    report = classify(L)
    _emit({"_command": "classify", "lattice": L.name, **report.to_dict(L)}, args)
    return 0


def _cmd_primes(args) -> int:
    L = _load_lattice(args.lattice)
    if isinstance(L, FiniteCofiniteLattice):
        _emit({"_command": "primes", "lattice": "finite_cofinite",
               "primes": "complements of singletons (not finitely enumerable)"}, args)
        return 0
    _emit({"_command": "primes", "lattice": L.name,
           "primes": [L.label(q) for q in primes(L)]}, args)
    return 0


def _cmd_spectrum(args) -> int:
    L = _load_lattice(args.lattice)
    space, faithful = spectrum(L)
    _emit({
        "_command": "spectrum",
        "lattice": L.name,
        "points": [L.label(q) for q in space.points],
        "opens": {L.label(a): sorted(L.label(q) for q in space.opens[a])
                  for a in L.elems},
        "faithful": faithful,
    }, args)
    return 0


def _cmd_check_cover(args) -> int:
    spec = load_json(args.covers)
    L, covers, _ = load_covers_spec(spec)
    results = []
    for c in covers:
        results.append({"items": c.labels(), "is_cover": True,
                        "sup": L.label(L.sup(c.items))})
    _emit({"_command": "check-cover", "lattice": L.name,
           "target": L.label(covers[0].target), "covers": results}, args)
    return 0


def _cmd_select(args) -> int:
    spec = load_json(args.covers)
    L, covers, bounds = load_covers_spec(spec)
    p = covers[0].target
    if args.mode == "s1":
        picks = s1_select(L, covers, p)
        body = None if picks is None else [L.label(e) for e in picks]
    elif args.mode == "sfin":
        picks = sfin_select(L, covers, p)
        body = None if picks is None else [[L.label(e) for e in f] for f in picks]
    else:
        if bounds is None:
            bounds = [int(x) for x in (args.bounds or "").split(",") if x != ""]
        picks = f_bounded_select(L, covers, bounds, p)
        body = None if picks is None else [[L.label(e) for e in f] for f in picks]
    if picks is None:
        _emit({"_command": "select", "mode": args.mode, "result": "none"}, args)
        return 1
    _emit({"_command": "select", "mode": args.mode, "picks": body}, args)
    return 0


def _cmd_simulate(args) -> int:
    L = _load_lattice(args.lattice)
    p = L.by_label(args.target) if args.target else L.top
    strat = load_strategy_spec(load_json(args.strategy), L, p)
    if args.seed is not None:
        selector = SeededSelector(args.seed, kind=args.kind)
    else:
        selector = IndexSelector(args.pick_policy, kind=args.kind)
    transcript = play(L, args.kind, strat, selector, p, args.depth)
    _emit({"_command": "simulate", "lattice": L.name,
           **transcript.to_dict()}, args)
    return 0


def _cmd_counterplay(args) -> int:
    L = _load_lattice(args.lattice)
    p = L.by_label(args.target) if args.target else L.top
    strat = load_strategy_spec(load_json(args.strategy), L, p)
    strict = not args.exploratory
    if args.mode == "menger":
        tree = normalize_to_nice(L, strat, p, args.depth, args.branching)
        result = menger_counterplay(L, tree, strict=strict)
        _emit({"_command": "counterplay", "mode": "menger", "lattice": L.name,
               **result.to_dict()}, args)
        return 0
    if args.mode == "severe":
        result = severe_defeat_play(L, strat, args.depth, args.width,
                                    args.recurrence, branching=args.branching,
                                    strict=strict)
        _emit({"_command": "counterplay", "mode": "severe", "lattice": L.name,
               **result.to_dict()}, args)
        return 0
    result = rothberger_counterplay(L, strat, args.depth,
                                    branching=args.branching,
                                    width=args.width, strict=strict)
    _emit({"_command": "counterplay", "mode": "rothberger", "lattice": L.name,
           **result.to_dict()}, args)
    return 0


def _cmd_serve(args) -> int:
    from .server import serve
    serve(args.port)
    return 0


def _cmd_repl(args) -> int:
    sys.stdout.write("latticegames repl; commands: catalog | classify <name> | "
                     "primes <name> | quit\n")
    for line in sys.stdin:
        words = line.strip().split()
        if not words:
            continue
        try:
            if words[0] in ("quit", "exit"):
                break
            if words[0] == "catalog":
                sys.stdout.write(", ".join(catalog.catalog_names()) + "\n")
            elif words[0] == "classify" and len(words) > 1:
                L = catalog.named(words[1])
                sys.stdout.write(canonical_json(classify(L).to_dict(L)))
            elif words[0] == "primes" and len(words) > 1:
                L = catalog.named(words[1])
                sys.stdout.write(json.dumps([L.label(q) for q in primes(L)]) + "\n")
            else:
                sys.stdout.write("unknown command\n")
        except LatticeGamesError as e:
            sys.stdout.write(f"error {e.name}: {e}\n")
        except KeyError as e:
            sys.stdout.write(f"error: {e}\n")
        sys.stdout.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="latticegames",
                                 description="Lattice cover games laboratory")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, lattice=True):
        if lattice:
            p.add_argument("--lattice", required=True,
                           help="lattice file (.json) or catalog name")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--strict", dest="exploratory", action="store_false",
                       default=False)
        p.add_argument("--exploratory", dest="exploratory", action="store_true")

    p = sub.add_parser("classify");  common(p);  p.set_defaults(fn=_cmd_classify)
    p = sub.add_parser("primes");    common(p);  p.set_defaults(fn=_cmd_primes)
    p = sub.add_parser("spectrum");  common(p);  p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("check-cover")
    p.add_argument("--covers", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_check_cover)

    p = sub.add_parser("select")
    p.add_argument("mode", choices=["s1", "sfin", "fbounded"])
    p.add_argument("--covers", required=True)
    p.add_argument("--bounds", default=None, help="comma-separated per-cover caps")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=_cmd_select)

    p = sub.add_parser("simulate")
    common(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--kind", choices=[G1, GFIN], default=G1)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--target", default=None)
    p.add_argument("--pick-policy", default="first",
                   choices=["first", "last", "cycle", "min"])
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("counterplay")
    p.add_argument("mode", choices=["menger", "rothberger", "severe"])
    common(p)
    p.add_argument("--strategy", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--branching", type=int, default=3)
    p.add_argument("--width", type=int, default=4)
    p.add_argument("--recurrence", type=int, default=2)
    p.add_argument("--target", default=None)
    p.set_defaults(fn=_cmd_counterplay)

    p = sub.add_parser("serve")
    p.add_argument("--port", type=int, default=8731)
    p.set_defaults(fn=_cmd_serve)

    p = sub.add_parser("repl")
    p.set_defaults(fn=_cmd_repl)
    return ap


def run_command(argv=None) -> int:
    """Parse and execute; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except LatticeGamesError as e:
        sys.stdout.write(canonical_json({"error": e.name, "detail": str(e)}))
        return 1
    except KeyError as e:
        sys.stdout.write(canonical_json({"error": "UnknownName", "detail": str(e)}))
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
