"""Command-line interface: ``brickforge <command> ...``.

Exit codes: 0 success, 1 property failure, 2 parse error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .config import limits_from_env
from .doubleton import Doubleton, make_doubleton
from .errors import BrickforgeError, GraphFormatError, TheoremViolation, TooLarge
from .generator import generate_catalog, reduction_sequence, save_catalog, simple_classes
from .graphcore import Multigraph, format_graph, is_bipartite, read_graph
from .matching import is_bicritical, is_brick, is_matching_covered
from .nearbip import EdgeClassification, removable_doubletons
from .retractthin import classify_edges
from .tightcut import decompose
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_LIMIT = 0, 1, 2, 3


class ResourceLimit(Exception):
    pass


@dataclass
class AnalysisReport:
    n: int
    m: int
    simple: bool
    matching_covered: bool
    bicritical: bool
    brick: bool
    near_bipartite: bool
    bipartite: bool
    b: int | None
    doubletons: list[Doubleton] = field(default_factory=list)
    edges: list[EdgeClassification] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in ("n", "m", "simple", "matching_covered", "bicritical", "brick",
                                           "near_bipartite", "bipartite", "b")}
        d["removable"] = [c.edge_id for c in self.edges if c.removable]
        d["doubletons"] = [R.to_dict() for R in self.doubletons]
        d["edges"] = [c.to_dict() for c in self.edges]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(d["n"], d["m"], d["simple"], d["matching_covered"], d["bicritical"], d["brick"],
                   d["near_bipartite"], d["bipartite"], d["b"],
                   [Doubleton.from_dict(x) for x in d["doubletons"]],
                   [EdgeClassification.from_dict(x) for x in d["edges"]])


def analyze(G: Multigraph) -> AnalysisReport:
    mc = is_matching_covered(G)
    bip = is_bipartite(G)
    doubletons = removable_doubletons(G) if mc and not bip else []
    return AnalysisReport(
        n=G.n, m=G.m, simple=G.is_simple(), matching_covered=mc, bicritical=is_bicritical(G),
        brick=is_brick(G), near_bipartite=bool(doubletons), bipartite=bip,
        b=decompose(G).b if mc else None, doubletons=doubletons,
        edges=classify_edges(G, doubletons) if mc else [],
    )


# -- helpers -----------------------------------------------------------------------------

def _load(path: str) -> Multigraph:
    G = read_graph(path)
    limit = limits_from_env().input_max_n
    if G.n > limit:
        raise ResourceLimit(f"{path}: {G.n} vertices exceeds the limit of {limit} (BRICKFORGE_MAX_N)")
    return G


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=1) if getattr(args, "json", False) else text)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _pick_doubleton(G: Multigraph, pair) -> Doubleton:
    if pair is None:
        found = removable_doubletons(G)
        if not found:
            raise TheoremViolation("graph has no removable doubleton")
        return found[0]
    R = make_doubleton(G, *pair)
    if R is None:
        raise TheoremViolation(f"edges {pair[0]} and {pair[1]} do not form a removable doubleton")
    return R


# -- commands ----------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    rep = analyze(_load(args.path))
    text = "\n".join([
        f"vertices {rep.n}  edges {rep.m}  simple {rep.simple}",
        f"matching covered {rep.matching_covered}  bicritical {rep.bicritical}  brick {rep.brick}",
        f"bipartite {rep.bipartite}  near-bipartite {rep.near_bipartite}  b {rep.b}",
        f"removable edges {[c.edge_id for c in rep.edges if c.removable]}",
        f"doubletons {[list(R.edges) for R in rep.doubletons]}",
    ])
    _emit(args, rep.to_dict(), text)
    return EXIT_OK


def cmd_decompose(args) -> int:
    G = _load(args.path)
    res = decompose(G, seed=args.seed)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        index = []
        for i, (P, tag) in enumerate(res.pieces):
            name = f"piece_{i:03d}.txt"
            _atomic_write(out / name, format_graph(P, comment=tag))
            index.append({"file": name, "tag": tag, "n": P.n, "m": P.m})
        _atomic_write(out / "decomposition.json", json.dumps({"b": res.b, "pieces": index}, indent=1))
    text = f"b {res.b}\n" + "\n".join(f"{tag} n={P.n} m={P.m}" for P, tag in res.pieces)
    _emit(args, res.to_dict(), text)
    return EXIT_OK


def cmd_doubletons(args) -> int:
    G = _load(args.path)
    found = removable_doubletons(G)
    _emit(args, {"doubletons": [R.to_dict() for R in found]},
          "\n".join(f"{R.alpha} {R.beta}" for R in found) or "none")
    return EXIT_OK


def cmd_classify(args) -> int:
    G = _load(args.path)
    doubletons = [_pick_doubleton(G, args.doubleton)] if args.doubleton else None
    rows = classify_edges(G, doubletons)
    lines = []
    for c in rows:
        flags = " ".join(f"R{{{d.alpha},{d.beta}}}:compat={d.R_compatible},thin={d.R_thin},"
                         f"index={d.index},rank={d.rank}" for d in c.doubletons)
        lines.append(f"{c.edge_id} removable={c.removable} b_invariant={c.b_invariant} thin={c.thin} {flags}")
    _emit(args, {"edges": [c.to_dict() for c in rows]}, "\n".join(lines))
    return EXIT_OK


def cmd_reduce(args) -> int:
    G = _load(args.path)
    R = _pick_doubleton(G, args.doubleton)
    seq = reduction_sequence(G, R, args.strategy)
    chain = " -> ".join(f"(n={s.graph.n}, e={s.e})" for s in seq.steps) or "(already a base)"
    _emit(args, seq.to_dict(), f"{chain} -> {seq.tag}")
    return EXIT_OK


def cmd_generate(args) -> int:
    lim = limits_from_env()
    if args.max_n > lim.catalog_max_n:
        raise ResourceLimit(f"--max-n {args.max_n} exceeds the catalog limit of {lim.catalog_max_n}")
    entries = generate_catalog(args.max_n, simple_only=args.simple_only, max_excess=args.max_excess)
    if args.out:
        save_catalog(entries, args.out)
    classes = simple_classes(entries)
    payload = {"entries": len(entries), "simple_classes": len(classes),
               "by_order": _count_by_order(entries)}
    _emit(args, payload, f"{len(entries)} entries, {len(classes)} simple-underlying classes")
    return EXIT_OK


def _count_by_order(entries) -> dict:
    out: dict = {}
    for c in entries:
        out[str(c.graph.n)] = out.get(str(c.graph.n), 0) + 1
    return out


def cmd_verify(args) -> int:
    overrides = {}
    for item in args.override or []:
        name, _, path = item.partition("=")
        if not path:
            raise GraphFormatError(f"--override expects NAME=PATH, got {item!r}")
        overrides[name] = _load(path)
    rep = run_suite(args.suite, n_max=args.max_n, seed=args.seed, max_excess=args.max_excess,
                    overrides=overrides)
    _emit(args, rep.to_dict(), "\n".join(r.line() for r in rep.results))
    if not rep.ok and not args.json:
        for r in rep.results:
            for f in r.failures[:1]:
                print(json.dumps({"check": r.name, "counterexample": f}), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brickforge", description="Matching covered graphs and near-bipartite bricks.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_path(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("path")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    with_path("analyze", cmd_analyze, "flags, b(G), doubletons and per-edge classification")
    sp = with_path("decompose", cmd_decompose, "tight cut decomposition")
    sp.add_argument("--out", help="directory for piece files and decomposition.json")
    sp.add_argument("--seed", type=int, default=None, help="random cut order")
    with_path("doubletons", cmd_doubletons, "removable doubletons")
    for name, fn, help_text in (("classify", cmd_classify, "per-edge classification"),
                                ("reduce", cmd_reduce, "reduce to K4 or the prism")):
        sp = with_path(name, fn, help_text)
        sp.add_argument("--doubleton", nargs=2, type=int, metavar=("ALPHA", "BETA"))
        if name == "reduce":
            sp.add_argument("--strategy", choices=("scan", "ascent"), default="scan")

    sp = sub.add_parser("generate", help="catalog of near-bipartite bricks")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--max-excess", type=int, default=None, help="bound on edges minus vertices")
    sp.add_argument("--simple-only", action="store_true")
    sp.add_argument("--out")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", help="run property suites")
    sp.add_argument("--suite", choices=SUITES, default="core")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--max-excess", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--override", action="append", metavar="NAME=PATH",
                    help="replace a built-in graph, e.g. st8=mutant.txt")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceLimit, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (TheoremViolation, BrickforgeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness:
            print(json.dumps(witness), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
