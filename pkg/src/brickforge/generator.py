"""R-thin edge search, reduction to K4 / the prism, expansions and the catalog of
near-bipartite bricks."""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .doubleton import Doubleton, check_R_brick, make_doubleton
from .errors import AlreadyThin, BaseBrick, NotRCompatible, TheoremViolation
from .graphcore import (
    SIMPLE_UNDERLYING,
    CanonicalForm,
    Multigraph,
    canonical_form,
    format_graph,
    is_three_connected,
    parse_graph,
)
from .graphs import builtin
from .matching import canonical_partition, is_bicritical
from .nearbip import is_near_bipartite, is_R_compatible, removable_doubletons
from .retractthin import (
    RetractResult,
    bi_split,
    candidate_set,
    doubleton_through_retract,
    edge_index,
    edge_rank,
    is_R_thin,
    retract,
    satisfies_condition_one,
)

K4_TAG = "K4"
PRISM_TAG = "C6bar"


@lru_cache(maxsize=None)
def _base_forms() -> dict[CanonicalForm, str]:
    return {canonical_form(builtin("k4"), SIMPLE_UNDERLYING): K4_TAG,
            canonical_form(builtin("c6bar"), SIMPLE_UNDERLYING): PRISM_TAG}


def base_tag(G: Multigraph) -> str | None:
    """``"K4"`` or ``"C6bar"`` when the underlying simple graph is one of the bases."""
    if G.n not in (4, 6):
        return None
    return _base_forms().get(canonical_form(G, SIMPLE_UNDERLYING))


def excess(G: Multigraph) -> int:
    return G.m - G.n


# -- R-thin edge search -------------------------------------------------------------

def _potential(G, R, e) -> int:
    return edge_rank(G, R, e) + edge_index(G, R, e)


def ascend(G: Multigraph, R: Doubleton, e: int) -> int | None:
    """An R-compatible f meeting condition (i) with a larger rank + index than e.

    Searched among candidate sets of the barriers of G - e with three or more
    vertices and among edges adjacent to e.  The highest potential wins, ties
    broken by smallest id.
    """
    if e in R.edges or not is_R_compatible(G, R, e):
        raise NotRCompatible(f"edge {e} is not R-compatible")
    if is_R_thin(G, R, e, checked=True):
        raise AlreadyThin(f"edge {e} is already R-thin")
    base = _potential(G, R, e)
    pool = set()
    for part in canonical_partition(G.delete_edges([e])).parts:
        if len(part) >= 3:
            pool.update(candidate_set(G, R, e, part))
    ends = set(G.ends(e))
    pool.update(f for f, u, v in G.edges if f != e and (u in ends or v in ends))
    best = _best_improvement(G, R, e, base, sorted(pool - set(R.edges)))
    if best is None:
        # e may have only two-vertex barriers yet fail to retract to a brick
        # (an isolated vertex with a parallel pair); then search every edge
        best = _best_improvement(G, R, e, base, [f for f in G.edge_ids if f != e and f not in R.edges])
    return best


def _best_improvement(G, R, e, base, pool) -> int | None:
    best = None
    for f in pool:
        if not is_R_compatible(G, R, f) or not satisfies_condition_one(G, e, f):
            continue
        p = _potential(G, R, f)
        if p > base and (best is None or p > best[0]):
            best = (p, f)
    return None if best is None else best[1]


def find_R_thin_edge(G: Multigraph, R: Doubleton, strategy: str = "scan") -> int:
    if base_tag(G) is not None:
        raise BaseBrick("K4 and the prism are the base bricks")
    check_R_brick(G, R)
    witness = {"graph": format_graph(G), "R": R.to_dict()}
    if strategy == "scan":
        for e in G.edge_ids:
            if e not in R.edges and is_R_thin(G, R, e, checked=True):
                return e
        raise TheoremViolation("no R-thin edge found", witness)
    if strategy != "ascent":
        raise ValueError(f"unknown strategy {strategy!r}")
    e = next((f for f in G.edge_ids if f not in R.edges and is_R_compatible(G, R, f)), None)
    if e is None:
        raise TheoremViolation("no R-compatible edge found", witness)
    while not is_R_thin(G, R, e, checked=True):
        f = ascend(G, R, e)
        if f is None:
            raise TheoremViolation(f"ascent stuck at edge {e}", dict(witness, e=e))
        e = f
    return e


# -- reduction --------------------------------------------------------------------

@dataclass
class ReductionStep:
    graph: Multigraph
    R: Doubleton
    e: int
    retract: RetractResult
    R_after: Doubleton

    def to_dict(self) -> dict:
        return {"n": self.graph.n, "m": self.graph.m, "graph": format_graph(self.graph),
                "R": self.R.to_dict(), "e": self.e, "e_ends": list(self.graph.ends(self.e)),
                "retract": self.retract.to_dict(), "R_after": self.R_after.to_dict()}


@dataclass
class ReductionSequence:
    steps: list[ReductionStep]
    final: Multigraph
    final_R: Doubleton
    tag: str

    def to_dict(self) -> dict:
        return {"tag": self.tag, "final": format_graph(self.final), "final_R": self.final_R.to_dict(),
                "steps": [s.to_dict() for s in self.steps],
                "chain": [[s.graph.n, s.e] for s in self.steps]}


def reduce_step(G: Multigraph, R: Doubleton, strategy: str = "scan") -> ReductionStep:
    e = find_R_thin_edge(G, R, strategy)
    ret = retract(G.delete_edges([e]))
    J = ret.graph
    RJ = doubleton_through_retract(J, R, G, e)
    try:
        check_R_brick(J, RJ)
    except Exception as exc:
        raise TheoremViolation(f"retract is not an R-brick: {exc}",
                               {"graph": format_graph(G), "R": R.to_dict(), "e": e}) from None
    return ReductionStep(G, R, e, ret, RJ)


def reduction_sequence(G: Multigraph, R: Doubleton, strategy: str = "scan") -> ReductionSequence:
    check_R_brick(G, R)
    steps = []
    while base_tag(G) is None:
        step = reduce_step(G, R, strategy)
        steps.append(step)
        G, R = step.retract.graph, step.R_after
    return ReductionSequence(steps, G, R, base_tag(G))


# -- expansions -------------------------------------------------------------------

def _splits(G: Multigraph, v: int):
    """Edge partitions at v into two nonempty parts, up to swapping the parts and
    permuting parallel edges."""
    inc = sorted(G.incident(v))
    seen = set()
    first, rest = inc[0], inc[1:]
    for mask in range(2 ** len(rest)):
        p1 = [first] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
        p2 = [rest[i] for i in range(len(rest)) if not mask >> i & 1]
        if not p2:
            continue
        key = frozenset([tuple(sorted(w for _, w in p1)), tuple(sorted(w for _, w in p2))])
        if key in seen:
            continue
        seen.add(key)
        yield [eid for eid, _ in p1], [eid for eid, _ in p2]


@dataclass
class Expansion:
    graph: Multigraph
    e: int
    R: Doubleton
    provenance: dict


def _raw_expansions(J: Multigraph, n_max: int):
    """(graph, new edge id, provenance) for 0, 1 or 2 bi-splits followed by one new edge."""
    if J.n <= n_max:
        for i, x in enumerate(J.vertices):
            for y in J.vertices[i + 1:]:
                G, e = J.add_edge(x, y)
                yield G, e, {"splits": [], "edge": [x, y]}
    if J.n + 2 > n_max:
        return
    for v in J.vertices:
        for p1, p2 in _splits(J, v):
            J1 = bi_split(J, v, (p1, p2))
            v0 = J1.vertices[-1]
            s1 = {"vertex": v, "parts": [sorted(p1), sorted(p2)]}
            for x in J1.vertices[:-1]:
                G, e = J1.add_edge(v0, x)
                yield G, e, {"splits": [s1], "edge": [v0, x]}
            if J.n + 4 > n_max:
                continue
            for w in J1.vertices[:-1]:
                for q1, q2 in _splits(J1, w):
                    J2 = bi_split(J1, w, (q1, q2))
                    v0b = J2.vertices[-1]
                    G, e = J2.add_edge(v0, v0b)
                    yield G, e, {"splits": [s1, {"vertex": w, "parts": [sorted(q1), sorted(q2)]}],
                                 "edge": [v0, v0b]}


def expansions(J: Multigraph, R: Doubleton | None, target_n_max: int,
               doubletons: list[Doubleton] | None = None, skip=frozenset(),
               brick_memo: dict | None = None) -> list[Expansion]:
    """Bricks G with an R-thin edge e whose deletion retracts back to J.

    With ``R`` given only that doubleton is carried; otherwise every doubleton
    of J (or ``doubletons``) is tried.  Results are deduplicated by canonical form;
    forms in ``skip`` are ignored and ``brick_memo`` caches brick tests across calls.
    """
    if R is not None:
        Rs = [R]
    else:
        Rs = doubletons if doubletons is not None else removable_doubletons(J)
    out: list[Expansion] = []
    seen: set = set()
    memo = {} if brick_memo is None else brick_memo
    for G, e, prov in _raw_expansions(J, target_n_max):
        if G.min_degree() < 3:
            continue
        form = canonical_form(G)
        if form in seen or form in skip:
            continue
        ok = memo.get(form)
        if ok is None:
            ok = memo[form] = is_three_connected(G) and is_bicritical(G)
        if not ok:
            continue
        for RJ in Rs:
            RG = make_doubleton(G, RJ.alpha, RJ.beta)
            # retract(G - e) is J by construction, a brick, so R-thin means R-compatible
            if RG is not None and is_R_compatible(G, RG, e):
                seen.add(form)
                out.append(Expansion(G, e, RG, dict(prov, R=[RJ.alpha, RJ.beta])))
                break
    return out


# -- catalog ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    form: CanonicalForm
    graph: Multigraph
    doubletons: list[Doubleton]
    provenance: dict = field(default_factory=dict)

    @property
    def simple(self) -> bool:
        return self.graph.is_simple()

    @property
    def excess(self) -> int:
        return excess(self.graph)

    @property
    def digest(self) -> str:
        return self.form.digest


def default_max_excess(n_max: int) -> int:
    """Largest excess of a simple near-bipartite graph on n_max vertices."""
    return n_max * n_max // 4 + 2 - n_max


def generate_catalog(n_max: int, simple_only: bool = False, max_excess: int | None = None,
                     progress=None) -> list[CatalogEntry]:
    """Near-bipartite bricks on at most ``n_max`` vertices with ``m - n <= max_excess``,
    grown from K4 and the prism.

    Every expansion raises m - n by exactly one, so the excess bound is closed
    under reduction and the result is the full set of such bricks.
    """
    if max_excess is None:
        max_excess = max(2, default_max_excess(n_max))
    entries: dict[CanonicalForm, CatalogEntry] = {}
    memo: dict = {}
    for name in ("k4", "c6bar"):
        G = builtin(name)
        if G.n <= n_max and excess(G) <= max_excess:
            form = canonical_form(G)
            ent = CatalogEntry(form, G, removable_doubletons(G), {"base": name})
            entries[form] = ent
    level = 2
    while level < max_excess:
        frontier = [ent for ent in entries.values() if ent.excess == level]
        for ent in frontier:
            for ex in expansions(ent.graph, None, n_max, ent.doubletons, entries, memo):
                form = canonical_form(ex.graph)
                if form in entries:
                    continue
                prov = dict(ex.provenance, parent=ent.digest, e=ex.e)
                entries[form] = CatalogEntry(form, ex.graph, removable_doubletons(ex.graph), prov)
        if progress:
            progress(level + 1, len(entries))
        level += 1
    out = sorted(entries.values(), key=lambda c: (c.graph.n, c.graph.m, c.digest))
    if simple_only:
        out = [c for c in out if c.simple]
    return out


def simple_classes(entries: list[CatalogEntry]) -> dict[CanonicalForm, CatalogEntry]:
    """Group entries by underlying simple graph, keeping the first of each class."""
    out: dict[CanonicalForm, CatalogEntry] = {}
    for ent in entries:
        out.setdefault(canonical_form(ent.graph, SIMPLE_UNDERLYING), ent)
    return out


def save_catalog(entries: list[CatalogEntry], directory) -> Path:
    """Write ``catalog.json`` plus one text graph file per entry."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    index = []
    for i, ent in enumerate(entries):
        fname = f"entry_{i:04d}.txt"
        _atomic_write(d / fname, format_graph(ent.graph, comment=f"catalog entry {i} {ent.digest}"))
        index.append({
            "id": i, "file": fname, "digest": ent.digest,
            "simple_digest": canonical_form(ent.graph, SIMPLE_UNDERLYING).digest,
            "n": ent.graph.n, "m": ent.graph.m, "simple": ent.simple,
            "doubletons": [R.to_dict() for R in ent.doubletons],
            "provenance": ent.provenance,
        })
    _atomic_write(d / "catalog.json", json.dumps({"entries": index}, indent=1))
    return d / "catalog.json"


def load_catalog(directory) -> list[CatalogEntry]:
    d = Path(directory)
    index = json.loads((d / "catalog.json").read_text())
    out = []
    for rec in index["entries"]:
        G = parse_graph((d / rec["file"]).read_text())
        out.append(CatalogEntry(canonical_form(G), G, [Doubleton.from_dict(x) for x in rec["doubletons"]],
                                rec["provenance"]))
    return out


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


__all__ = [
    "K4_TAG", "PRISM_TAG", "base_tag", "excess", "ascend", "find_R_thin_edge",
    "ReductionStep", "ReductionSequence", "reduce_step", "reduction_sequence", "Expansion",
    "expansions", "CatalogEntry", "generate_catalog", "default_max_excess", "simple_classes",
    "save_catalog", "load_catalog", "brute_force_simple_nb_bricks",
]


def brute_force_simple_nb_bricks(n: int) -> dict[CanonicalForm, Multigraph]:
    """Every simple near-bipartite brick on n vertices, by scanning all labeled graphs."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found: dict[CanonicalForm, Multigraph] = {}
    for mask in range(1 << len(pairs)):
        chosen = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(chosen) * 2 < 3 * n:
            continue
        deg = [0] * n
        for u, v in chosen:
            deg[u] += 1
            deg[v] += 1
        if min(deg) < 3:
            continue
        G = Multigraph.from_edges(range(n), [(i, u, v) for i, (u, v) in enumerate(chosen)])
        form = canonical_form(G)
        if form in found or not is_three_connected(G) or not is_bicritical(G):
            continue
        if is_near_bipartite(G):
            found[form] = G
    return found
