"""Loopless multigraphs with stable edge ids, cuts, contractions and canonical forms."""

from __future__ import annotations

import hashlib
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .config import LIMITS
from .errors import (
    EmptyOrFullShore,
    GraphFormatError,
    LoopRejected,
    TooLarge,
    UnknownEdge,
    UnknownVertex,
)

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class Multigraph:
    """Immutable loopless multigraph.

    ``edges`` holds ``(edge_id, u, v)`` triples with ``u < v``, sorted by id.
    Parallel edges are distinct triples with distinct ids.  ``annotations``
    carries bookkeeping (contraction provenance, named edges) and is ignored
    by equality.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    annotations: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        seen = set()
        for eid, u, v in self.edges:
            if u == v:
                raise LoopRejected(f"edge {eid} is a loop at {u}")
            if u not in vs or v not in vs:
                raise UnknownVertex(f"edge {eid} has an endpoint outside the vertex set")
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[Edge], annotations=None):
        es = tuple(sorted((eid, min(u, v), max(u, v)) for eid, u, v in edges))
        return cls(tuple(vertices), es, dict(annotations or {}))

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _ends(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    @cached_property
    def _inc(self) -> dict[int, list[tuple[int, int]]]:
        inc: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append((eid, v))
            inc[v].append((eid, u))
        return inc

    @cached_property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    def has_edge(self, eid: int) -> bool:
        return eid in self._ends

    def ends(self, eid: int) -> tuple[int, int]:
        try:
            return self._ends[eid]
        except KeyError:
            raise UnknownEdge(eid) from None

    def incident(self, v: int) -> list[tuple[int, int]]:
        """``(edge_id, other_end)`` pairs at ``v``."""
        try:
            return self._inc[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def neighbors(self, v: int) -> set[int]:
        return {w for _, w in self.incident(v)}

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for _, w in self.incident(u) if w == v)

    def edges_between(self, u: int, v: int) -> list[int]:
        return [eid for eid, w in self.incident(u) if w == v]

    def min_degree(self) -> int:
        return min((len(i) for i in self._inc.values()), default=0)

    def is_simple(self) -> bool:
        pairs = [(u, v) for _, u, v in self.edges]
        return len(pairs) == len(set(pairs))

    # -- derived graphs --------------------------------------------------

    def delete_edges(self, ids: Iterable[int]) -> "Multigraph":
        drop = set(ids)
        for eid in drop:
            if eid not in self._ends:
                raise UnknownEdge(eid)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e[0] not in drop),
                          self.annotations)

    def delete_vertices(self, vs: Iterable[int]) -> "Multigraph":
        drop = set(vs)
        return Multigraph(tuple(v for v in self.vertices if v not in drop),
                          tuple(e for e in self.edges if e[1] not in drop and e[2] not in drop),
                          self.annotations)

    def induced(self, keep: Iterable[int]) -> "Multigraph":
        keep = set(keep)
        return self.delete_vertices(v for v in self.vertices if v not in keep)

    def next_edge_id(self) -> int:
        return max(self._ends, default=-1) + 1

    def next_vertex(self) -> int:
        return max(self.vertices, default=-1) + 1

    def add_edge(self, u: int, v: int, eid: int | None = None) -> tuple["Multigraph", int]:
        if u == v:
            raise LoopRejected(f"loop at {u}")
        if eid is None:
            eid = self.next_edge_id()
        G = Multigraph.from_edges(self.vertices, self.edges + ((eid, u, v),), self.annotations)
        return G, eid

    def relabel(self, mapping: Mapping[int, int]) -> "Multigraph":
        return Multigraph.from_edges([mapping[v] for v in self.vertices],
                                     [(eid, mapping[u], mapping[v]) for eid, u, v in self.edges],
                                     self.annotations)

    def underlying_simple(self) -> "Multigraph":
        """One edge per adjacent pair, keeping the smallest id of each parallel class."""
        seen = {}
        for eid, u, v in self.edges:
            seen.setdefault((u, v), eid)
        return Multigraph.from_edges(self.vertices, [(eid, u, v) for (u, v), eid in seen.items()],
                                     self.annotations)

    def with_annotations(self, **extra) -> "Multigraph":
        ann = dict(self.annotations)
        ann.update(extra)
        return Multigraph(self.vertices, self.edges, ann)

    def components(self, removed: Iterable[int] = ()) -> list[frozenset]:
        gone = set(removed)
        seen = set(gone)
        comps = []
        inc = self._inc
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for _, y in inc[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m}, edges={[e for e in self.edges]})"


@dataclass(frozen=True)
class Cut:
    shore: frozenset
    edge_ids: frozenset


def build(n: int, edge_list: Iterable[tuple[int, int]]) -> Multigraph:
    """Graph on vertices ``0..n-1``; edge ids follow input order."""
    edges = []
    for eid, (u, v) in enumerate(edge_list):
        if u == v:
            raise LoopRejected(f"pair {eid} has equal endpoints {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise UnknownVertex(f"pair {eid} = ({u}, {v}) out of range for n={n}")
        edges.append((eid, u, v))
    return Multigraph.from_edges(range(n), edges)


def _check_shore(G: Multigraph, X) -> frozenset:
    X = frozenset(X)
    if not X or not X <= G.vertex_set or len(X) == G.n:
        raise EmptyOrFullShore(f"shore must be a nonempty proper subset, got {sorted(X)}")
    return X


def cut_edges(G: Multigraph, X: Iterable[int]) -> Cut:
    X = _check_shore(G, X)
    ids = frozenset(eid for eid, u, v in G.edges if (u in X) != (v in X))
    return Cut(X, ids)


def contract_shore(G: Multigraph, Xbar: Iterable[int], label: int | None = None) -> Multigraph:
    """Shrink ``Xbar`` to a single vertex; edges of the cut keep their ids."""
    Xbar = _check_shore(G, Xbar)
    if label is None:
        label = G.next_vertex()
    elif label in G.vertex_set and label not in Xbar:
        raise ValueError(f"label {label} already names a vertex outside the shore")
    edges = []
    for eid, u, v in G.edges:
        iu, iv = u in Xbar, v in Xbar
        if iu and iv:
            continue
        edges.append((eid, label if iu else u, label if iv else v))
    prov = dict(G.annotations.get("provenance", {}))
    members = set()
    for x in Xbar:
        members.update(prov.pop(x, (x,)))
    prov[label] = tuple(sorted(members))
    ann = {k: v for k, v in G.annotations.items() if k != "provenance"}
    ann["provenance"] = prov
    verts = [v for v in G.vertices if v not in Xbar] + [label]
    return Multigraph.from_edges(verts, edges, ann)


def bipartition(G: Multigraph) -> tuple[frozenset, frozenset] | None:
    color: dict[int, int] = {}
    for s in sorted(G.vertices):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for _, y in G.incident(x):
                if y not in color:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    A = frozenset(v for v, c in color.items() if c == 0)
    return A, frozenset(G.vertices) - A


def is_bipartite(G: Multigraph) -> bool:
    return bipartition(G) is not None


def _connected_mask(nbr: list[int], alive: int) -> bool:
    if not alive:
        return False
    reach = alive & -alive
    frontier = reach
    while frontier:
        bit = frontier & -frontier
        frontier ^= bit
        new = nbr[bit.bit_length() - 1] & alive & ~reach
        reach |= new
        frontier |= new
    return reach == alive


def is_three_connected(G: Multigraph) -> bool:
    """At least four vertices and connected after deleting any two of them."""
    if G.n < 4:
        return False
    index = {v: i for i, v in enumerate(G.vertices)}
    nbr = [0] * G.n
    for _, u, v in G.edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    full = (1 << G.n) - 1
    # removing a cut vertex together with any other vertex still disconnects when n >= 4
    return all(_connected_mask(nbr, full & ~(1 << i) & ~(1 << j))
               for i, j in itertools.combinations(range(G.n), 2))


# -- canonical forms ---------------------------------------------------------

WITH_MULTIPLICITY = "with-multiplicity"
SIMPLE_UNDERLYING = "simple-underlying"


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    adjacency: tuple[tuple[int, int], ...]
    multiplicities: tuple[int, ...]
    mode: str = WITH_MULTIPLICITY

    @property
    def digest(self) -> str:
        raw = repr((self.n, self.adjacency, self.multiplicities, self.mode)).encode()
        return hashlib.sha1(raw).hexdigest()[:16]


def _refine(colors: list[int], nbrs: list[list[tuple[int, int]]]) -> list[int]:
    n = len(colors)
    ncells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted((colors[u], k) for u, k in nbrs[v]))) for v in range(n)]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncells:
            return new
        colors, ncells = new, len(order)


def _individualize(colors: list[int], v: int) -> list[int]:
    keyed = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
    order = {k: i for i, k in enumerate(sorted(set(keyed)))}
    return [order[k] for k in keyed]


def _orbit_of(x: int, gens: list[tuple[int, ...]]) -> set[int]:
    orbit = {x}
    frontier = [x]
    while frontier:
        y = frontier.pop()
        for g in gens:
            z = g[y]
            if z not in orbit:
                orbit.add(z)
                frontier.append(z)
    return orbit


def _canonical_labeling(n: int, nbrs: list[list[tuple[int, int]]]) -> tuple[tuple, list[int]]:
    """Individualization-refinement search for the lexicographically least encoding.

    Returns ``(encoding, labels)`` with ``labels[v]`` the canonical position of v.
    Automorphisms found at equal leaves prune sibling branches.
    """
    edges = [(v, u, k) for v in range(n) for u, k in nbrs[v] if u > v]

    def encode(lab):
        return tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v]), k) for u, v, k in edges))

    deg = [sum(k for _, k in nbrs[v]) for v in range(n)]
    root = _refine(_individualize_none(deg), nbrs)
    best: list = [None, None]
    first: list = [None, None]
    autos: list[tuple[int, ...]] = []

    def search(colors, path):
        if len(set(colors)) == n:
            code = encode(colors)
            if first[0] is None:
                first[0], first[1] = code, (colors, list(path))
            elif code == first[0]:
                inv = {c: v for v, c in enumerate(first[1][0])}
                autos.append(tuple(inv[colors[v]] for v in range(n)))
                fpath = first[1][1]
                d = next(i for i in range(len(path)) if path[i] != fpath[i])
                if best[0] is None or code < best[0]:
                    best[0], best[1] = code, colors
                return d
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, colors
            elif code == best[0]:
                inv = {c: v for v, c in enumerate(best[1])}
                autos.append(tuple(inv[colors[v]] for v in range(n)))
            return None
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(n) if colors[v] == target]
        depth = len(path)
        done: list[int] = []
        for v in cell:
            if done:
                fixing = [g for g in autos if all(g[p] == p for p in path)]
                if fixing and any(w in _orbit_of(v, fixing) for w in done):
                    continue
            path.append(v)
            r = search(_refine(_individualize(colors, v), nbrs), path)
            path.pop()
            done.append(v)
            if r is not None and r < depth:
                return r
        return None

    search(root, [])
    return best[0], best[1]


def _individualize_none(deg: list[int]) -> list[int]:
    order = {d: i for i, d in enumerate(sorted(set(deg)))}
    return [order[d] for d in deg]


def canonical_labeling(G: Multigraph, mode: str = WITH_MULTIPLICITY) -> tuple[CanonicalForm, dict[int, int]]:
    """Canonical form plus the vertex -> canonical position map realising it."""
    if G.n > LIMITS.canonical_max_n:
        raise TooLarge(f"canonical form limited to {LIMITS.canonical_max_n} vertices, got {G.n}")
    if mode not in (WITH_MULTIPLICITY, SIMPLE_UNDERLYING):
        raise ValueError(f"unknown mode {mode!r}")
    index = {v: i for i, v in enumerate(G.vertices)}
    mult: dict[tuple[int, int], int] = {}
    for _, u, v in G.edges:
        key = (index[u], index[v])
        mult[key] = mult.get(key, 0) + 1
    if mode == SIMPLE_UNDERLYING:
        mult = {k: 1 for k in mult}
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for (i, j), k in mult.items():
        nbrs[i].append((j, k))
        nbrs[j].append((i, k))
    if G.n == 0:
        return CanonicalForm(0, (), (), mode), {}
    code, labels = _canonical_labeling(G.n, nbrs)
    adjacency = tuple((i, j) for i, j, _ in code)
    mults = tuple(k for _, _, k in code) if mode == WITH_MULTIPLICITY else ()
    return CanonicalForm(G.n, adjacency, mults, mode), {v: labels[index[v]] for v in G.vertices}


def canonical_form(G: Multigraph, mode: str = WITH_MULTIPLICITY) -> CanonicalForm:
    return canonical_labeling(G, mode)[0]


def is_isomorphic(G1: Multigraph, G2: Multigraph, mode: str = WITH_MULTIPLICITY) -> bool:
    if G1.n != G2.n:
        return False
    if mode == WITH_MULTIPLICITY and G1.m != G2.m:
        return False
    return canonical_form(G1, mode) == canonical_form(G2, mode)


def canonical_graph(G: Multigraph, mode: str = WITH_MULTIPLICITY) -> Multigraph:
    """Relabel vertices to canonical positions 0..n-1 (edge ids renumbered in canonical order)."""
    form, lab = canonical_labeling(G, mode)
    if mode == SIMPLE_UNDERLYING:
        return build(form.n, form.adjacency)
    pairs = [p for p, k in zip(form.adjacency, form.multiplicities) for _ in range(k)]
    return build(form.n, pairs)


# -- text format -------------------------------------------------------------

def format_graph(G: Multigraph, comment: str | None = None) -> str:
    """``n m`` header then one ``u v`` line per edge (vertices renumbered 0..n-1, id order)."""
    index = {v: i for i, v in enumerate(G.vertices)}
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{G.n} {G.m}")
    lines.extend(f"{index[u]} {index[v]}" for _, u, v in G.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Multigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}") from None
    if not rows:
        raise GraphFormatError("missing 'n m' header")
    (n, m), pairs = rows[0], rows[1:]
    if n < 0 or m < 0:
        raise GraphFormatError("negative size in header")
    if len(pairs) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(pairs)}")
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}")
    return build(n, pairs)


def read_graph(path) -> Multigraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(G: Multigraph, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(G, comment))
