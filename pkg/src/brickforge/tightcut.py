"""Tight cuts, tight cut decomposition, b(G) and the rank of a near-brick."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .config import LIMITS
from .doubleton import Doubleton, check_R_graph
from .errors import EvenShore, NotBipartite, NotMatchingCovered, NotNearBrick
from .graphcore import (
    SIMPLE_UNDERLYING,
    Cut,
    Multigraph,
    bipartition,
    canonical_form,
    contract_shore,
    cut_edges,
    format_graph,
    is_bipartite,
    parse_graph,
)
from .matching import (
    canonical_partition,
    enumerate_perfect_matchings,
    is_barrier,
    is_matching_covered,
)

BARRIER_CUT = "barrier-cut"
TWO_SEPARATION_CUT = "two-separation-cut"
OTHER_CUT = "other"


@dataclass(frozen=True)
class TightCut:
    cut: Cut
    kind: str

    @property
    def shore(self) -> frozenset:
        return self.cut.shore


@dataclass(frozen=True)
class ShoreParts:
    X_plus: frozenset
    X_minus: frozenset


@lru_cache(maxsize=256)
def _matching_masks(G: Multigraph) -> tuple[dict[int, int], tuple[int, ...]]:
    """Edge id -> bit, and every perfect matching as a bitmask over those bits."""
    bit = {eid: 1 << i for i, eid in enumerate(G.edge_ids)}
    masks = tuple(sum(bit[e] for e in M) for M in enumerate_perfect_matchings(G))
    return bit, masks


def _require_mc(G: Multigraph) -> None:
    if not is_matching_covered(G):
        raise NotMatchingCovered("operation needs a matching covered graph")


def _normalize_shore(G: Multigraph, X: Iterable) -> frozenset:
    X = frozenset(X)
    if len(X) % 2 == 0:
        raise EvenShore(f"shore {sorted(X)} has even size")
    return X


def is_tight(G: Multigraph, X: Iterable) -> bool:
    X = _normalize_shore(G, X)
    C = cut_edges(G, X).edge_ids
    _require_mc(G)
    bit, masks = _matching_masks(G)
    cmask = sum(bit[e] for e in C)
    return all((M & cmask).bit_count() == 1 for M in masks)


def _is_nontrivial(G: Multigraph, X: frozenset) -> bool:
    return 1 < len(X) < G.n - 1


def _barriers_within(G: Multigraph, part: frozenset):
    members = sorted(part)
    for size in range(2, len(members) + 1):
        for S in combinations(members, size):
            rec = is_barrier(G, S)
            if rec is not None:
                yield rec


def barrier_cuts(G: Multigraph) -> list[TightCut]:
    """Cuts ``d(V(K))`` for each nontrivial barrier S and nontrivial odd component K of G - S."""
    _require_mc(G)
    seen: set[frozenset] = set()
    out = []
    for part in canonical_partition(G).parts:
        if len(part) < 2:
            continue
        for rec in _barriers_within(G, part):
            for K in rec.nontrivial_components:
                key = min(K, G.vertex_set - K, key=sorted)
                if key in seen or not _is_nontrivial(G, K):
                    continue
                seen.add(key)
                out.append(TightCut(cut_edges(G, K), BARRIER_CUT))
    return out


def two_separation_cuts(G: Multigraph) -> list[TightCut]:
    _require_mc(G)
    seen: set[frozenset] = set()
    out = []
    for u, v in combinations(G.vertices, 2):
        comps = G.components(removed=(u, v))
        if len(comps) < 2:
            continue
        for K in comps:
            if len(K) % 2:
                continue
            for end in (u, v):
                X = K | {end}
                key = min(X, G.vertex_set - X, key=sorted)
                if key in seen or not _is_nontrivial(G, X):
                    continue
                seen.add(key)
                if is_tight(G, X):
                    out.append(TightCut(cut_edges(G, X), TWO_SEPARATION_CUT))
    return out


def _exhaustive_tight_cuts(G: Multigraph, first_only: bool) -> list[TightCut]:
    if G.n > LIMITS.exhaustive_cut_max_n:
        return []
    rest = G.vertices[1:]
    out = []
    for size in range(3, G.n - 2, 2):
        for X in combinations(rest, size):
            X = frozenset(X)
            if is_tight(G, X):
                out.append(TightCut(cut_edges(G, X), OTHER_CUT))
                if first_only:
                    return out
    return out


def find_nontrivial_tight_cut(G: Multigraph, rng: random.Random | None = None,
                              exhaustive: bool = True) -> TightCut | None:
    """A nontrivial tight cut, preferring barrier cuts, then 2-separation cuts.

    With ``rng`` a cut is drawn uniformly from all barrier and 2-separation cuts.
    ``exhaustive`` adds a scan over all odd shores (small graphs only); for
    matching covered graphs it never finds anything the first two searches miss,
    so the decomposition routines switch it off.
    """
    _require_mc(G)
    if rng is not None:
        pool = barrier_cuts(G) + two_separation_cuts(G)
        if pool:
            return rng.choice(pool)
    else:
        cuts = barrier_cuts(G)
        if cuts:
            return cuts[0]
        cuts = two_separation_cuts(G)
        if cuts:
            return cuts[0]
    if not exhaustive:
        return None
    found = _exhaustive_tight_cuts(G, first_only=True)
    return found[0] if found else None


# -- decomposition ---------------------------------------------------------------

BRICK = "brick"
BRACE = "brace"


@dataclass
class DecompositionResult:
    pieces: list[tuple[Multigraph, str]]
    b: int
    trace: list[frozenset] = field(default_factory=list)

    def piece_forms(self) -> list:
        return sorted((canonical_form(P, SIMPLE_UNDERLYING).digest, tag) for P, tag in self.pieces)

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "pieces": [{"tag": tag, "graph": format_graph(P)} for P, tag in self.pieces],
            "trace": [sorted(X) for X in self.trace],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DecompositionResult":
        return cls([(parse_graph(p["graph"]), p["tag"]) for p in d["pieces"]], d["b"],
                   [frozenset(X) for X in d["trace"]])

    def __eq__(self, other):
        if not isinstance(other, DecompositionResult):
            return NotImplemented
        mine = [(format_graph(P), t) for P, t in self.pieces]
        theirs = [(format_graph(P), t) for P, t in other.pieces]
        return self.b == other.b and mine == theirs and self.trace == other.trace


def split_along(G: Multigraph, X: frozenset) -> tuple[Multigraph, Multigraph]:
    """The two cut contractions ``(G / Xbar, G / X)``."""
    Xbar = G.vertex_set - X
    return contract_shore(G, Xbar), contract_shore(G, X)


def decompose(G: Multigraph, seed: int | None = None) -> DecompositionResult:
    _require_mc(G)
    rng = random.Random(seed) if seed is not None else None
    pieces = []
    trace = []
    stack = [G]
    while stack:
        P = stack.pop()
        cut = find_nontrivial_tight_cut(P, rng, exhaustive=False)
        if cut is None:
            pieces.append((P, BRACE if is_bipartite(P) else BRICK))
            continue
        trace.append(cut.shore)
        stack.extend(split_along(P, cut.shore))
    pieces.sort(key=lambda pt: (pt[0].n, canonical_form(pt[0]).digest, pt[1]))
    return DecompositionResult(pieces, sum(1 for _, t in pieces if t == BRICK), trace)


def b_count(G: Multigraph) -> int:
    return decompose(G).b


def unique_brick(G: Multigraph) -> Multigraph:
    """The brick of a near-brick, following the nonbipartite side of each cut."""
    _require_mc(G)
    P = G
    while True:
        if is_bipartite(P):
            raise NotNearBrick("graph has no brick")
        cut = find_nontrivial_tight_cut(P, exhaustive=False)
        if cut is None:
            return P
        sides = [Q for Q in split_along(P, cut.shore) if not is_bipartite(Q)]
        if len(sides) != 1:
            raise NotNearBrick("both contractions are nonbipartite, so b >= 2")
        P = sides[0]


def rank_graph(G: Multigraph) -> int:
    return unique_brick(G).n


def is_near_brick(G: Multigraph) -> bool:
    try:
        unique_brick(G)
    except (NotNearBrick, NotMatchingCovered):
        return False
    return True


# -- structural characterizations -------------------------------------------------

def shore_parts(X: frozenset, A: frozenset, B: frozenset) -> ShoreParts:
    XA, XB = X & A, X & B
    return ShoreParts(XA, XB) if len(XA) > len(XB) else ShoreParts(XB, XA)


def _edges_between(G: Multigraph, P: frozenset, Q: frozenset) -> bool:
    return any((u in P and v in Q) or (u in Q and v in P) for _, u, v in G.edges)


def structural_tight_check_bipartite(H: Multigraph, X: Iterable) -> bool:
    parts = bipartition(H)
    if parts is None:
        raise NotBipartite("structural check needs a bipartite graph")
    X = _normalize_shore(H, X)
    A, B = parts
    inside = shore_parts(X, A, B)
    outside = shore_parts(H.vertex_set - X, A, B)
    if len(inside.X_plus) != len(inside.X_minus) + 1:
        return False
    return not _edges_between(H, inside.X_minus, outside.X_minus)


def structural_tight_check_nearbip(G: Multigraph, R: Doubleton, X: Iterable) -> bool:
    """Balance, no minority-minority edges, and one orientation in which the doubleton
    edge on the minority's colour class lies inside the opposite majority part while the
    other doubleton edge reaches the opposite minority part."""
    check_R_graph(G, R)
    X = _normalize_shore(G, X)
    Xbar = G.vertex_set - X
    inside = shore_parts(X, R.A, R.B)
    outside = shore_parts(Xbar, R.A, R.B)
    if len(inside.X_plus) != len(inside.X_minus) + 1:
        return False
    if _edges_between(G, inside.X_minus, outside.X_minus):
        return False
    for Y, Ybar in ((inside, outside), (outside, inside)):
        # an empty minority part sits in either colour class
        for cls, own, other in ((R.A, R.alpha, R.beta), (R.B, R.beta, R.alpha)):
            if not Y.X_minus <= cls:
                continue
            if set(G.ends(own)) <= Ybar.X_plus and set(G.ends(other)) & Ybar.X_minus:
                return True
    return False
