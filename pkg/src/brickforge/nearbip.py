"""Removable and b-invariant edges, removable doubletons and R-compatibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .doubleton import Doubleton, check_R_graph, make_doubleton
from .errors import (
    BipartiteInput,
    EdgeInDoubleton,
    NotBipartite,
    NotMatchingCovered,
    NotRemovable,
    PreconditionViolated,
    UnknownEdge,
)
from .graphcore import Multigraph, bipartition, is_bipartite
from .matching import is_matching_covered
from .tightcut import b_count

__all__ = [
    "Doubleton", "DoubletonFlags", "EdgeClassification", "is_removable", "removable_edges",
    "is_b_invariant", "removable_doubletons", "is_near_bipartite", "is_R_compatible",
    "R_compatible_edges", "verify_exchange_bipartite", "verify_exchange_Rcompatible",
    "non_removable_witness", "make_doubleton",
]


@dataclass
class DoubletonFlags:
    alpha: int
    beta: int
    R_compatible: bool
    R_thin: bool = False
    index: int | None = None
    rank: int | None = None


@dataclass
class EdgeClassification:
    edge_id: int
    removable: bool
    b_invariant: bool
    thin: bool
    doubletons: list[DoubletonFlags] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"edge_id": self.edge_id, "removable": self.removable, "b_invariant": self.b_invariant,
                "thin": self.thin, "doubletons": [vars(d).copy() for d in self.doubletons]}

    @classmethod
    def from_dict(cls, d: dict) -> "EdgeClassification":
        return cls(d["edge_id"], d["removable"], d["b_invariant"], d["thin"],
                   [DoubletonFlags(**x) for x in d["doubletons"]])


def is_removable(G: Multigraph, e: int) -> bool:
    if not G.has_edge(e):
        raise UnknownEdge(e)
    return is_matching_covered(G.delete_edges([e]))


def removable_edges(G: Multigraph) -> list[int]:
    if not is_matching_covered(G):
        raise NotMatchingCovered("removable edges are defined for matching covered graphs")
    return [e for e in G.edge_ids if is_removable(G, e)]


def is_b_invariant(G: Multigraph, e: int) -> bool:
    if not is_removable(G, e):
        raise NotRemovable(f"edge {e} is not removable")
    return b_count(G.delete_edges([e])) == b_count(G)


def _doubleton_scan(G: Multigraph, first_only: bool) -> list[Doubleton]:
    if is_bipartite(G):
        raise BipartiteInput("bipartite graphs have no removable doubleton")
    if not is_matching_covered(G):
        raise NotMatchingCovered("doubletons are defined for matching covered graphs")
    found = []
    ids = G.edge_ids
    for alpha, beta in combinations(ids, 2):
        R = make_doubleton(G, alpha, beta)
        if R is not None:
            found.append(R)
            if first_only:
                return found
    return found


def removable_doubletons(G: Multigraph) -> list[Doubleton]:
    """All removable doubletons, ``alpha < beta`` by id, in lexicographic order."""
    return _doubleton_scan(G, first_only=False)


def is_near_bipartite(G: Multigraph) -> bool:
    if G.n < 2 or is_bipartite(G) or not is_matching_covered(G):
        return False
    return bool(_doubleton_scan(G, first_only=True))


def is_R_compatible(G: Multigraph, R: Doubleton, e: int) -> bool:
    if e in R.edges:
        raise EdgeInDoubleton(f"edge {e} belongs to the doubleton")
    Ge = G.delete_edges([e])
    return is_matching_covered(Ge) and is_matching_covered(Ge.delete_edges(R.edges))


def R_compatible_edges(G: Multigraph, R: Doubleton) -> list[int]:
    return [e for e in G.edge_ids if e not in R.edges and is_R_compatible(G, R, e)]


def verify_exchange_bipartite(H: Multigraph, e: int, f: int) -> bool:
    """Exchange of removable edges in a bipartite matching covered graph."""
    if e == f:
        raise PreconditionViolated("e and f must differ")
    if not is_bipartite(H) or not is_matching_covered(H):
        raise PreconditionViolated("H must be bipartite and matching covered")
    if not is_removable(H, e):
        raise PreconditionViolated(f"{e} is not removable in H")
    if not is_removable(H.delete_edges([e]), f):
        raise PreconditionViolated(f"{f} is not removable in H - {e}")
    return is_removable(H, f) and is_removable(H.delete_edges([f]), e)


def verify_exchange_Rcompatible(G: Multigraph, R: Doubleton, e: int, f: int) -> bool:
    if e == f:
        raise PreconditionViolated("e and f must differ")
    check_R_graph(G, R)
    if not is_R_compatible(G, R, e):
        raise PreconditionViolated(f"{e} is not R-compatible in G")
    if not is_R_compatible(G.delete_edges([e]), R, f):
        raise PreconditionViolated(f"{f} is not R-compatible in G - {e}")
    return is_R_compatible(G, R, f) and is_R_compatible(G.delete_edges([f]), R, e)


def non_removable_witness(H: Multigraph, e: int):
    """Partitions ``(A0, A1, B0, B1)`` with ``|A0| = |B0|`` and e the only B0-A1 edge,
    or None when e is removable.

    A1 is a set of A containing the A-end of e whose neighbourhood in H - e is
    exactly as large as itself and misses the B-end of e.
    """
    parts = bipartition(H)
    if parts is None:
        raise NotBipartite("witness is defined for bipartite graphs")
    if H.n < 4:
        raise PreconditionViolated("witness needs at least four vertices")
    if is_removable(H, e):
        return None
    A, B = parts
    u, v = H.ends(e)
    a, b = (u, v) if u in A else (v, u)
    He = H.delete_edges([e])
    others = sorted(A - {a})
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            S = frozenset((a,) + extra)
            T = set()
            for x in S:
                T |= He.neighbors(x)
            if len(T) == len(S) and b not in T:
                witness = (A - S, S, B - frozenset(T), frozenset(T))
                _check_witness(H, e, witness)
                return witness
    raise AssertionError(f"edge {e} is non-removable but no Hall witness exists")  # pragma: no cover


def _check_witness(H: Multigraph, e: int, witness) -> None:
    A0, A1, B0, B1 = witness
    crossing = [eid for eid, x, y in H.edges if (x in B0 and y in A1) or (y in B0 and x in A1)]
    if len(A0) != len(B0) or crossing != [e]:  # pragma: no cover
        raise AssertionError(f"malformed non-removability witness for edge {e}")
