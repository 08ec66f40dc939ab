"""Removable doubleton record shared by the tight cut and near-bipartite modules."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRBrick, NotRGraph
from .graphcore import Multigraph, bipartition
from .matching import is_brick, is_matching_covered


@dataclass(frozen=True)
class Doubleton:
    """Edges ``alpha`` (both ends in ``A``) and ``beta`` (both ends in ``B``);
    ``(A, B)`` is the bipartition of ``G - {alpha, beta}``."""

    alpha: int
    beta: int
    A: frozenset
    B: frozenset

    @property
    def edges(self) -> tuple[int, int]:
        return (self.alpha, self.beta)

    def class_of(self, v) -> str:
        return "A" if v in self.A else "B"

    def swapped(self) -> "Doubleton":
        return Doubleton(self.beta, self.alpha, self.B, self.A)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "A": sorted(self.A), "B": sorted(self.B)}

    @classmethod
    def from_dict(cls, d: dict) -> "Doubleton":
        return cls(d["alpha"], d["beta"], frozenset(d["A"]), frozenset(d["B"]))


def make_doubleton(G: Multigraph, alpha: int, beta: int, require_covered: bool = True) -> Doubleton | None:
    """The oriented doubleton ``{alpha, beta}`` of G, or None if the pair is not one."""
    if alpha == beta:
        return None
    H = G.delete_edges([alpha, beta])
    parts = bipartition(H)
    if parts is None:
        return None
    A, B = parts
    a1, a2 = G.ends(alpha)
    b1, b2 = G.ends(beta)
    if (a1 in A) != (a2 in A) or (b1 in A) != (b2 in A) or (a1 in A) == (b1 in A):
        return None
    if a1 not in A:
        A, B = B, A
    if require_covered and not is_matching_covered(H):
        return None
    return Doubleton(alpha, beta, A, B)


def check_R_graph(G: Multigraph, R: Doubleton) -> None:
    if not (G.has_edge(R.alpha) and G.has_edge(R.beta)):
        raise NotRGraph("doubleton edges are missing from the graph")
    if not is_matching_covered(G):
        raise NotRGraph("graph is not matching covered")
    fresh = make_doubleton(G, R.alpha, R.beta)
    if fresh is None or fresh.A != R.A:
        raise NotRGraph(f"{{{R.alpha}, {R.beta}}} is not a removable doubleton with the stated bipartition")


def check_R_brick(G: Multigraph, R: Doubleton) -> None:
    try:
        check_R_graph(G, R)
    except NotRGraph as exc:
        raise NotRBrick(str(exc)) from None
    if not is_brick(G):
        raise NotRBrick("graph is not a brick")
