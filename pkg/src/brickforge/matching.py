"""Perfect matchings, barriers and the canonical partition.

Three independent code paths answer "does this graph have a perfect matching":

* ``maximum_matching`` - Edmonds' blossom search, the engine behind
  ``has_perfect_matching`` and ``tutte_witness``;
* ``PairOracle`` - memoised existence over vertex subsets, used for the
  many ``G - u - v`` queries behind admissibility, bicriticality and the
  canonical partition;
* ``enumerate_perfect_matchings`` - plain backtracking, the test oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .config import LIMITS
from .errors import NoPerfectMatching, NotMatchingCovered, TooLarge, UnknownEdge
from .graphcore import Multigraph, is_three_connected


@dataclass(frozen=True)
class Barrier:
    S: frozenset
    odd_components: tuple[frozenset, ...]
    isolated: frozenset  # vertices forming singleton odd components of G - S

    @property
    def nontrivial_components(self) -> tuple[frozenset, ...]:
        return tuple(K for K in self.odd_components if len(K) > 1)

    def to_dict(self) -> dict:
        return {"S": sorted(self.S), "odd_components": [sorted(K) for K in self.odd_components],
                "isolated": sorted(self.isolated)}

    @classmethod
    def from_dict(cls, d: dict) -> "Barrier":
        return cls(frozenset(d["S"]), tuple(frozenset(K) for K in d["odd_components"]),
                   frozenset(d["isolated"]))


@dataclass(frozen=True)
class CanonicalPartition:
    parts: tuple[frozenset, ...]

    def part_of(self, v) -> frozenset:
        return next(P for P in self.parts if v in P)


# -- blossom ------------------------------------------------------------------

def _simple_index(G: Multigraph):
    index = {v: i for i, v in enumerate(G.vertices)}
    adj: list[list[int]] = [[] for _ in range(G.n)]
    seen = set()
    for _, u, v in G.edges:
        i, j = index[u], index[v]
        if (i, j) not in seen:
            seen.add((i, j))
            adj[i].append(j)
            adj[j].append(i)
    return index, adj


def _blossom(n: int, adj: list[list[int]], stop_on_exposed: bool = False) -> list[int] | None:
    """Maximum matching as a mate array.  With ``stop_on_exposed`` returns None
    as soon as some vertex is certain to stay exposed."""
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    break

    def find_path(root):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v, b, child, in_blossom):
            while base[v] != b:
                in_blossom[base[v]] = in_blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    in_blossom = [False] * n
                    mark(v, cur, to, in_blossom)
                    mark(to, cur, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_path(root)
        if end == -1:
            if stop_on_exposed:
                return None
            continue
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return match


def maximum_matching(G: Multigraph) -> frozenset:
    """Edge ids of a maximum matching (smallest id among parallel copies)."""
    index, adj = _simple_index(G)
    mate = _blossom(G.n, adj)
    return _mate_to_ids(G, index, mate)


def _mate_to_ids(G, index, mate) -> frozenset:
    ids = set()
    for eid, u, v in G.edges:
        i, j = index[u], index[v]
        if mate[i] == j:
            ids.add(eid)
            mate[i] = mate[j] = -2  # consume the pair so parallel copies are skipped
    return frozenset(ids)


def perfect_matching(G: Multigraph) -> frozenset | None:
    if G.n % 2:
        return None
    index, adj = _simple_index(G)
    mate = _blossom(G.n, adj, stop_on_exposed=True)
    if mate is None:
        return None
    return _mate_to_ids(G, index, mate)


def has_perfect_matching(G: Multigraph) -> bool:
    return perfect_matching(G) is not None


def matching_number(G: Multigraph) -> int:
    return len(maximum_matching(G))


def odd_components(G: Multigraph, removed: Iterable = ()) -> list[frozenset]:
    return [K for K in G.components(removed) if len(K) % 2]


def tutte_witness(G: Multigraph) -> frozenset | None:
    """A set S with odd(G - S) > |S|, or None when G has a perfect matching.

    Built from the Gallai-Edmonds decomposition: D is the set of vertices
    missed by some maximum matching and S = N(D) - D.
    """
    nu = matching_number(G)
    if 2 * nu == G.n:
        return None
    D = {v for v in G.vertices if matching_number(G.delete_vertices([v])) == nu}
    S = set()
    for v in D:
        S |= G.neighbors(v)
    S = frozenset(S - D)
    if len(odd_components(G, S)) <= len(S):  # pragma: no cover - structural guarantee
        raise AssertionError("Gallai-Edmonds witness failed the odd component count")
    return S


# -- enumeration oracle ----------------------------------------------------------

def enumerate_perfect_matchings(G: Multigraph) -> list[frozenset]:
    """Every perfect matching, sorted lexicographically by sorted edge id sequence."""
    if G.n > LIMITS.enumeration_max_n:
        raise TooLarge(f"enumeration limited to {LIMITS.enumeration_max_n} vertices, got {G.n}")
    if G.n % 2:
        return []
    order = sorted(G.vertices)
    inc = {v: sorted(G.incident(v)) for v in order}
    covered: set = set()
    chosen: list[int] = []
    out: list[frozenset] = []

    def rec():
        v = next((x for x in order if x not in covered), None)
        if v is None:
            out.append(frozenset(chosen))
            return
        covered.add(v)
        for eid, w in inc[v]:
            if w not in covered:
                covered.add(w)
                chosen.append(eid)
                rec()
                chosen.pop()
                covered.discard(w)
        covered.discard(v)

    rec()
    out.sort(key=lambda M: tuple(sorted(M)))
    return out


# -- subset oracle for pair queries ---------------------------------------------

class PairOracle:
    """Memoised perfect-matching existence for induced subgraphs ``G - X``."""

    def __init__(self, G: Multigraph):
        self.G = G
        self.index = {v: i for i, v in enumerate(G.vertices)}
        self.full = (1 << G.n) - 1
        self.nbr = [0] * G.n
        for _, u, v in G.edges:
            i, j = self.index[u], self.index[v]
            self.nbr[i] |= 1 << j
            self.nbr[j] |= 1 << i
        self.memo = {0: True}

    def _has(self, mask: int) -> bool:
        memo = self.memo
        if mask in memo:
            return memo[mask]
        if bin(mask).count("1") % 2:
            memo[mask] = False
            return False
        low = mask & -mask
        rest = mask ^ low
        cand = self.nbr[low.bit_length() - 1] & rest
        result = False
        while cand:
            bit = cand & -cand
            if self._has(rest ^ bit):
                result = True
                break
            cand ^= bit
        memo[mask] = result
        return result

    def without(self, *vs) -> bool:
        mask = self.full
        for v in vs:
            mask &= ~(1 << self.index[v])
        return self._has(mask)

    def has_perfect_matching(self) -> bool:
        return self._has(self.full)


@lru_cache(maxsize=512)
def pair_oracle(G: Multigraph) -> PairOracle:
    if G.n > LIMITS.enumeration_max_n:
        raise TooLarge(f"subset oracle limited to {LIMITS.enumeration_max_n} vertices, got {G.n}")
    return PairOracle(G)


def _pair_ok(G: Multigraph, u, v) -> bool:
    if G.n <= 16:
        return pair_oracle(G).without(u, v)
    return has_perfect_matching(G.delete_vertices([u, v]))


# -- predicates ---------------------------------------------------------------

def is_admissible(G: Multigraph, e: int) -> bool:
    if not G.has_edge(e):
        raise UnknownEdge(e)
    u, v = G.ends(e)
    return _pair_ok(G, u, v)


def is_matching_covered(G: Multigraph) -> bool:
    if G.n < 2 or G.n % 2 or not G.is_connected():
        return False
    checked = set()
    for _, u, v in G.edges:
        if (u, v) in checked:
            continue
        checked.add((u, v))
        if not _pair_ok(G, u, v):
            return False
    return True


def is_bicritical(G: Multigraph) -> bool:
    if G.n < 4 or G.n % 2:
        return False
    return all(_pair_ok(G, u, v) for u, v in combinations(G.vertices, 2))


def is_brick(G: Multigraph) -> bool:
    return is_three_connected(G) and is_bicritical(G)


# -- barriers -------------------------------------------------------------------

def barrier_record(G: Multigraph, S: Iterable) -> Barrier:
    S = frozenset(S)
    odd = sorted(odd_components(G, S), key=lambda K: min(K))
    iso = frozenset(next(iter(K)) for K in odd if len(K) == 1)
    return Barrier(S, tuple(odd), iso)


def is_barrier(G: Multigraph, S: Iterable) -> Barrier | None:
    S = frozenset(S)
    if not S:
        raise ValueError("barrier candidates must be nonempty")
    if not has_perfect_matching(G):
        raise NoPerfectMatching("barriers are defined for graphs with a perfect matching")
    rec = barrier_record(G, S)
    return rec if len(rec.odd_components) == len(S) else None


def canonical_partition(G: Multigraph) -> CanonicalPartition:
    """Maximal barriers, via the relation "G - u - v has no perfect matching"."""
    if not is_matching_covered(G):
        raise NotMatchingCovered("canonical partition needs a matching covered graph")
    parts = []
    assigned = set()
    for v in G.vertices:
        if v in assigned:
            continue
        part = frozenset([v] + [u for u in G.vertices if u != v and not _pair_ok(G, u, v)])
        assigned |= part
        parts.append(part)
    return CanonicalPartition(tuple(parts))


def nontrivial_maximal_barriers(G: Multigraph) -> list[Barrier]:
    return [barrier_record(G, P) for P in canonical_partition(G).parts if len(P) >= 2]
