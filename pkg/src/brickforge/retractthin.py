"""Bicontraction, retracts, bi-splitting, thin and R-thin edges, index, rank,
barrier structure of G - e and candidate sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .doubleton import Doubleton, check_R_brick, make_doubleton
from .errors import (
    BarrierTooSmall,
    BipartiteInput,
    EmptyPart,
    IdenticalNeighbors,
    NotAMatching,
    NotBInvariant,
    NotMatchingCovered,
    NotRCompatible,
    PreconditionViolated,
    StuckIdenticalNeighbors,
    TheoremViolation,
    WrongDegree,
)
from .graphcore import (
    SIMPLE_UNDERLYING,
    Multigraph,
    bipartition,
    build,
    canonical_form,
    contract_shore,
    format_graph,
)
from .matching import (
    Barrier,
    barrier_record,
    canonical_partition,
    is_barrier,
    is_brick,
    is_matching_covered,
    nontrivial_maximal_barriers,
)
from .nearbip import (
    DoubletonFlags,
    EdgeClassification,
    is_R_compatible,
    is_removable,
    removable_doubletons,
)
from .tightcut import b_count, rank_graph


# -- bicontraction and retracts ------------------------------------------------------

def bicontract(G: Multigraph, v: int, label: int | None = None) -> Multigraph:
    """Merge a degree-two vertex with its two neighbours into one vertex."""
    inc = G.incident(v)
    if len(inc) != 2:
        raise WrongDegree(f"vertex {v} has degree {len(inc)}, expected 2")
    (_, u), (_, w) = inc
    if u == w:
        raise IdenticalNeighbors(f"both edges at {v} go to {u}")
    return contract_shore(G, {u, v, w}, label)


@dataclass
class RetractResult:
    graph: Multigraph
    steps: list[tuple[int, tuple[int, int], int]]  # (bicontracted vertex, its neighbours, new label)
    vertex_map: dict[int, int]
    collapsed: bool = False  # stopped at two or fewer vertices

    def to_dict(self) -> dict:
        return {"graph": format_graph(self.graph),
                "steps": [[v, list(nb), lab] for v, nb, lab in self.steps],
                "vertex_map": {str(k): v for k, v in self.vertex_map.items()},
                "collapsed": self.collapsed}


def retract(G: Multigraph, rng: random.Random | None = None) -> RetractResult:
    """Bicontract degree-two vertices until none remain (smallest label first,
    or in random order when ``rng`` is given)."""
    vertex_map = {v: v for v in G.vertices}
    steps = []
    P = G
    while P.n > 2:
        twos = [v for v in P.vertices if P.degree(v) == 2]
        if not twos:
            break
        v = rng.choice(twos) if rng is not None else twos[0]
        (_, u), (_, w) = P.incident(v)
        if u == w:
            raise StuckIdenticalNeighbors(f"degree-two vertex {v} has a doubled edge to {u}")
        label = P.next_vertex()
        P = contract_shore(P, {u, v, w}, label)
        steps.append((v, (u, w), label))
        for x, y in vertex_map.items():
            if y in (u, v, w):
                vertex_map[x] = label
    return RetractResult(P, steps, vertex_map, collapsed=P.n <= 2 and bool(steps))


def bi_split(G: Multigraph, v: int, assignment: tuple[Iterable[int], Iterable[int]],
             labels: tuple[int, int, int] | None = None) -> Multigraph:
    """Replace v by v1, v2 (edges distributed per ``assignment``) joined through a new v0.

    Default labels keep v as v1; v2 and v0 take the next free labels.  The new
    edges v0v1 and v0v2 take the next two free edge ids.
    """
    inc = G.incident(v)
    if len(inc) < 2:
        raise WrongDegree(f"vertex {v} has degree {len(inc)}, bi-splitting needs at least 2")
    part1, part2 = set(assignment[0]), set(assignment[1])
    if not part1 or not part2:
        raise EmptyPart("both parts of a bi-split must be nonempty")
    if part1 & part2 or part1 | part2 != {eid for eid, _ in inc}:
        raise ValueError("assignment must partition the edges at v")
    if labels is None:
        nxt = G.next_vertex()
        labels = (v, nxt, nxt + 1)
    v1, v2, v0 = labels
    edges = []
    for eid, a, b in G.edges:
        if eid in part1 or eid in part2:
            tgt = v1 if eid in part1 else v2
            a, b = (tgt, b) if a == v else (a, tgt)
        edges.append((eid, a, b))
    nid = G.next_edge_id()
    edges += [(nid, v0, v1), (nid + 1, v0, v2)]
    verts = [x for x in G.vertices if x != v] + [v1, v2, v0]
    return Multigraph.from_edges(verts, edges, G.annotations)


# -- thin and R-thin -----------------------------------------------------------------

def is_thin(G: Multigraph, e: int) -> bool:
    if not is_removable(G, e):
        raise NotBInvariant(f"edge {e} is not removable")
    Ge = G.delete_edges([e])
    if b_count(Ge) != b_count(G):
        raise NotBInvariant(f"edge {e} is not b-invariant")
    return is_brick(retract(Ge).graph)


def barriers_small(Ge: Multigraph) -> bool:
    """Every barrier of the matching covered graph ``Ge`` has at most two vertices."""
    return all(len(P) <= 2 for P in canonical_partition(Ge).parts)


def _retract_thin_by_barriers(Ge: Multigraph) -> bool:
    # a vertex cut off by a two-vertex barrier is bicontracted only when it has
    # exactly two edges; a parallel pair to one barrier vertex keeps it in place
    for P in canonical_partition(Ge).parts:
        if len(P) > 2:
            return False
        if len(P) == 2 and any(Ge.degree(v) != 2 for v in barrier_record(Ge, P).isolated):
            return False
    return True


def is_R_thin(G: Multigraph, R: Doubleton, e: int, checked: bool = False) -> bool:
    """R-compatible and thin.  Cross-checked against the barrier structure of G - e."""
    if not checked:
        check_R_brick(G, R)
    if not is_R_compatible(G, R, e):
        return False
    Ge = G.delete_edges([e])
    thin = is_brick(retract(Ge).graph)
    if thin != _retract_thin_by_barriers(Ge):
        raise TheoremViolation("R-thin and barrier criteria disagree",
                               {"graph": format_graph(G), "R": R.to_dict(), "e": e})
    return thin


def R_thin_edges(G: Multigraph, R: Doubleton) -> list[int]:
    check_R_brick(G, R)
    return [e for e in G.edge_ids if e not in R.edges and is_R_thin(G, R, e, checked=True)]


def _require_compatible(G: Multigraph, R: Doubleton, e: int) -> Multigraph:
    if e in R.edges or not is_R_compatible(G, R, e):
        raise NotRCompatible(f"edge {e} is not R-compatible")
    return G.delete_edges([e])


def edge_index(G: Multigraph, R: Doubleton, e: int) -> int:
    Ge = _require_compatible(G, R, e)
    k = len(nontrivial_maximal_barriers(Ge))
    if k > 2:
        raise TheoremViolation(f"G - e has {k} maximal nontrivial barriers",
                               {"graph": format_graph(G), "e": e})
    return k


def edge_rank(G: Multigraph, R: Doubleton, e: int) -> int:
    return rank_graph(_require_compatible(G, R, e))


def potential(G: Multigraph, R: Doubleton, e: int) -> int:
    return edge_rank(G, R, e) + edge_index(G, R, e)


# -- barrier structure of G - e ---------------------------------------------------------

@dataclass
class ThreeCaseReport:
    case: int
    y: int | None = None  # end of e among the isolated vertices of the first barrier
    z: int | None = None
    s_class: str | None = None  # doubleton class ("A"/"B") holding S or S1
    S: frozenset | None = None
    I: frozenset | None = None
    S1: frozenset | None = None
    I1: frozenset | None = None
    S2_star: frozenset | None = None
    I2_star: frozenset | None = None
    S2: frozenset | None = None
    I2: frozenset | None = None
    X1: frozenset | None = None
    X2: frozenset | None = None

    _SETS = ("S", "I", "S1", "I1", "S2_star", "I2_star", "S2", "I2", "X1", "X2")

    def to_dict(self) -> dict:
        d = {"case": self.case, "y": self.y, "z": self.z, "s_class": self.s_class}
        for k in self._SETS:
            val = getattr(self, k)
            d[k] = None if val is None else sorted(val)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ThreeCaseReport":
        kw = {k: (None if d[k] is None else frozenset(d[k])) for k in cls._SETS}
        return cls(d["case"], d["y"], d["z"], d["s_class"], **kw)


def _class_name(R: Doubleton, S: frozenset) -> str:
    if S <= R.A:
        return "A"
    if S <= R.B:
        return "B"
    raise TheoremViolation("barrier meets both colour classes", {"S": sorted(S)})


def _violation(msg, G, R, e, **extra):
    w = {"graph": format_graph(G), "R": R.to_dict(), "e": e}
    w.update(extra)
    return TheoremViolation(msg, w)


def three_case(G: Multigraph, R: Doubleton, e: int, s1_class: str = "B") -> ThreeCaseReport:
    """Barrier structure of ``G - e`` for an R-compatible edge e.

    In the two-barrier case ``s1_class`` picks which barrier plays S1 (the one
    inside that doubleton colour class).
    """
    Ge = _require_compatible(G, R, e)
    bars = nontrivial_maximal_barriers(Ge)
    if len(bars) == 0:
        return ThreeCaseReport(0)
    Ge_ends = G.ends(e)
    ends = set(Ge_ends)
    if len(bars) == 1:
        S, I = bars[0].S, bars[0].isolated
        cls = _class_name(R, S)
        own = R.A if cls == "A" else R.B
        other = R.B if cls == "A" else R.A
        if not I <= other or len(I) != len(S) - 1:
            raise _violation("isolated set has the wrong side or size", G, R, e, S=sorted(S))
        y = next((v for v in Ge_ends if v in I), None)
        z = next((v for v in Ge_ends if v != y), None)
        if y is None or z not in own - S:
            raise _violation("e does not join I to the barrier's class outside S", G, R, e)
        return ThreeCaseReport(1, y=y, z=z, s_class=cls, S=S, I=I)
    if len(bars) > 2:
        raise _violation(f"G - e has {len(bars)} maximal nontrivial barriers", G, R, e)
    by_class = {_class_name(R, b.S): b for b in bars}
    if set(by_class) != {"A", "B"}:
        raise _violation("two maximal barriers inside one colour class", G, R, e)
    first = by_class[s1_class]
    second = by_class["A" if s1_class == "B" else "B"]
    S1, I1 = first.S, first.isolated
    S2s, I2s = second.S, second.isolated
    own = R.B if s1_class == "B" else R.A
    other = R.A if s1_class == "B" else R.B
    if not (I1 <= other and I2s <= own):
        raise _violation("isolated sets lie on the wrong sides", G, R, e)
    y = next((v for v in ends if v in I1 - S2s), None)
    z = next((v for v in ends if v != y), None)
    if y is None or z not in I2s - S1:
        raise _violation("e does not join I1 - S2* to I2* - S1", G, R, e)
    S2, I2 = S2s - I1, I2s - S1
    X1 = S1 | I1
    Q = contract_shore(Ge, X1)
    direct = nontrivial_maximal_barriers(Q)
    if len(direct) != 1 or direct[0].S != S2:
        raise _violation("S2* - I1 is not the unique maximal barrier of (G-e)/X1", G, R, e,
                         found=[sorted(b.S) for b in direct])
    rec = is_barrier(Ge, S2)
    if rec is None or rec.isolated != I2:
        raise _violation("S2 is not a barrier of G - e with isolated set I2* - S1", G, R, e)
    return ThreeCaseReport(2, y=y, z=z, s_class=s1_class, S1=S1, I1=I1, S2_star=S2s, I2_star=I2s,
                           S2=S2, I2=I2, X1=X1, X2=S2 | I2)


# -- candidate sets ----------------------------------------------------------------------

@dataclass
class CandidateBipartite:
    graph: Multigraph
    contraction_vertex: int
    side_with_contraction: frozenset  # I plus the contraction vertex
    side_of_barrier: frozenset  # S
    I: frozenset
    outside: frozenset  # the contracted shore, as vertices of G
    edge_map: dict[int, int] = field(default_factory=dict)


def _barrier_set(S) -> frozenset:
    return S.S if isinstance(S, Barrier) else frozenset(S)


def candidate_bipartite(G: Multigraph, R: Doubleton, e: int, S) -> CandidateBipartite:
    """The bipartite graph ``(H - e) / Xbar`` with ``X = S + I`` and H = G - R."""
    S = _barrier_set(S)
    if len(S) < 3:
        raise BarrierTooSmall(f"barrier has {len(S)} vertices, candidate sets need at least 3")
    Ge = G.delete_edges([e])
    rec = is_barrier(Ge, S)
    if rec is None:
        raise PreconditionViolated(f"{sorted(S)} is not a barrier of G - e")
    I = rec.isolated
    X = S | I
    Xbar = G.vertex_set - X
    He = Ge.delete_edges(R.edges)
    label = G.next_vertex()
    Hc = contract_shore(He, Xbar, label)
    side = I | {label}
    parts = bipartition(Hc)
    if parts is None or {frozenset(parts[0]), frozenset(parts[1])} != {side, S}:
        raise _violation("candidate graph has unexpected colour classes", G, R, e, S=sorted(S))
    if not is_matching_covered(Hc):
        raise _violation("candidate graph is not matching covered", G, R, e, S=sorted(S))
    return CandidateBipartite(Hc, label, side, S, I, Xbar, {eid: eid for eid in Hc.edge_ids})


def candidate_set(G: Multigraph, R: Doubleton, e: int, S, bip: CandidateBipartite | None = None) -> list[int]:
    """Removable edges of the candidate graph that avoid the contraction vertex."""
    if bip is None:
        bip = candidate_bipartite(G, R, e, S)
    Hc, xbar = bip.graph, bip.contraction_vertex
    return [bip.edge_map[eid] for eid, u, v in Hc.edges
            if xbar not in (u, v) and is_removable(Hc, eid)]


def satisfies_condition_one(G: Multigraph, e: int, f: int) -> bool:
    """Some end of f has all its neighbours in G - e inside one barrier of G - e."""
    Ge = G.delete_edges([e])
    cp = canonical_partition(Ge)
    for v in G.ends(f):
        nb = Ge.neighbors(v)
        if nb and any(nb <= P for P in cp.parts):
            return True
    return False


@dataclass
class MatchingCandidateReport:
    y: int
    z: int
    b1: int
    b2: int
    u0: int | None
    u1: int | None
    w: list[int]  # w1..wk, w1 paired with u1
    f: list[int]  # f1..fk
    clauses: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("y", "z", "b1", "b2", "u0", "u1", "w", "f", "clauses")}


def _ladder_ok(bip: CandidateBipartite, u1: int, w1: int) -> bool:
    simple = bip.graph.underlying_simple()
    ladder = build(6, [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
    if canonical_form(simple, SIMPLE_UNDERLYING) != canonical_form(ladder, SIMPLE_UNDERLYING):
        return False
    cubic = {v for v in simple.vertices if simple.degree(v) == 3}
    return cubic == {u1, w1}


def verify_matching_candidate_structure(G: Multigraph, R: Doubleton, e: int, S) -> MatchingCandidateReport:
    """Degree and adjacency structure forced when the candidate set is a matching."""
    bip = candidate_bipartite(G, R, e, S)
    C = candidate_set(G, R, e, S, bip)
    covered = [v for f in C for v in G.ends(f)]
    if len(covered) != len(set(covered)):
        raise NotAMatching("candidate set has two edges sharing an end")
    S, I, Xbar = bip.side_of_barrier, bip.I, bip.outside
    y = next(v for v in G.ends(e) if v in I)
    z = next(v for v in G.ends(e) if v != y)
    k = len(S) - 2
    clauses: dict[str, bool] = {}
    clauses["size |C| = |S|-2"] = len(C) == k
    # the doubleton edge on the barrier's own colour class plays beta
    b_ends = G.ends(R.alpha if S <= R.A else R.beta)
    b1 = next((v for v in b_ends if v in S), None)
    clauses["beta has an end in S"] = b1 is not None
    if b1 is None:
        b1 = b_ends[0]
    b2 = next(v for v in b_ends if v != b1)
    pair = {}
    for f in C:
        a, b = G.ends(f)
        w, u = (a, b) if a in I else (b, a)
        pair[w] = (u, f)
    ws = sorted(I - {y})
    clauses["each vertex of I - y meets one candidate"] = set(pair) == set(ws)
    with_outside = [w for w in ws if w in pair and G.neighbors(pair[w][0]) & Xbar]
    clauses["exactly one candidate end in S sees the outside"] = len(with_outside) == 1
    order = with_outside[:1] + [w for w in ws if w not in with_outside[:1]]
    us = [pair[w][0] for w in order if w in pair]
    fs = [pair[w][1] for w in order if w in pair]
    rest = S - {b1} - set(us)
    u0 = next(iter(rest)) if len(rest) == 1 else None
    clauses["one vertex of S left for u0"] = u0 is not None
    u1 = us[0] if us else None
    w1 = order[0] if order else None

    deg = G.degree
    nb = G.neighbors
    clauses["(i) vertices of I are cubic"] = all(deg(v) == 3 for v in I)
    clauses["(ii) b1 cubic with neighbours in I + b2"] = deg(b1) == 3 and nb(b1) <= I | {b2}
    if u0 is not None:
        n0 = nb(u0)
        clauses["(iii) u0 has one neighbour in I - y, rest outside"] = (
            len(n0 & (I - {y})) == 1 and n0 - (I - {y}) <= Xbar)
        xbar_edges = sum(1 for _, w in bip.graph.incident(u0) if w == bip.contraction_vertex)
        clauses["u0 has two or more edges to the contraction vertex"] = xbar_edges >= 2
    if u1 is not None:
        n1 = nb(u1)
        clauses["(iv) u1 has two neighbours in I, rest outside"] = len(n1 & I) == 2 and n1 - I <= Xbar
    if len(S) >= 4:
        others = S - {b1, u0, u1}
        clauses["(v) other barrier vertices have three neighbours in I"] = all(
            deg(v) == 3 and len(nb(v)) == 3 and nb(v) <= I for v in others)
        clauses["b1 and w1 nonadjacent"] = w1 is not None and w1 not in nb(b1)
        choices = sorted(nb(b1) & (I - {y, w1}))
        ok = bool(choices)
        for w2 in choices:
            u2 = pair[w2][0] if w2 in pair else None
            ok &= u2 is not None and {b1, u2} <= nb(y) and (u0 is None or w2 not in nb(u0))
        clauses["y sees b1 and u2; u0 and w2 nonadjacent"] = ok
    elif len(S) == 3 and u0 is not None and u1 is not None and w1 is not None:
        clauses["size three: N(b1) = {y, w1, b2}"] = nb(b1) == {y, w1, b2}
        clauses["size three: u0 sees w1, rest outside"] = w1 in nb(u0) and nb(u0) - {w1} <= Xbar
        clauses["size three: u1 sees y and w1, rest outside"] = (
            {y, w1} <= nb(u1) and nb(u1) - {y, w1} <= Xbar)
        clauses["size three: candidate graph is a ladder"] = _ladder_ok(bip, u1, w1)
    return MatchingCandidateReport(y, z, b1, b2, u0, u1, order, fs, clauses)


# -- classification -----------------------------------------------------------------

def classify_edges(G: Multigraph, doubletons: list[Doubleton] | None = None) -> list[EdgeClassification]:
    """Per-edge removability, b-invariance, thinness and per-doubleton flags."""
    brick = is_brick(G)
    if doubletons is None:
        try:
            doubletons = removable_doubletons(G)
        except (BipartiteInput, NotMatchingCovered):
            doubletons = []
    bG = b_count(G) if is_matching_covered(G) else None
    out = []
    for e in G.edge_ids:
        rem = is_matching_covered(G.delete_edges([e]))
        binv = rem and bG is not None and b_count(G.delete_edges([e])) == bG
        thin = binv and brick and is_brick(retract(G.delete_edges([e])).graph)
        flags = []
        for R in doubletons:
            if e in R.edges:
                continue
            comp = rem and is_R_compatible(G, R, e)
            fl = DoubletonFlags(R.alpha, R.beta, comp)
            if comp and brick:
                fl.index = edge_index(G, R, e)
                fl.rank = edge_rank(G, R, e)
                fl.R_thin = thin
            flags.append(fl)
        out.append(EdgeClassification(e, rem, binv, thin, flags))
    return out


def doubleton_through_retract(J: Multigraph, R: Doubleton, witness_graph: Multigraph, e: int) -> Doubleton:
    """The image of R in a retract J; both edges must survive and stay a doubleton."""
    if not (J.has_edge(R.alpha) and J.has_edge(R.beta)):
        raise TheoremViolation("a doubleton edge vanished in the retract",
                               {"graph": format_graph(witness_graph), "R": R.to_dict(), "e": e})
    RJ = make_doubleton(J, R.alpha, R.beta)
    if RJ is None:
        raise TheoremViolation("doubleton image is not a removable doubleton of the retract",
                               {"graph": format_graph(witness_graph), "R": R.to_dict(), "e": e})
    return RJ


__all__ = [
    "bicontract", "retract", "RetractResult", "bi_split", "is_thin", "is_R_thin", "R_thin_edges",
    "edge_index", "edge_rank", "potential", "ThreeCaseReport", "three_case", "CandidateBipartite",
    "candidate_bipartite", "candidate_set", "satisfies_condition_one", "MatchingCandidateReport",
    "verify_matching_candidate_structure", "classify_edges", "doubleton_through_retract",
]
