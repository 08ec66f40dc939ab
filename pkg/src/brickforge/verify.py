"""Property and lemma suites run over the built-in graphs and the catalog.

Each check returns a ``CheckResult`` carrying the number of instances examined
and a serializable record for every counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable

from .doubleton import Doubleton, make_doubleton
from .errors import BrickforgeError, TheoremViolation
from .generator import (
    CatalogEntry,
    ascend,
    base_tag,
    brute_force_simple_nb_bricks,
    expansions,
    find_R_thin_edge,
    generate_catalog,
    reduction_sequence,
)
from .graphcore import (
    SIMPLE_UNDERLYING,
    Multigraph,
    canonical_form,
    format_graph,
    is_bipartite,
    is_isomorphic,
)
from .graphs import builtin, named_doubletons, named_edge
from .matching import (
    barrier_record,
    canonical_partition,
    enumerate_perfect_matchings,
    has_perfect_matching,
    is_admissible,
    is_barrier,
    is_brick,
    is_matching_covered,
    pair_oracle,
)
from .nearbip import (
    R_compatible_edges,
    is_b_invariant,
    is_near_bipartite,
    is_R_compatible,
    is_removable,
    removable_doubletons,
    removable_edges,
    verify_exchange_bipartite,
    verify_exchange_Rcompatible,
)
from .retractthin import (
    R_thin_edges,
    barriers_small,
    bi_split,
    bicontract,
    candidate_set,
    doubleton_through_retract,
    edge_index,
    edge_rank,
    is_R_thin,
    is_thin,
    retract,
    satisfies_condition_one,
    three_case,
    verify_matching_candidate_structure,
)
from .tightcut import b_count, decompose, unique_brick

SUITES = ("core", "lemmas", "full")


@dataclass
class CheckResult:
    name: str
    instances: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **detail) -> None:
        self.failures.append(detail)

    def expect(self, cond: bool, **detail) -> None:
        self.instances += 1
        if not cond:
            self.fail(**detail)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.instances} instances, {len(self.failures)} failures"

    def to_dict(self) -> dict:
        return {"name": self.name, "instances": self.instances, "ok": self.ok,
                "failures": self.failures}

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(d["name"], d["instances"], list(d["failures"]))


@dataclass
class SuiteReport:
    suite: str
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok, "results": [r.to_dict() for r in self.results]}

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteReport":
        return cls(d["suite"], [CheckResult.from_dict(r) for r in d["results"]])


def _w(G: Multigraph, R: Doubleton | None = None, **extra) -> dict:
    d = {"graph": format_graph(G)}
    if R is not None:
        d["R"] = [R.alpha, R.beta]
    d.update(extra)
    return d


def _guard(res: CheckResult, fn: Callable, **ctx) -> None:
    """Run ``fn`` and turn a theorem violation into a recorded failure."""
    try:
        fn()
    except (TheoremViolation, BrickforgeError, AssertionError) as exc:
        res.instances += 1
        res.fail(error=f"{type(exc).__name__}: {exc}",
                 witness=getattr(exc, "witness", None), **ctx)


# -- per-graph memo ----------------------------------------------------------------------

class EdgeStudy:
    """Lazily computed facts about ``G - e`` shared by the checks."""

    def __init__(self, G: Multigraph):
        self.G = G
        self._Ge: dict[int, Multigraph] = {}
        self._compat: dict[tuple, bool] = {}
        self._rank: dict[int, int] = {}
        self._index: dict[int, int] = {}
        self._thin: dict[tuple, bool] = {}
        self._cands: dict[tuple, list[int]] = {}

    def Ge(self, e: int) -> Multigraph:
        if e not in self._Ge:
            self._Ge[e] = self.G.delete_edges([e])
        return self._Ge[e]

    def compatible(self, R: Doubleton, e: int) -> bool:
        key = (R.alpha, R.beta, e)
        if key not in self._compat:
            self._compat[key] = e not in R.edges and is_R_compatible(self.G, R, e)
        return self._compat[key]

    def rank(self, R: Doubleton, e: int) -> int:
        if e not in self._rank:
            self._rank[e] = edge_rank(self.G, R, e)
        return self._rank[e]

    def index(self, R: Doubleton, e: int) -> int:
        if e not in self._index:
            self._index[e] = edge_index(self.G, R, e)
        return self._index[e]

    def potential(self, R: Doubleton, e: int) -> int:
        return self.rank(R, e) + self.index(R, e)

    def thin(self, R: Doubleton, e: int) -> bool:
        key = (R.alpha, R.beta, e)
        if key not in self._thin:
            self._thin[key] = is_R_thin(self.G, R, e, checked=True)
        return self._thin[key]

    def candidates(self, R: Doubleton, e: int, S: frozenset) -> list[int]:
        key = (R.alpha, R.beta, e, S)
        if key not in self._cands:
            self._cands[key] = candidate_set(self.G, R, e, S)
        return self._cands[key]


Instance = tuple[Multigraph, list[Doubleton]]


def catalog_instances(entries: Iterable[CatalogEntry]) -> list[Instance]:
    return [(c.graph, list(c.doubletons)) for c in entries]


def _is_exact_base(G: Multigraph) -> bool:
    return (G.n, G.m) in ((4, 6), (6, 9)) and base_tag(G) is not None


def _sub_barriers(Ge: Multigraph, part: frozenset, min_size: int = 3):
    members = sorted(part)
    for k in range(min_size, len(members) + 1):
        for S in combinations(members, k):
            if is_barrier(Ge, S) is not None:
                yield frozenset(S)


# -- exact facts about the built-in graphs ------------------------------------------------------

def check_petersen(G: Multigraph | None = None) -> CheckResult:
    G = G or builtin("petersen")
    res = CheckResult("petersen: all edges removable, b(G-e)=2, none b-invariant")
    rem = removable_edges(G)
    res.expect(rem == list(G.edge_ids), **_w(G, removable=rem))
    for e in G.edge_ids:
        b = b_count(G.delete_edges([e]))
        res.expect(b == 2 and not is_b_invariant(G, e), **_w(G, e=e, b=b))
    return res


def check_st8(G: Multigraph | None = None) -> CheckResult:
    """Works on unannotated copies too, so a mutated file can stand in for the built-in."""
    named = G is None
    G = G or builtin("st8")
    res = CheckResult("st8: one removable edge, two doubletons, e R-thin for both")
    rem = removable_edges(G) if is_matching_covered(G) else []
    res.expect(len(rem) == 1, **_w(G, removable=rem))
    if named:
        res.expect(rem == [named_edge(G, "e")], **_w(G, removable=rem, check="named e"))
    found = removable_doubletons(G) if is_brick(G) else []
    res.expect(len(found) == 2, **_w(G, doubletons=[list(R.edges) for R in found]))
    if named:
        want = sorted(tuple(sorted(p)) for p in named_doubletons(G).values())
        res.expect(sorted(R.edges for R in found) == want, **_w(G, check="named doubletons"))
    if len(rem) != 1 or len(found) != 2:
        return res
    e = rem[0]
    res.expect(is_b_invariant(G, e), **_w(G, check="b-invariant"))
    for R in found:
        res.expect(is_R_thin(G, R, e), **_w(G, R, check="R-thin"))
    J = retract(G.delete_edges([e])).graph
    k4 = builtin("k4")
    res.expect(J.n == 4 and J.m == 7 and canonical_form(J, SIMPLE_UNDERLYING) == canonical_form(k4, SIMPLE_UNDERLYING),
               **_w(G, retract=format_graph(J)))
    return res


def check_bases() -> CheckResult:
    res = CheckResult("K4 and prism: bricks with three doubletons and no R-thin edge")
    for name in ("k4", "c6bar"):
        G = builtin(name)
        res.expect(is_brick(G), **_w(G, name=name, check="brick"))
        Rs = removable_doubletons(G)
        res.expect(len(Rs) == 3, **_w(G, name=name, doubletons=len(Rs)))
        for R in Rs:
            thin = R_thin_edges(G, R)
            res.expect(not thin, **_w(G, R, name=name, R_thin=thin))
    return res


def check_fig2_fig3() -> CheckResult:
    res = CheckResult("fig2: e thin, not R-compatible, retract not near-bipartite; fig3: e, f R'-compatible only")
    G = builtin("fig2_brick")
    e = named_edge(G, "e")
    a, b = named_doubletons(G)["R"]
    R = make_doubleton(G, a, b)
    res.expect(R is not None and is_thin(G, e) and not is_R_compatible(G, R, e), **_w(G, e=e))
    J = retract(G.delete_edges([e])).graph
    res.expect(not is_near_bipartite(J), **_w(J, check="fig2 retract near-bipartite"))
    F = builtin("fig3_pseudo_biwheel")
    pairs = named_doubletons(F)
    R = make_doubleton(F, *pairs["R"])
    Rp = make_doubleton(F, *pairs["R'"])
    for name in ("e", "f"):
        x = named_edge(F, name)
        res.expect(is_R_compatible(F, Rp, x) and not is_R_compatible(F, R, x), **_w(F, edge=name))
    return res


def core_suite(overrides: dict[str, Multigraph] | None = None) -> list[CheckResult]:
    ov = overrides or {}
    return [check_petersen(ov.get("petersen")), check_st8(ov.get("st8")), check_bases(), check_fig2_fig3()]


# -- doubletons and exchange ------------------------------------------------------------------

def check_doubleton_properties(instances: list[Instance]) -> CheckResult:
    """Parity of alpha and beta in perfect matchings, neither removable, near-brick,
    and the unique brick of G - e inherits a doubleton."""
    res = CheckResult("doubleton parity, non-removability and near-brick")
    for G, Rs in instances:
        pms = enumerate_perfect_matchings(G)
        for R in Rs:
            parity = all((R.alpha in M) == (R.beta in M) for M in pms)
            res.expect(parity and not is_removable(G, R.alpha) and not is_removable(G, R.beta)
                       and b_count(G) == 1, **_w(G, R))
    return res


def check_brick_inheritance(instances: list[Instance]) -> CheckResult:
    res = CheckResult("brick of an R-graph G - e is near-bipartite")
    for G, Rs in instances:
        st = EdgeStudy(G)
        for R in Rs:
            for e in G.edge_ids:
                if not st.compatible(R, e):
                    continue
                J = unique_brick(st.Ge(e))
                ok = set(R.edges) <= set(J.edge_ids) and make_doubleton(J, *R.edges) is not None
                res.expect(ok, **_w(G, R, e=e))
    return res


def check_exchange(instances: list[Instance]) -> CheckResult:
    res = CheckResult("exchange properties (bipartite and R-compatible)")
    for G, Rs in instances:
        for R in Rs:
            H = G.delete_edges(R.edges)
            rem_H = [e for e in H.edge_ids if is_removable(H, e)]
            for e in rem_H:
                He = H.delete_edges([e])
                for f in He.edge_ids:
                    if is_removable(He, f):
                        res.expect(verify_exchange_bipartite(H, e, f), **_w(H, kind="bipartite", e=e, f=f))
            compat = R_compatible_edges(G, R)
            for e in compat:
                Ge = G.delete_edges([e])
                for f in Ge.edge_ids:
                    if f not in R.edges and is_R_compatible(Ge, R, f):
                        res.expect(verify_exchange_Rcompatible(G, R, e, f),
                                   **_w(G, R, kind="R-compatible", e=e, f=f))
    return res


def check_quadrilateral(graphs: Iterable[Multigraph]) -> CheckResult:
    """Two edges at a vertex of degree three or more lying in a common 4-cycle:
    at least one is removable."""
    res = CheckResult("quadrilateral property of bipartite matching covered graphs")
    for H in graphs:
        if not is_bipartite(H) or not is_matching_covered(H) or H.n < 4:
            continue
        removable = {e: is_removable(H, e) for e in H.edge_ids}
        for b in H.vertices:
            if H.degree(b) < 3:
                continue
            for (e, x), (f, x2) in combinations(H.incident(b), 2):
                if x == x2:
                    continue
                if (H.neighbors(x) & H.neighbors(x2)) - {b}:
                    res.expect(removable[e] or removable[f], **_w(H, b=b, e=e, f=f))
    return res


# -- R-thin edges, index and rank -----------------------------------------------------------------

def check_R_thin_existence(instances: list[Instance], strategies=("scan",)) -> CheckResult:
    res = CheckResult("every R-brick other than K4 and the prism has an R-thin edge")
    for G, Rs in instances:
        if _is_exact_base(G):
            continue
        for R in Rs:
            thin = R_thin_edges(G, R)
            res.expect(bool(thin), **_w(G, R, check="R_thin_edges"))
            if base_tag(G) is not None:
                continue
            for strategy in strategies:
                def run(strategy=strategy):
                    e = find_R_thin_edge(G, R, strategy)
                    res.expect(e in thin, **_w(G, R, strategy=strategy, e=e))
                _guard(res, run, **_w(G, R, strategy=strategy))
    return res


def check_rank_plus_index(instances: list[Instance], use_ascend: bool = True) -> CheckResult:
    """Every R-compatible edge that is not R-thin has an R-compatible f with
    condition (i) and larger rank + index."""
    res = CheckResult("rank-plus-index: a better edge exists for every non-thin R-compatible edge")
    for G, Rs in instances:
        st = EdgeStudy(G)
        for R in Rs:
            compat = [e for e in G.edge_ids if st.compatible(R, e)]
            for e in compat:
                if st.thin(R, e):
                    continue
                pe = st.potential(R, e)
                better = [f for f in compat if f != e and st.potential(R, f) > pe
                          and satisfies_condition_one(G, e, f)]
                res.expect(bool(better), **_w(G, R, e=e, potential=pe))
                if use_ascend and better:
                    def run():
                        f = ascend(G, R, e)
                        res.expect(f is not None and st.potential(R, f) > pe
                                   and satisfies_condition_one(G, e, f), **_w(G, R, e=e, ascend=f))
                    _guard(res, run, **_w(G, R, e=e, check="ascend"))
    return res


def _in_triangle(G: Multigraph, e: int) -> bool:
    u, v = G.ends(e)
    return bool((G.neighbors(u) & G.neighbors(v)) - {u, v})


def check_index_degree(instances: list[Instance]) -> CheckResult:
    res = CheckResult("index of an R-thin edge read off end degrees")
    for G, Rs in instances:
        st = EdgeStudy(G)
        for R in Rs:
            for e in G.edge_ids:
                if not st.compatible(R, e) or not st.thin(R, e):
                    continue
                u, v = G.ends(e)
                cubic = [G.degree(x) == 3 for x in (u, v)]
                k = st.index(R, e)
                want = {0: not any(cubic), 1: sum(cubic) == 1, 2: all(cubic) and not _in_triangle(G, e)}
                res.expect(all(want[i] == (i == k) for i in want), **_w(G, R, e=e, index=k))
    return res


def check_rank_table(instances: list[Instance]) -> CheckResult:
    """Index 0 gives rank n; index 1 rank <= n-2 and index 2 rank <= n-4, with
    equality exactly when every barrier of G - e has at most two vertices.
    Retract-thin edges always attain equality."""
    res = CheckResult("rank bounds by index")
    for G, Rs in instances:
        st = EdgeStudy(G)
        n = G.n
        for R in Rs:
            for e in G.edge_ids:
                if not st.compatible(R, e):
                    continue
                k, r = st.index(R, e), st.rank(R, e)
                small = barriers_small(st.Ge(e))
                top = n - 2 * k
                ok = r <= top and ((r == top) == small) and (k > 0 or r == n)
                if st.thin(R, e):
                    ok &= r == top
                res.expect(ok, **_w(G, R, e=e, index=k, rank=r))
    return res


def check_three_case(instances: list[Instance]) -> CheckResult:
    res = CheckResult("barrier structure of G - e: at most two barriers, |I| = |S| - 1")
    for G, Rs in instances:
        st = EdgeStudy(G)
        for R in Rs:
            for e in G.edge_ids:
                if not st.compatible(R, e):
                    continue

                def run(e=e, R=R):
                    rep = three_case(G, R, e)
                    ok = rep.case <= 2
                    if rep.case == 1:
                        ok &= len(rep.I) == len(rep.S) - 1
                    if rep.case == 2:
                        ok &= len(rep.I1) == len(rep.S1) - 1 and len(rep.I2_star) == len(rep.S2_star) - 1
                        other = three_case(G, R, e, s1_class="A" if rep.s_class == "B" else "B")
                        ok &= other.case == 2
                    res.expect(ok, **_w(G, R, e=e, report=rep.to_dict()))
                _guard(res, run, **_w(G, R, e=e))
    return res


# -- candidate sets ---------------------------------------------------------------------------

def check_candidate_sets(instances: list[Instance]) -> dict[str, CheckResult]:
    """All candidate-set facts, sharing one pass over (G, R, e, S)."""
    out = {k: CheckResult(k) for k in (
        "candidate set size at least |S| - 2",
        "candidate edges are R-compatible with condition (i) and rank >= rank(e), and conversely",
        "candidate containment under barrier inclusion",
        "index-one candidates have larger rank",
        "adjacent candidates: one has larger rank",
        "structure when the candidate set is a matching",
        "equal rank lemma clauses",
    )}
    size, props, contain, one, adj, struct, equal = out.values()
    for G, Rs in instances:
        st = EdgeStudy(G)
        for R in Rs:
            for e in G.edge_ids:
                if not st.compatible(R, e):
                    continue
                Ge = st.Ge(e)
                parts = [P for P in canonical_partition(Ge).parts if len(P) >= 3]
                if not parts:
                    continue
                for P in parts:
                    subs = list(_sub_barriers(Ge, P))
                    for S in subs:
                        _candidate_facts(G, R, e, S, st, size, props, struct)
                        if S != P:
                            C, Cstar = st.candidates(R, e, S), st.candidates(R, e, P)
                            contain.expect(set(C) <= set(Cstar), **_w(G, R, e=e, S=sorted(S), S_star=sorted(P)))
                    _maximal_barrier_facts(G, R, e, P, st, one, adj, equal)
    return out


def _candidate_facts(G, R, e, S, st: EdgeStudy, size: CheckResult, props: CheckResult,
                     struct: CheckResult) -> None:
    C = st.candidates(R, e, S)
    size.expect(len(C) >= len(S) - 2, **_w(G, R, e=e, S=sorted(S), C=C))
    Ge = st.Ge(e)
    I = barrier_record(Ge, S).isolated
    re = st.rank(R, e)
    for f in C:
        ok = is_R_compatible(Ge, R, f) and st.compatible(R, f) and satisfies_condition_one(G, e, f)
        ok = ok and st.rank(R, f) >= re
        props.expect(ok, **_w(G, R, e=e, S=sorted(S), f=f))
    conv = [f for f in Ge.edge_ids if f not in R.edges and set(G.ends(f)) & I
            and is_R_compatible(Ge, R, f)]
    props.expect(set(conv) <= set(C), **_w(G, R, e=e, S=sorted(S), converse=conv, C=C))
    ends = [v for f in C for v in G.ends(f)]
    if len(ends) == len(set(ends)):
        def run():
            rep = verify_matching_candidate_structure(G, R, e, S)
            struct.expect(rep.ok, **_w(G, R, e=e, S=sorted(S), failed=rep.failures()))
        _guard(struct, run, **_w(G, R, e=e, S=sorted(S)))


def _maximal_barrier_facts(G, R, e, S1, st: EdgeStudy, one: CheckResult, adj: CheckResult,
                           equal: CheckResult) -> None:
    C = st.candidates(R, e, S1)
    re = st.rank(R, e)
    for f in C:
        if st.index(R, f) == 1:
            one.expect(st.rank(R, f) > re, **_w(G, R, e=e, f=f, S1=sorted(S1)))
    if st.index(R, e) != 2:
        return
    for f, g in combinations(C, 2):
        if set(G.ends(f)) & set(G.ends(g)):
            adj.expect(st.rank(R, f) > re or st.rank(R, g) > re, **_w(G, R, e=e, f=f, g=g))
    cls = "B" if S1 <= R.B else "A"
    for f in C:
        if st.index(R, f) == 2 and st.rank(R, f) == re:
            _guard(equal, lambda f=f: _equal_rank_clauses(G, R, e, f, S1, cls, st, equal),
                   **_w(G, R, e=e, f=f))


def _equal_rank_clauses(G, R, e, f, S1, cls, st: EdgeStudy, res: CheckResult) -> None:
    te = three_case(G, R, e, s1_class=cls)
    tf = three_case(G, R, f, s1_class=cls)
    if te.S1 != S1:
        raise TheoremViolation("three-case S1 differs from the chosen maximal barrier")
    I1, S2, I2, y = te.I1, te.S2, te.I2, te.y
    S3, I3, S4, I4 = tf.S1, tf.I1, tf.S2, tf.I2
    a, b = G.ends(f)
    u, w = (a, b) if a in S1 else (b, a)
    clauses = {
        "(i) e and f nonadjacent": not set(G.ends(e)) & {u, w},
        "(ii) S3 in S1 - u and I3 in I1 - y": S3 <= S1 - {u} and I3 <= I1 - {y},
        "(iii) S2 < S4 and I2 < I4": S2 < S4 and I2 < I4,
        "(iv) S1 + I2 = S3 + I4 and S2 + I1 = S4 + I3": S1 | I2 == S3 | I4 and S2 | I1 == S4 | I3,
        "(v) N(u) in S2 + I1": G.neighbors(u) <= S2 | I1,
        "(vi) e in C(f, S4)": len(S4) >= 3 and e in st.candidates(R, f, S4),
        "S2 inside a barrier of G - f": any(S2 <= P for P in canonical_partition(st.Ge(f)).parts),
    }
    bad = [k for k, v in clauses.items() if not v]
    res.expect(not bad, **_w(G, R, e=e, f=f, failed=bad))


# -- reduction and expansion ---------------------------------------------------------------------

def check_reduction(instances: list[Instance], strategy: str = "scan") -> CheckResult:
    res = CheckResult("reduction sequences end at K4 or the prism")
    for G, Rs in instances:
        for R in Rs:
            def run(R=R):
                seq = reduction_sequence(G, R, strategy)
                ok = seq.tag in ("K4", "C6bar")
                for step in seq.steps:
                    ok &= is_R_thin(step.graph, step.R, step.e)
                    ok &= step.retract.graph.n in (step.graph.n, step.graph.n - 2, step.graph.n - 4)
                res.expect(ok, **_w(G, R, chain=[[s.graph.n, s.e] for s in seq.steps]))
            _guard(res, run, **_w(G, R))
    return res


def check_expansion_roundtrip(instances: list[Instance], n_max: int) -> CheckResult:
    """Reducing G by one step and expanding the result regenerates G."""
    res = CheckResult("expansions regenerate every one-step reduction")
    for G, Rs in instances:
        if base_tag(G) is not None:
            continue
        form = canonical_form(G)
        for R in Rs:
            def run(R=R):
                e = find_R_thin_edge(G, R)
                J = retract(G.delete_edges([e])).graph
                RJ = doubleton_through_retract(J, R, G, e)
                found = {canonical_form(x.graph) for x in expansions(J, RJ, max(n_max, G.n))}
                res.expect(form in found, **_w(G, R, e=e))
            _guard(res, run, **_w(G, R))
    return res


def check_catalog_soundness(entries: list[CatalogEntry]) -> CheckResult:
    res = CheckResult("catalog entries are near-bipartite bricks with thin edges")
    for c in entries:
        G = c.graph
        ok = is_brick(G) and is_near_bipartite(G)
        if ok and not _is_exact_base(G):
            # some thin edge whose retract is near-bipartite
            ok = any(is_R_thin(G, R, e, checked=True) and is_near_bipartite(retract(G.delete_edges([e])).graph)
                     for R in c.doubletons for e in G.edge_ids if e not in R.edges)
        res.expect(ok, **_w(G))
    return res


def check_catalog_completeness(n: int = 6, entries: list[CatalogEntry] | None = None) -> CheckResult:
    res = CheckResult(f"catalog matches brute force on simple {n}-vertex near-bipartite bricks")
    brute = brute_force_simple_nb_bricks(n)
    if entries is None:
        entries = generate_catalog(n)
    mine = {c.form for c in entries if c.simple and c.graph.n == n}
    res.expect(set(brute) == mine, missing=[format_graph(brute[f]) for f in set(brute) - mine],
               extra=len(mine - set(brute)))
    return res


# -- retract, decomposition and oracle checks -------------------------------------------------------

def _removable_deletions(G: Multigraph) -> list[Multigraph]:
    return [G.delete_edges([e]) for e in G.edge_ids if is_removable(G, e)]


def check_retract_order(graphs: Iterable[Multigraph], seed: int = 0, orders: int = 5) -> CheckResult:
    res = CheckResult("retract is independent of bicontraction order")
    rng = random.Random(seed)
    for G in graphs:
        for Ge in _removable_deletions(G):
            base = retract(Ge).graph
            for _ in range(orders):
                other = retract(Ge, rng).graph
                res.expect(is_isomorphic(base, other), **_w(Ge))
    return res


def check_bisplit_roundtrip(graphs: Iterable[Multigraph]) -> CheckResult:
    res = CheckResult("bicontracting the new vertex undoes a bi-split")
    for G in graphs:
        for v in G.vertices:
            inc = sorted(eid for eid, _ in G.incident(v))
            first, rest = inc[0], inc[1:]
            for mask in range(2 ** len(rest) - 1):
                p1 = [first] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
                p2 = [x for x in rest if x not in p1]
                B = bi_split(G, v, (p1, p2))
                back = bicontract(B, B.vertices[-1])
                res.expect(is_isomorphic(G, back) and is_matching_covered(B), **_w(G, v=v, parts=[p1, p2]))
    return res


def check_decomposition_invariance(graphs: Iterable[Multigraph], seed: int = 0, orders: int = 5) -> CheckResult:
    """Random cut orders give the same b and the same multiset of pieces,
    for each graph and each G - e with e removable."""
    res = CheckResult("tight cut decomposition is order independent")
    rng = random.Random(seed)
    for G in graphs:
        for P in [G] + _removable_deletions(G):
            ref = decompose(P)
            for _ in range(orders):
                d = decompose(P, seed=rng.randrange(2 ** 31))
                res.expect(d.b == ref.b and d.piece_forms() == ref.piece_forms(), **_w(P))
    return res


def _oracle_agree(G: Multigraph, res: CheckResult) -> None:
    pms = enumerate_perfect_matchings(G)
    res.expect(has_perfect_matching(G) == bool(pms) == pair_oracle(G).has_perfect_matching(),
               **_w(G, check="perfect matching"))
    if not G.n % 2:
        used = set().union(*pms) if pms else set()
        for e in G.edge_ids:
            res.expect(is_admissible(G, e) == (e in used), **_w(G, e=e, check="admissible"))


def random_graph(rng: random.Random, n_max: int = 10) -> Multigraph:
    n = rng.randrange(2, n_max + 1)
    p = rng.uniform(0.2, 0.8)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    extra = [rng.choice(edges) for _ in range(rng.randrange(3))] if edges else []
    return Multigraph.from_edges(range(n), [(i, u, v) for i, (u, v) in enumerate(edges + extra)])


def suite_graphs(instances: list[Instance], n_max: int = 12) -> list[Multigraph]:
    """Graphs arising in the suites: each brick, H = G - R, G - e and their candidate graphs."""
    out: dict = {}
    for G, Rs in instances:
        out.setdefault(G, None)
        for R in Rs:
            out.setdefault(G.delete_edges(R.edges), None)
        for e in G.edge_ids:
            out.setdefault(G.delete_edges([e]), None)
    return [G for G in out if G.n <= n_max]


def check_oracle_equivalence(graphs: Iterable[Multigraph], random_count: int = 1000, seed: int = 0) -> CheckResult:
    res = CheckResult("matching engine agrees with the enumeration oracle")
    for G in graphs:
        _oracle_agree(G, res)
    rng = random.Random(seed)
    for _ in range(random_count):
        _oracle_agree(random_graph(rng), res)
    return res


# -- suite drivers ------------------------------------------------------------------------------

def lemma_suite(instances: list[Instance], n_max: int) -> list[CheckResult]:
    bip = [G.delete_edges(R.edges) for G, Rs in instances for R in Rs]
    out = [
        check_doubleton_properties(instances),
        check_brick_inheritance(instances),
        check_exchange(instances),
        check_quadrilateral(bip),
        check_three_case(instances),
        check_R_thin_existence(instances, ("scan", "ascent")),
        check_rank_plus_index(instances),
        check_index_degree(instances),
        check_rank_table(instances),
    ]
    out += list(check_candidate_sets(instances).values())
    out.append(check_reduction(instances))
    return out


def run_suite(suite: str, n_max: int = 8, seed: int = 0, max_excess: int | None = None,
              overrides: dict[str, Multigraph] | None = None) -> SuiteReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    results = core_suite(overrides)
    if suite in ("lemmas", "full"):
        entries = generate_catalog(n_max, max_excess=max_excess)
        inst = catalog_instances(entries)
        results += lemma_suite(inst, n_max)
        if suite == "full":
            graphs = [G for G, _ in inst]
            results += [
                check_catalog_soundness(entries),
                check_catalog_completeness(6),
                check_expansion_roundtrip(inst, n_max),
                check_retract_order(graphs, seed),
                check_bisplit_roundtrip([G for G in graphs if G.n <= 10]),
                check_decomposition_invariance(graphs, seed),
                check_oracle_equivalence(suite_graphs(inst), seed=seed),
            ]
    return SuiteReport(suite, results)
