from itertools import combinations

import networkx as nx
import pytest

from brickforge.doubleton import make_doubleton
from brickforge.errors import AlreadyThin, BaseBrick, NotRCompatible
from brickforge.generator import (
    K4_TAG,
    PRISM_TAG,
    ReductionSequence,
    ascend,
    base_tag,
    brute_force_simple_nb_bricks,
    default_max_excess,
    excess,
    expansions,
    find_R_thin_edge,
    generate_catalog,
    load_catalog,
    reduce_step,
    reduction_sequence,
    save_catalog,
    simple_classes,
)
from brickforge.graphcore import SIMPLE_UNDERLYING, build, canonical_form
from brickforge.graphs import builtin, named_doubletons, named_edge
from brickforge.matching import is_brick
from brickforge.nearbip import R_compatible_edges, is_near_bipartite, removable_doubletons
from brickforge.retractthin import R_thin_edges, doubleton_through_retract, is_R_thin, retract

from conftest import brute_is_matching_covered, brute_perfect_matchings, to_nx


def _nx_near_bipartite_brick(N: nx.Graph) -> bool:
    """Independent test through networkx and matching enumeration."""
    n = N.number_of_nodes()
    if n % 2 or n < 4 or nx.node_connectivity(N) < 3:
        return False
    G = build(n, list(N.edges()))
    for u, v in combinations(range(n), 2):
        if not brute_perfect_matchings(G.delete_vertices([u, v])):
            return False
    for a, b in combinations(G.edge_ids, 2):
        H = G.delete_edges([a, b])
        NH = to_nx(H)
        if nx.is_bipartite(NH) and brute_is_matching_covered(H):
            col = nx.bipartite.color(NH)
            (a1, a2), (b1, b2) = G.ends(a), G.ends(b)
            if col[a1] == col[a2] and col[b1] == col[b2] and col[a1] != col[b1]:
                return True
    return False


def test_default_max_excess():
    assert [default_max_excess(n) for n in (4, 6, 8, 10)] == [2, 5, 10, 17]


def test_base_tags():
    assert base_tag(builtin("k4")) == K4_TAG
    assert base_tag(builtin("c6bar")) == PRISM_TAG
    assert base_tag(builtin("st8")) is None
    doubled, _ = builtin("k4").add_edge(0, 1)
    assert base_tag(doubled) == K4_TAG
    assert excess(builtin("st8")) == 4


def test_st8_reduces_to_k4_in_one_step():
    G = builtin("st8")
    for R in removable_doubletons(G):
        for strategy in ("scan", "ascent"):
            seq = reduction_sequence(G, R, strategy)
            assert seq.tag == K4_TAG
            assert [s.e for s in seq.steps] == [named_edge(G, "e")]
            assert (seq.final.n, seq.final.m) == (4, 7)


def test_fig3_reduction_chain_ends_at_a_base():
    F = builtin("fig3_pseudo_biwheel")
    for R in removable_doubletons(F):
        seq = reduction_sequence(F, R)
        assert seq.tag in (K4_TAG, PRISM_TAG)
        for step in seq.steps:
            assert is_R_thin(step.graph, step.R, step.e)
        d = seq.to_dict()
        assert d["tag"] == seq.tag and len(d["chain"]) == len(seq.steps)
        assert isinstance(seq, ReductionSequence)


def test_find_thin_edge_refuses_bases():
    G = builtin("k4")
    with pytest.raises(BaseBrick):
        find_R_thin_edge(G, removable_doubletons(G)[0])


def test_ascend_preconditions():
    G = builtin("st8")
    R = removable_doubletons(G)[0]
    with pytest.raises(AlreadyThin):
        ascend(G, R, named_edge(G, "e"))
    with pytest.raises(NotRCompatible):
        ascend(G, R, 4)


def test_ascend_improves_potential_on_fig3():
    F = builtin("fig3_pseudo_biwheel")
    Rp = make_doubleton(F, *named_doubletons(F)["R'"])
    thin = set(R_thin_edges(F, Rp))
    for e in R_compatible_edges(F, Rp):
        if e in thin:
            continue
        f = ascend(F, Rp, e)
        assert f is not None and f != e


def test_one_step_reduction_is_regenerated_by_expansion():
    for G in (builtin("st8"), builtin("fig3_pseudo_biwheel")):
        for R in removable_doubletons(G):
            step = reduce_step(G, R)
            J = step.retract.graph
            RJ = doubleton_through_retract(J, R, G, step.e)
            assert RJ == step.R_after
            found = {canonical_form(x.graph) for x in expansions(J, RJ, G.n)}
            assert canonical_form(G) in found


def test_expansions_are_near_bipartite_bricks():
    J = builtin("c6bar")
    R = removable_doubletons(J)[0]
    out = expansions(J, R, 8)
    assert out
    for x in out:
        assert x.graph.n in (6, 8, 10)
        assert is_brick(x.graph)
        assert make_doubleton(x.graph, *x.R.edges) is not None
        assert is_R_thin(x.graph, x.R, x.e) or x.graph.n == J.n


def _multi_k4_count(max_m: int) -> int:
    """K4 with parallel copies, keeping some pair of opposite edges single so that
    it stays near-bipartite; classes counted up to networkx isomorphism."""
    from itertools import product
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    opposite = [(0, 5), (1, 4), (2, 3)]
    reps: list = []
    for mult in product(range(1, max_m - 4), repeat=6):
        if sum(mult) > max_m or not any(mult[i] == 1 and mult[j] == 1 for i, j in opposite):
            continue
        N = nx.MultiGraph()
        for (u, v), k in zip(pairs, mult):
            N.add_edges_from([(u, v)] * k)
        if not any(nx.is_isomorphic(N, M) for M in reps):
            reps.append(N)
    return len(reps)


def test_small_catalog_counts(catalog8):
    by_n = {}
    for c in catalog8:
        by_n[c.graph.n] = by_n.get(c.graph.n, 0) + 1
    assert by_n[4] == _multi_k4_count(max_m=6 + 4)
    assert len({c.form for c in catalog8}) == len(catalog8)
    assert all(c.excess <= 6 for c in catalog8)


def test_catalog_contains_st8(catalog8):
    forms = {c.form for c in catalog8}
    assert canonical_form(builtin("st8")) in forms


def test_catalog_entries_are_near_bipartite_bricks(catalog8):
    for c in catalog8[:80]:
        assert is_brick(c.graph) and is_near_bipartite(c.graph)
        assert [R.edges for R in c.doubletons] == [R.edges for R in removable_doubletons(c.graph)]


def test_six_vertex_simple_classes_match_independent_enumeration():
    # every simple graph on 6 vertices from the networkx atlas, tested without the library
    want = {canonical_form(build(6, list(N.edges())))
            for N in nx.graph_atlas_g() if N.number_of_nodes() == 6 and _nx_near_bipartite_brick(N)}
    assert len(want) == 3
    brute = brute_force_simple_nb_bricks(6)
    assert set(brute) == want
    mine = {c.form for c in generate_catalog(6) if c.simple and c.graph.n == 6}
    assert mine == want
    assert sorted(G.m for G in brute.values()) == [9, 10, 11]


def test_simple_classes_at_six():
    classes = simple_classes(generate_catalog(6))
    assert sorted(c.graph.n for c in classes.values()) == [4, 6, 6, 6]


def test_save_and_load_round_trip(tmp_path, catalog8):
    small = [c for c in catalog8 if c.graph.n <= 6]
    save_catalog(small, tmp_path)
    back = load_catalog(tmp_path)
    assert [c.form for c in back] == [c.form for c in small]
    assert [c.doubletons for c in back] == [c.doubletons for c in small]
    assert not list(tmp_path.glob(".tmp-*"))


def test_retract_of_reduction_keeps_doubleton():
    G = builtin("st8")
    R = removable_doubletons(G)[1]
    step = reduce_step(G, R)
    assert step.retract.graph == retract(G.delete_edges([step.e])).graph
    assert set(step.R_after.edges) == set(R.edges)
