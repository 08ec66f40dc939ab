from itertools import combinations

import networkx as nx
import pytest
from hypothesis import assume, given, settings

from brickforge.doubleton import Doubleton, check_R_brick, check_R_graph, make_doubleton
from brickforge.errors import (
    BipartiteInput,
    EdgeInDoubleton,
    NotMatchingCovered,
    NotRBrick,
    NotRemovable,
    PreconditionViolated,
)
from brickforge.graphcore import build
from brickforge.graphs import builtin, named_doubletons, named_edge
from brickforge.matching import is_matching_covered
from brickforge.nearbip import (
    R_compatible_edges,
    is_b_invariant,
    is_near_bipartite,
    is_R_compatible,
    is_removable,
    non_removable_witness,
    removable_doubletons,
    removable_edges,
    verify_exchange_bipartite,
    verify_exchange_Rcompatible,
)

from conftest import bipartite_mc_candidates, brute_is_matching_covered, dense_even_graphs, to_nx


def _brute_doubletons(G):
    out = []
    for a, b in combinations(G.edge_ids, 2):
        H = G.delete_edges([a, b])
        N = to_nx(H)
        if not nx.is_bipartite(N) or not brute_is_matching_covered(H):
            continue
        colour = nx.bipartite.color(N)
        (a1, a2), (b1, b2) = G.ends(a), G.ends(b)
        if colour[a1] == colour[a2] and colour[b1] == colour[b2] and colour[a1] != colour[b1]:
            out.append((a, b))
    return out


@settings(max_examples=80, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_removable_edges_match_brute_force(G):
    assume(is_matching_covered(G))
    assert removable_edges(G) == [e for e in G.edge_ids if brute_is_matching_covered(G.delete_edges([e]))]


@settings(max_examples=80, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_doubletons_match_brute_force(G):
    assume(is_matching_covered(G) and not nx.is_bipartite(to_nx(G)))
    found = removable_doubletons(G)
    assert [R.edges for R in found] == _brute_doubletons(G)
    assert is_near_bipartite(G) == bool(found)
    for R in found:
        assert all(x in R.A for x in G.ends(R.alpha))
        assert all(x in R.B for x in G.ends(R.beta))


def test_petersen_every_edge_removable_none_b_invariant():
    G = builtin("petersen")
    assert removable_edges(G) == list(range(15))
    assert not any(is_b_invariant(G, e) for e in G.edge_ids)
    assert not is_near_bipartite(G)


def test_st8_single_removable_edge_two_doubletons():
    G = builtin("st8")
    e = named_edge(G, "e")
    assert removable_edges(G) == [e]
    assert is_b_invariant(G, e)
    want = sorted(tuple(sorted(p)) for p in named_doubletons(G).values())
    assert [R.edges for R in removable_doubletons(G)] == want
    for R in removable_doubletons(G):
        assert R_compatible_edges(G, R) == [e]


@pytest.mark.parametrize("name", ["k4", "c6bar"])
def test_bases_have_three_doubletons(name):
    assert len(removable_doubletons(builtin(name))) == 3


def test_fig3_compatibility_depends_on_doubleton():
    F = builtin("fig3_pseudo_biwheel")
    pairs = named_doubletons(F)
    R, Rp = make_doubleton(F, *pairs["R"]), make_doubleton(F, *pairs["R'"])
    for name in ("e", "f"):
        x = named_edge(F, name)
        assert is_R_compatible(F, Rp, x)
        assert not is_R_compatible(F, R, x)


def test_errors():
    G = builtin("st8")
    R = removable_doubletons(G)[0]
    with pytest.raises(EdgeInDoubleton):
        is_R_compatible(G, R, R.alpha)
    with pytest.raises(NotRemovable):
        is_b_invariant(G, R.alpha)
    C6 = build(6, [(i, (i + 1) % 6) for i in range(6)])
    with pytest.raises(BipartiteInput):
        removable_doubletons(C6)
    with pytest.raises(NotMatchingCovered):
        removable_edges(build(4, [(0, 1), (2, 3)]))


def test_doubleton_checks_and_round_trip():
    G = builtin("st8")
    R = removable_doubletons(G)[0]
    check_R_brick(G, R)
    assert Doubleton.from_dict(R.to_dict()) == R
    assert make_doubleton(G, R.alpha, R.alpha) is None
    C6 = build(6, [(i, (i + 1) % 6) for i in range(6)]).add_edge(0, 3)[0].add_edge(1, 4)[0]
    with pytest.raises(NotRBrick):
        check_R_brick(C6, Doubleton(0, 1, frozenset(), frozenset()))
    check_R_graph(G, R)


@settings(max_examples=80, deadline=None)
@given(bipartite_mc_candidates())
def test_exchange_in_bipartite_graphs(H):
    assume(is_matching_covered(H))
    for e in removable_edges(H):
        He = H.delete_edges([e])
        for f in He.edge_ids:
            if is_removable(He, f):
                assert verify_exchange_bipartite(H, e, f)


@settings(max_examples=80, deadline=None)
@given(bipartite_mc_candidates())
def test_non_removable_witness(H):
    assume(is_matching_covered(H))
    for e in H.edge_ids:
        w = non_removable_witness(H, e)
        assert (w is None) == is_removable(H, e)
        if w is not None:
            A0, A1, B0, B1 = map(set, w)
            assert len(A0) == len(B0)
            between = [x for x, u, v in H.edges if (u in B0 and v in A1) or (u in A1 and v in B0)]
            assert between == [e]


def test_exchange_precondition():
    H = build(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    with pytest.raises(PreconditionViolated):
        verify_exchange_bipartite(H, 0, 0)


def test_exchange_R_compatible_on_fig3():
    F = builtin("fig3_pseudo_biwheel")
    Rp = make_doubleton(F, *named_doubletons(F)["R'"])
    compat = R_compatible_edges(F, Rp)
    assert compat
    for e in compat:
        Fe = F.delete_edges([e])
        for f in Fe.edge_ids:
            if f not in Rp.edges and is_R_compatible(Fe, Rp, f):
                assert verify_exchange_Rcompatible(F, Rp, e, f)
