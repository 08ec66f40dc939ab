from itertools import combinations

import pytest
from hypothesis import assume, given, settings

from brickforge.errors import EvenShore, NotMatchingCovered
from brickforge.graphcore import build, cut_edges, is_bipartite
from brickforge.graphs import builtin
from brickforge.matching import is_brick, is_matching_covered
from brickforge.nearbip import removable_doubletons
from brickforge.tightcut import (
    BRACE,
    BRICK,
    DecompositionResult,
    b_count,
    barrier_cuts,
    decompose,
    find_nontrivial_tight_cut,
    is_near_brick,
    is_tight,
    rank_graph,
    split_along,
    structural_tight_check_bipartite,
    structural_tight_check_nearbip,
    two_separation_cuts,
    unique_brick,
)

from conftest import brute_perfect_matchings, dense_even_graphs


def _brute_tight(G, X, pms):
    C = cut_edges(G, X).edge_ids
    return all(len(M & C) == 1 for M in pms)


def _brute_nontrivial_tight_shores(G):
    pms = brute_perfect_matchings(G)
    rest = G.vertices[1:]
    return [frozenset(X) for k in range(3, G.n - 2, 2) for X in combinations(rest, k)
            if _brute_tight(G, frozenset(X), pms)]


@settings(max_examples=60, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_is_tight_matches_brute_force(G):
    assume(is_matching_covered(G))
    pms = brute_perfect_matchings(G)
    for k in range(1, G.n, 2):
        for X in combinations(G.vertices, k):
            assert is_tight(G, X) == _brute_tight(G, frozenset(X), pms)


@settings(max_examples=60, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_barrier_and_separation_cuts_find_every_nontrivial_cut(G):
    assume(is_matching_covered(G))
    brute = _brute_nontrivial_tight_shores(G)
    found = find_nontrivial_tight_cut(G, exhaustive=False)
    assert (found is None) == (not brute)
    for c in barrier_cuts(G) + two_separation_cuts(G):
        assert is_tight(G, c.shore)
    if not is_bipartite(G):
        assert (not brute) == is_brick(G)


@settings(max_examples=60, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_decomposition_is_order_independent(G):
    assume(is_matching_covered(G))
    ref = decompose(G)
    for seed in range(4):
        d = decompose(G, seed=seed)
        assert d.b == ref.b
        assert d.piece_forms() == ref.piece_forms()
    assert all(tag == (BRACE if is_bipartite(P) else BRICK) for P, tag in ref.pieces)
    if is_bipartite(G):
        assert ref.b == 0


def test_petersen_minus_edge_has_two_bricks():
    G = builtin("petersen")
    for e in G.edge_ids:
        assert b_count(G.delete_edges([e])) == 2


@pytest.mark.parametrize("name", ["k4", "c6bar", "petersen", "st8"])
def test_bricks_decompose_to_themselves(name):
    G = builtin(name)
    d = decompose(G)
    assert d.b == 1 and len(d.pieces) == 1 and d.trace == []


def test_split_along_sizes():
    G = builtin("c6bar")
    R = removable_doubletons(G)[0]
    H = G.delete_edges(R.edges)
    cut = find_nontrivial_tight_cut(H)
    if cut is not None:
        a, b = split_along(H, cut.shore)
        assert a.n + b.n == H.n + 2


def test_st8_minus_e_is_near_brick_of_rank_four():
    G = builtin("st8")
    Ge = G.delete_edges([11])
    assert is_near_brick(Ge)
    assert rank_graph(Ge) == 4
    assert unique_brick(Ge).m == 7


def test_decomposition_round_trip():
    d = decompose(builtin("st8").delete_edges([11]), seed=3)
    assert DecompositionResult.from_dict(d.to_dict()) == d


def test_errors():
    with pytest.raises(EvenShore):
        is_tight(builtin("k4"), {0, 1})
    with pytest.raises(NotMatchingCovered):
        decompose(build(4, [(0, 1), (1, 2), (2, 3)]))
    assert not is_near_brick(build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))


@settings(max_examples=60, deadline=None)
@given(dense_even_graphs(max_n=8))
def test_structural_checks_agree_with_tightness(G):
    assume(is_matching_covered(G))
    odd_shores = [frozenset(X) for k in range(1, G.n, 2) for X in combinations(G.vertices, k)]
    if is_bipartite(G):
        for X in odd_shores:
            assert structural_tight_check_bipartite(G, X) == is_tight(G, X)
        return
    for R in removable_doubletons(G)[:2]:
        for X in odd_shores:
            assert structural_tight_check_nearbip(G, R, X) == is_tight(G, X)
