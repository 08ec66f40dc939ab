import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brickforge.errors import EmptyOrFullShore, GraphFormatError, LoopRejected, TooLarge, UnknownEdge, UnknownVertex
from brickforge.graphcore import (
    SIMPLE_UNDERLYING,
    WITH_MULTIPLICITY,
    Multigraph,
    bipartition,
    build,
    canonical_form,
    canonical_graph,
    canonical_labeling,
    contract_shore,
    cut_edges,
    format_graph,
    is_isomorphic,
    is_three_connected,
    parse_graph,
    read_graph,
    write_graph,
)
from brickforge.graphs import builtin

from conftest import multigraphs, to_nx


def test_build_assigns_ids_in_order():
    G = build(3, [(0, 1), (1, 2), (1, 0)])
    assert G.edge_ids == (0, 1, 2)
    assert G.ends(2) == (0, 1)
    assert G.multiplicity(0, 1) == 2
    assert not G.is_simple()


def test_build_rejects_loops_and_bad_vertices():
    with pytest.raises(LoopRejected):
        build(3, [(1, 1)])
    with pytest.raises(UnknownVertex):
        build(3, [(0, 3)])


def test_unknown_edge():
    G = build(2, [(0, 1)])
    with pytest.raises(UnknownEdge):
        G.ends(5)
    with pytest.raises(UnknownEdge):
        G.delete_edges([5])


def test_delete_edges_keeps_other_ids():
    G = builtin("k4").delete_edges([2])
    assert G.edge_ids == (0, 1, 3, 4, 5)


def test_cut_edges_of_a_vertex_is_its_star():
    G = builtin("petersen")
    for v in G.vertices:
        assert cut_edges(G, {v}).edge_ids == frozenset(e for e, _ in G.incident(v))


def test_cut_rejects_empty_and_full_shores():
    G = builtin("k4")
    with pytest.raises(EmptyOrFullShore):
        cut_edges(G, set())
    with pytest.raises(EmptyOrFullShore):
        cut_edges(G, G.vertex_set)


def test_contract_shore_keeps_cut_ids_and_records_members():
    G = builtin("c6bar")
    X = frozenset({0, 1, 2})
    Q = contract_shore(G, X)
    label = Q.vertices[-1]
    assert Q.n == 4
    assert set(Q.edge_ids) == set(G.edge_ids) - {0, 1, 2}
    assert Q.annotations["provenance"][label] == (0, 1, 2)
    assert Q.degree(label) == 3


def test_bipartition():
    assert bipartition(builtin("k4")) is None
    A, B = bipartition(build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert A == {0, 2} and B == {1, 3}


@pytest.mark.parametrize("name", ["k4", "c6bar", "petersen", "st8", "fig2_brick", "fig3_pseudo_biwheel"])
def test_builtins_are_three_connected(name):
    G = builtin(name)
    assert is_three_connected(G)
    assert nx.node_connectivity(nx.Graph(to_nx(G))) >= 3


def test_cycle_is_not_three_connected():
    assert not is_three_connected(build(6, [(i, (i + 1) % 6) for i in range(6)]))


@settings(max_examples=150, deadline=None)
@given(multigraphs(min_n=4, max_n=8))
def test_three_connected_matches_networkx(G):
    simple = nx.Graph(to_nx(G))
    assert is_three_connected(G) == (nx.is_connected(simple) and nx.node_connectivity(simple) >= 3)


@settings(max_examples=150, deadline=None)
@given(multigraphs(max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(G, rnd):
    perm = list(range(100, 100 + G.n))
    rnd.shuffle(perm)
    H = G.relabel(dict(zip(G.vertices, perm)))
    assert canonical_form(G) == canonical_form(H)
    assert canonical_form(G, SIMPLE_UNDERLYING) == canonical_form(H, SIMPLE_UNDERLYING)


@settings(max_examples=200, deadline=None)
@given(multigraphs(max_n=6), multigraphs(max_n=6))
def test_isomorphism_matches_networkx(G, H):
    same = nx.is_isomorphic(to_nx(G), to_nx(H))
    assert is_isomorphic(G, H) == same
    assert is_isomorphic(G, H, SIMPLE_UNDERLYING) == nx.is_isomorphic(nx.Graph(to_nx(G)), nx.Graph(to_nx(H)))


def test_multiplicity_separates_forms():
    k4 = builtin("k4")
    doubled, _ = k4.add_edge(0, 1)
    assert canonical_form(doubled) != canonical_form(k4)
    assert canonical_form(doubled, SIMPLE_UNDERLYING) == canonical_form(k4, SIMPLE_UNDERLYING)


def test_canonical_labeling_maps_onto_positions():
    G = builtin("st8")
    form, pos = canonical_labeling(G)
    assert sorted(pos.values()) == list(range(G.n))
    assert form.mode == WITH_MULTIPLICITY
    assert len(form.digest) == 16
    C = canonical_graph(G)
    assert canonical_form(C) == form


def test_canonical_form_size_limit():
    big = build(18, [(i, (i + 1) % 18) for i in range(18)])
    with pytest.raises(TooLarge):
        canonical_form(big)


def test_text_round_trip(tmp_path):
    G = builtin("fig2_brick")
    path = tmp_path / "g.txt"
    write_graph(G, path, comment="fig2")
    H = read_graph(path)
    assert format_graph(H) == format_graph(G)
    assert H.edges == G.edges


@settings(max_examples=100, deadline=None)
@given(multigraphs())
def test_parse_format_round_trip(G):
    assert parse_graph(format_graph(G)).edges == G.edges


@pytest.mark.parametrize("text", ["", "3\n", "2 1\n0 5\n", "2 2\n0 1\n", "x y\n", "2 1\n1 1\n"])
def test_parse_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_components_after_removal():
    G = build(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    comps = G.components(removed=(2,))
    assert sorted(map(sorted, comps)) == [[0, 1], [3, 4]]
    assert isinstance(G, Multigraph)
