import networkx as nx
import pytest
from hypothesis import strategies as st

from brickforge.generator import generate_catalog
from brickforge.graphcore import Multigraph, build
from brickforge.graphs import builtin


def to_nx(G: Multigraph) -> nx.MultiGraph:
    N = nx.MultiGraph()
    N.add_nodes_from(G.vertices)
    for eid, u, v in G.edges:
        N.add_edge(u, v, key=eid)
    return N


def nx_has_perfect_matching(G: Multigraph) -> bool:
    simple = nx.Graph(to_nx(G))
    return 2 * len(nx.max_weight_matching(simple, maxcardinality=True)) == G.n


@st.composite
def multigraphs(draw, min_n=2, max_n=8, max_extra=3):
    """Small loopless multigraphs on 0..n-1 with a few parallel copies."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs), unique=True)) if pairs else []
    extra = draw(st.lists(st.sampled_from(chosen), max_size=max_extra)) if chosen else []
    return build(n, chosen + extra)


@pytest.fixture(scope="session")
def st8():
    return builtin("st8")


@pytest.fixture(scope="session")
def catalog8():
    return generate_catalog(8, max_excess=6)


def brute_perfect_matchings(G: Multigraph) -> list[frozenset]:
    """Every n/2-subset of edges covering all vertices; independent of the library."""
    from itertools import combinations
    out = []
    for M in combinations(G.edges, G.n // 2):
        ends = [x for _, u, v in M for x in (u, v)]
        if len(set(ends)) == G.n:
            out.append(frozenset(eid for eid, _, _ in M))
    return out


@st.composite
def dense_even_graphs(draw, min_n=4, max_n=8):
    """Unions of a few random perfect matchings, so every edge is admissible;
    only connectivity can fail, which is rare."""
    n = draw(st.sampled_from([k for k in range(min_n, max_n + 1, 2)]))
    k = draw(st.integers(2, 4))
    edges = []
    for _ in range(k):
        order = draw(st.permutations(range(n)))
        edges += [tuple(sorted(order[i:i + 2])) for i in range(0, n, 2)]
    return build(n, edges)


@st.composite
def bipartite_mc_candidates(draw, min_k=2, max_k=4):
    """Unions of random perfect matchings between {0..k-1} and {k..2k-1}."""
    k = draw(st.integers(min_k, max_k))
    edges = []
    for _ in range(draw(st.integers(2, 4))):
        perm = draw(st.permutations(range(k, 2 * k)))
        edges += list(zip(range(k), perm))
    return build(2 * k, edges)


def brute_is_matching_covered(G: Multigraph) -> bool:
    if G.n < 2 or G.n % 2 or not nx.is_connected(to_nx(G)):
        return False
    pms = brute_perfect_matchings(G)
    return bool(pms) and set().union(*pms) == set(G.edge_ids)
