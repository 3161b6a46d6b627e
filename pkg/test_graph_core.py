"""
Tests for the graph carrier and structural operations
"""

import itertools

import networkx as nx
import numpy as np
import pytest

from bei.errors import CapExceededError, GraphError
from bei.graphs.families import StarParams, chain_of_cycles, whiskered_chain, whiskered_complete, whiskered_star
from bei.graphs.generators import random_connected_graph, shuffle_labels
from bei.graphs.graph_core import (
    Graph,
    blocks,
    complete_graph,
    components,
    cone,
    cut_vertices,
    cycle_graph,
    cycle_rank,
    decompose,
    delete_vertices,
    disjoint_union,
    glue,
    induced_subgraph,
    is_free_vertex,
    maximal_cliques,
    neighbor_completion,
    path_graph,
    whisker,
)


def all_graphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pair for k, pair in enumerate(pairs) if mask >> k & 1])


def brute_force_cut_vertices(G):
    base = len(components(G))
    found = set()
    for v in G.vertices:
        rest = delete_vertices(G, [v])
        if len(components(rest)) > base - (1 if G.degree(v) == 0 else 0):
            found.add(v)
    return found


def original_edges(H):
    return {tuple(sorted((H.label(u), H.label(v)))) for u, v in H.edges}


@pytest.fixture
def star_433():
    return whiskered_star(StarParams(4, 3, 3))


# ============================================================================
# CARRIER
# ============================================================================


def test_edges_are_normalized():
    G = Graph.from_edges(3, [(2, 1), (1, 2), (3, 2)])
    assert G.edges == frozenset({(1, 2), (2, 3)})


def test_rejects_self_loops_and_out_of_range():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 4)])


def test_vertex_cap():
    with pytest.raises(CapExceededError) as info:
        Graph.from_edges(65, [])
    assert info.value.exit_code == 3
    assert "65" in str(info.value)


def test_json_output_sorts_edges():
    G = Graph.from_edges(3, [(2, 3), (1, 3)])
    assert G.to_dict() == {"n": 3, "edges": [[1, 3], [2, 3]]}
    assert Graph.parse(G.to_json()) == G


def test_edge_list_text():
    G = Graph.parse("# a path\n1 2\n\n2 3  # middle\n")
    assert G == path_graph(3)
    with pytest.raises(GraphError):
        Graph.parse("1 2 3\n")


# ============================================================================
# INDUCED SUBGRAPHS
# ============================================================================


def test_induced_subgraph_of_c4_is_a_path(c4):
    assert induced_subgraph(c4, {1, 2, 3}) == path_graph(3)


def test_induced_subgraph_of_k4():
    assert induced_subgraph(complete_graph(4), {1, 2}) == complete_graph(2)


def test_induced_subgraph_keeps_label_map(star_433):
    H = delete_vertices(star_433, [2])
    assert H.n == 10
    edges = original_edges(H)
    assert (1, 5) in edges
    assert not any(2 in e for e in edges)


def test_induced_subgraph_rejects_bad_vertex(c4):
    with pytest.raises(GraphError):
        induced_subgraph(c4, {1, 9})


# ============================================================================
# CUT VERTICES AND BLOCKS
# ============================================================================


def test_cut_vertices_examples(p3, star_433):
    assert cut_vertices(p3) == {2}
    assert cut_vertices(complete_graph(4)) == set()
    assert cut_vertices(star_433) == {1, 2, 5, 6}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_cut_vertices_match_deletion_oracle(n):
    for G in all_graphs(n):
        assert cut_vertices(G) == brute_force_cut_vertices(G)


def test_cut_vertices_match_deletion_oracle_random():
    rng = np.random.default_rng(7)
    for _ in range(30):
        G = random_connected_graph(rng, 8, density=0.3)
        assert cut_vertices(G) == brute_force_cut_vertices(G)


def test_blocks_examples(c4):
    decomposition = blocks(path_graph(4))
    assert [len(b) for b in decomposition.blocks] == [2, 2, 2]
    assert [len(b) for b in blocks(c4).blocks] == [4]


def test_seven_segment_blocks(seven_segment_chain):
    G = whiskered_chain(seven_segment_chain)
    sizes = sorted(len(b) for b in blocks(G).blocks)
    assert sizes == [2, 2, 2, 2, 12]


@pytest.mark.parametrize("n", [4, 5])
def test_blocks_partition_edges(n):
    for G in all_graphs(n):
        decomposition = blocks(G)
        counted = [e for k in range(len(decomposition.blocks)) for e in decomposition.block_edges(G, k)]
        assert len(counted) == len(G.edges)
        assert set(counted) == G.edges


def test_maximal_cliques(k3, p3, paw):
    assert maximal_cliques(k3) == [{1, 2, 3}]
    assert maximal_cliques(p3) == [{1, 2}, {2, 3}]
    assert maximal_cliques(paw) == [{1, 2, 3}, {3, 4}]


# ============================================================================
# FREE VERTICES, COMPLETION, CONE
# ============================================================================


def test_free_vertices(p3, paw):
    assert is_free_vertex(paw, 4)
    assert not is_free_vertex(p3, 2)
    assert all(is_free_vertex(complete_graph(5), v) for v in range(1, 6))
    with pytest.raises(GraphError):
        is_free_vertex(p3, 4)


def test_neighbor_completion_of_path(p3, k3):
    assert neighbor_completion(p3, 2) == k3
    assert neighbor_completion(k3, 1) == k3


def test_neighbor_completion_at_star_cut_vertex(star_433):
    Gv = neighbor_completion(star_433, 2)
    for edge in [(6, 9), (3, 9), (1, 9), (4, 9), (3, 6), (4, 6), (1, 6)]:
        assert Gv.has_edge(*edge)
    assert star_433.edges <= Gv.edges
    assert is_free_vertex(Gv, 2)


def test_cone():
    assert cone(Graph(2, frozenset())) == Graph.from_edges(3, [(1, 3), (2, 3)])
    assert cone(complete_graph(3)) == complete_graph(4)
    wheel = cone(cycle_graph(4))
    assert wheel.n == 5 and len(wheel.edges) == 8
    assert nx.is_isomorphic(wheel.nx_graph, nx.wheel_graph(5))


# ============================================================================
# GLUING AND DECOMPOSITION
# ============================================================================


def test_decompose_examples(paw):
    assert sorted((F.n, len(F.edges)) for F in decompose(path_graph(4))) == [(2, 1)] * 3
    assert decompose(complete_graph(4)) == [complete_graph(4)]
    assert sorted(F.n for F in decompose(paw)) == [2, 3]


def test_decompose_rejects_disconnected():
    with pytest.raises(GraphError):
        decompose(Graph(2, frozenset()))


def test_decompose_glues_back():
    G = whiskered_complete(4, [1, 2])
    factors = decompose(G)
    assert sorted(F.n for F in factors) == [2, 2, 4]
    assert set().union(*(original_edges(F) for F in factors)) == G.edges


def test_decompose_is_label_independent():
    rng = np.random.default_rng(11)
    G = glue(whiskered_complete(4, [1, 2]), 5, complete_graph(3), 1)
    shapes = sorted((F.n, len(F.edges)) for F in decompose(G))
    assert shapes == [(2, 1), (2, 1), (3, 3), (4, 6)]
    shuffled = shuffle_labels(G, rng)
    assert sorted((F.n, len(F.edges)) for F in decompose(shuffled)) == shapes


def test_glue_requires_free_vertices(c4, k3):
    with pytest.raises(GraphError):
        glue(c4, 1, k3, 1)
    G = glue(k3, 1, k3, 2)
    assert G.n == 5 and cut_vertices(G) == {1}


def test_disjoint_union(k3, p3):
    G = disjoint_union(k3, p3)
    assert G.n == 6 and len(components(G)) == 2


# ============================================================================
# CYCLE RANK AND WHISKERS
# ============================================================================


def test_cycle_rank(c4, seven_segment_chain):
    assert cycle_rank(path_graph(5)) == 0
    assert cycle_rank(c4) == 1
    assert cycle_rank(chain_of_cycles(seven_segment_chain)) == 9
    with pytest.raises(GraphError):
        cycle_rank(Graph(2, frozenset()))


def test_cycle_rank_is_additive_over_blocks(seven_segment_chain):
    G = whiskered_chain(seven_segment_chain)
    assert sum(cycle_rank(induced_subgraph(G, b)) for b in blocks(G).blocks) == cycle_rank(G)


def test_whisker(k3, paw, c4):
    assert whisker(k3, [3]) == paw
    G = whisker(c4, [1, 3])
    assert G.n == 6 and G.has_edge(1, 5) and G.has_edge(3, 6)
    with pytest.raises(GraphError):
        whisker(k3, [1, 1])
    with pytest.raises(GraphError):
        whisker(k3, [4])
