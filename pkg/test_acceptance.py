"""
End-to-end checks of the regularity statements on small family members
"""

import itertools
import json
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from bei.calculations.cm_block import b_invariant, best_witness, block_count, enumerate_cmb, is_chordal, is_cm_block_graph, s_of_g
from bei.calculations.groebner import (
    enumerate_admissible_paths,
    initial_ideal,
    paper_matching,
    path_monomial,
    verify_induced_matching,
    x_var,
    y_var,
)
from bei.calculations.homology import SimplicialView, reduced_euler_characteristic, reduced_homology_dims
from bei.calculations.monomial_reg import regularity_bei, regularity_via_gluing
from bei.graphs.families import (
    ChainSpec,
    Join,
    StarParams,
    chain_layout,
    chain_of_cycles,
    first_cut_vertex,
    star_product,
    whiskered_chain,
    whiskered_complete,
    whiskered_star,
)
from bei.graphs.generators import random_cm_block_graph, random_connected_graph
from bei.graphs.graph_core import (
    Graph,
    complete_graph,
    cone,
    cycle_graph,
    cycle_rank,
    disjoint_union,
    glue,
    maximal_cliques,
    neighbor_completion,
    path_graph,
)
from bei.integrations.buchberger import buchberger_oracle
from bei.services.regularity import RegularityService

CORPUS = json.loads((Path(__file__).parent / "data" / "chain_corpus.json").read_text())
CHAINS = [ChainSpec.from_dict(entry) for entry in CORPUS["chains"]]


def literal_cm_block(G):
    """Chordal, no two maximal cliques sharing an edge, every vertex in at most two of them."""
    cliques = maximal_cliques(G)
    if not is_chordal(G):
        return False
    if any(len(a & b) > 1 for a, b in itertools.combinations(cliques, 2)):
        return False
    return all(sum(v in c for c in cliques) <= 2 for v in G.vertices)


# ============================================================================
# FAMILIES
# ============================================================================


def test_small_chains():
    assert chain_of_cycles(ChainSpec(("C4",))) == Graph.from_edges(4, [(1, 2), (1, 3), (3, 4), (2, 4)])
    assert cycle_rank(chain_of_cycles(ChainSpec(("C4",)))) == 1
    diamond = chain_of_cycles(ChainSpec(("K3", "C3"), (Join(),)))
    assert nx.is_isomorphic(diamond.nx_graph, nx.Graph([(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]))
    paw = whiskered_chain(ChainSpec(("K3",), (), (1,)))
    assert paw.n == 4 and paw.degree(4) == 1


def test_chain_of_four_cycles():
    spec = ChainSpec(("C4", "C3", "C4", "C3"), (Join(), Join(w_merge=True), Join()))
    assert cycle_rank(chain_of_cycles(spec)) == 4


def test_bare_stars():
    assert nx.is_isomorphic(star_product(StarParams(2, 2, 2)).nx_graph, nx.cycle_graph(4))
    prism = star_product(StarParams(3, 3, 3))
    assert len(prism.edges) == 9
    assert nx.is_isomorphic(prism.nx_graph, nx.circular_ladder_graph(3))
    assert whiskered_star(StarParams(3, 3, 3)).n == 10


# ============================================================================
# CM BLOCK GRAPHS AND b(G)
# ============================================================================


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cm_block_criterion_matches_literal_check(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        G = Graph.from_edges(n, [pair for k, pair in enumerate(pairs) if mask >> k & 1])
        assert is_cm_block_graph(G) == literal_cm_block(G)


def test_cm_block_criterion_on_larger_random_graphs():
    rng = np.random.default_rng(17)
    for _ in range(40):
        G = random_connected_graph(rng, int(rng.integers(6, 8)), density=float(rng.uniform(0.2, 0.5)))
        assert is_cm_block_graph(G) == literal_cm_block(G)
    assert is_cm_block_graph(glue(complete_graph(3), 1, complete_graph(3), 1))


def test_general_mode_witnesses():
    witness = best_witness(complete_graph(3), "general")
    assert witness.removed == () and witness.block_count == 1
    witness = best_witness(cycle_graph(4), "general")
    assert witness.removed == (1,) and witness.block_count == 2
    assert nx.is_isomorphic(witness.subgraph.nx_graph, nx.path_graph(3))
    assert b_invariant(complete_graph(5), "general") == 1
    assert b_invariant(whiskered_star(StarParams(2, 2, 2))) == 3


def test_segments_with_one_cut_vertex():
    assert s_of_g(ChainSpec(("K4",), (), (1,))) == [1]
    assert s_of_g(ChainSpec(("K3", "C3"), (Join(),), (2,))) == [1, 2]


def test_shared_cut_vertices_are_removed(seven_segment_chain):
    for spec in CHAINS + [seven_segment_chain]:
        G = whiskered_chain(spec)
        layout = chain_layout(spec)
        in_s = set(s_of_g(spec))
        must_remove = {
            v for v in spec.whiskers if len([i for i in layout.segments_containing(v) if i in in_s]) >= 2
        }
        witnesses = enumerate_cmb(G)
        top = witnesses[0].block_count
        for witness in (w for w in witnesses if w.block_count == top):
            assert must_remove <= set(witness.removed)


def test_completion_at_first_cut_vertex_lowers_b(seven_segment_chain):
    G = whiskered_chain(seven_segment_chain)
    w = first_cut_vertex(seven_segment_chain)
    assert b_invariant(neighbor_completion(G, w)) < b_invariant(G)


# ============================================================================
# INITIAL IDEALS AND MATCHINGS
# ============================================================================


def test_triangle_ideal_and_matching(k3):
    I = initial_ideal(k3)
    assert I.to_dict()["generators"] == [["x1", "y2"], ["x1", "y3"], ["x2", "y3"]]
    first, _, last = I.generators
    assert not verify_induced_matching(I, [first, last])


def test_edge_ideal_is_principal():
    assert buchberger_oracle(complete_graph(2)).to_dict() == {"n": 2, "generators": [["x1", "y2"]]}


def test_path_monomials_hold_their_endpoints():
    rng = np.random.default_rng(23)
    for _ in range(10):
        G = random_connected_graph(rng, 7, density=0.4)
        for path in enumerate_admissible_paths(G):
            mono = path_monomial(path)
            assert x_var(path.i, G.n) in mono and y_var(path.j, G.n) in mono
            assert len(mono) == len(path.vertices)


def test_explicit_matching_of_smallest_star():
    p = StarParams(2, 2, 2, "groebner")
    n = p.vertex_count
    expected = [{x_var(1, n), y_var(2, n)}, {x_var(3, n), y_var(5, n)}, {x_var(4, n), y_var(6, n)}]
    assert paper_matching(p) == expected


def test_restrictions_satisfy_euler_poincare():
    I = initial_ideal(cycle_graph(5))
    view = SimplicialView(I.num_vars, I.masks)
    rng = np.random.default_rng(29)
    for sigma in rng.integers(1, 1 << I.num_vars, size=25):
        faces = view.restriction_faces(int(sigma))
        dims = reduced_homology_dims(faces)
        assert sum((-1) ** (k - 1) * h for k, h in enumerate(dims)) == reduced_euler_characteristic(faces)


def test_hollow_square():
    square = [0, 0b1, 0b10, 0b100, 0b1000, 0b11, 0b110, 0b1100, 0b1001]
    assert reduced_homology_dims(square) == [0, 0, 1]


# ============================================================================
# REGULARITY
# ============================================================================


@pytest.mark.parametrize(
    "G,expected",
    [
        (complete_graph(2), 1),
        (complete_graph(5), 1),
        (glue(complete_graph(3), 1, complete_graph(3), 1), 2),
        (path_graph(5), 4),
    ],
)
def test_closed_form_examples(config, G, expected):
    assert RegularityService(config).compute(G).value == expected


def test_gluing_of_path():
    report = regularity_via_gluing(path_graph(5))
    assert report.value == 4 and len(report.details["factors"]) == 4


def test_whiskered_complete_graphs(config):
    for anchors in ([1], [1, 2], [1, 2, 3], [1, 2, 3, 4]):
        G = whiskered_complete(4, anchors)
        assert RegularityService(config).compute(G).value == len(anchors) + 1
    assert regularity_bei(whiskered_complete(4, [1, 2, 3])).value == 4


@pytest.mark.parametrize("H", [path_graph(3), path_graph(4), glue(complete_graph(3), 1, complete_graph(2), 1)])
def test_cone_over_block_graph_and_point(H):
    G = cone(disjoint_union(H, Graph(1, frozenset())))
    assert regularity_bei(G).value == b_invariant(G)


@pytest.mark.parametrize("spec", CHAINS, ids=[entry["name"] for entry in CORPUS["chains"]])
def test_chain_regularity_is_b(spec):
    G = whiskered_chain(spec)
    assert regularity_bei(G).value == b_invariant(G)


@pytest.mark.slow
def test_closed_form_on_larger_block_graphs():
    rng = np.random.default_rng(31)
    for _ in range(10):
        H = random_cm_block_graph(rng, 10)
        assert regularity_bei(H).value == block_count(H)
