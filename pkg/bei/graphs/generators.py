"""
Seeded random graphs for property checks
"""

import itertools
import logging
from typing import List

import numpy as np

from .graph_core import Graph, complete_graph, glue, is_free_vertex

logger = logging.getLogger(__name__)


def shuffle_labels(G: Graph, rng: np.random.Generator) -> Graph:
    perm = rng.permutation(G.n) + 1
    return Graph.from_edges(G.n, [(int(perm[u - 1]), int(perm[v - 1])) for u, v in G.edges])


def random_cm_block_graph(rng: np.random.Generator, max_vertices: int, max_clique: int = 4) -> Graph:
    """Cliques glued one at a time at vertices that lie in a single clique so far."""
    first = int(rng.integers(2, min(max_clique, max_vertices) + 1))
    n = first
    edges = set(complete_graph(first).edges)
    membership = {v: 1 for v in range(1, n + 1)}
    while n < max_vertices and rng.random() < 0.85:
        open_vertices = sorted(v for v, count in membership.items() if count < 2)
        if not open_vertices:
            break
        anchor = int(rng.choice(open_vertices))
        size = int(rng.integers(2, min(max_clique, max_vertices - n + 1) + 1))
        clique = [anchor] + list(range(n + 1, n + size))
        edges |= {(a, b) for a, b in itertools.combinations(clique, 2)}
        membership[anchor] += 1
        for v in clique[1:]:
            membership[v] = 1
        n += size - 1
    return shuffle_labels(Graph(n, frozenset(edges)), rng)


def random_connected_graph(rng: np.random.Generator, n: int, density: float = 0.5) -> Graph:
    """Erdős–Rényi samples redrawn until connected."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    while True:
        keep = rng.random(len(pairs)) < density
        G = Graph.from_edges(n, [pair for pair, k in zip(pairs, keep) if k])
        if G.is_connected():
            return G


def _free_vertices(G: Graph) -> List[int]:
    return [v for v in G.vertices if is_free_vertex(G, v)]


def random_decomposable_graph(rng: np.random.Generator, max_vertices: int) -> Graph:
    """Two connected pieces glued at a vertex free in both."""
    while True:
        left_n = int(rng.integers(2, max_vertices - 1))
        right_n = int(rng.integers(2, max_vertices - left_n + 2))
        left = random_connected_graph(rng, left_n)
        right = random_connected_graph(rng, right_n)
        left_free, right_free = _free_vertices(left), _free_vertices(right)
        if left_free and right_free:
            G = glue(left, int(rng.choice(left_free)), right, int(rng.choice(right_free)))
            return shuffle_labels(G, rng)
