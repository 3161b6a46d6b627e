"""
Labeled simple graphs and the structural operations the regularity
computations rely on.

Vertices are the integers 1..n. Constructions that relabel (induced
subgraphs, decomposition factors) keep a label map back to the vertex
names of the graph they came from, because admissible paths and initial
ideals depend on labels and not only on the isomorphism type.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import CapExceededError, GraphError

logger = logging.getLogger(__name__)

MAX_VERTICES = 64
MAX_CLIQUE_VERTICES = 64

Edge = Tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple graph on vertices 1..n

    ``labels[i - 1]`` is the name vertex ``i`` had in the graph this one was
    derived from; an empty tuple means the identity map. Labels do not take
    part in equality.
    """

    n: int
    edges: FrozenSet[Edge]
    labels: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        if self.n > MAX_VERTICES:
            raise CapExceededError("graph vertex cap", MAX_VERTICES, self.n)
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= self.n:
                    raise GraphError(f"edge {{{u},{v}}} has endpoint {w} outside 1..{self.n}")
            normalized.add(_normalize_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.labels and len(self.labels) != self.n:
            raise GraphError(f"label map has {len(self.labels)} entries for {self.n} vertices")
        object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: Sequence[int] = ()) -> "Graph":
        return cls(n, frozenset((int(e[0]), int(e[1])) for e in edges), tuple(labels))

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        """Neighbour sets indexed by vertex (index 0 unused)."""
        nbrs: List[set] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> FrozenSet[int]:
        self.check_vertex(v)
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def label(self, v: int) -> int:
        self.check_vertex(v)
        return self.labels[v - 1] if self.labels else v

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} outside 1..{self.n}")

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def is_connected(self) -> bool:
        return self.n <= 1 or nx.is_connected(self.nx_graph)

    def relabeled(self, labels: Sequence[int]) -> "Graph":
        return Graph(self.n, self.edges, tuple(labels))

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "Graph":
        try:
            n = int(data["n"])
            edges = [(int(e[0]), int(e[1])) for e in data["edges"]]
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise GraphError(f"graph JSON needs 'n' and 'edges' as [[u, v], ...]: {e}") from None
        return cls.from_edges(n, edges)

    @classmethod
    def from_edge_list_text(cls, text: str) -> "Graph":
        """Parse one "u v" pair per line; blank lines and '#' comments are skipped."""
        edges = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise GraphError(f"line {lineno}: vertices must be integers") from None
        n = max((max(e) for e in edges), default=0)
        return cls.from_edges(n, edges)

    @classmethod
    def parse(cls, text: str) -> "Graph":
        """Accept graph JSON or a plain-text edge list."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                return cls.from_dict(json.loads(stripped))
            except json.JSONDecodeError as e:
                raise GraphError(f"invalid graph JSON: {e}") from None
        return cls.from_edge_list_text(text)


# ----------------------------------------------------------------------
# constructors used throughout the tests and families
# ----------------------------------------------------------------------


def complete_graph(k: int) -> Graph:
    return Graph.from_edges(k, itertools.combinations(range(1, k + 1), 2))


def path_graph(k: int) -> Graph:
    return Graph.from_edges(k, [(i, i + 1) for i in range(1, k)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {k}")
    return Graph.from_edges(k, [(i, i % k + 1) for i in range(1, k + 1)])


# ----------------------------------------------------------------------
# operations
# ----------------------------------------------------------------------


def induced_subgraph(G: Graph, T: Iterable[int]) -> Graph:
    """G[T], relabeled 1..|T| in increasing order of the kept vertices."""
    kept = sorted(set(T))
    for v in kept:
        G.check_vertex(v)
    index = {v: i for i, v in enumerate(kept, start=1)}
    edges = [(index[u], index[v]) for u, v in G.edges if u in index and v in index]
    return Graph.from_edges(len(kept), edges, [G.label(v) for v in kept])


def delete_vertices(G: Graph, W: Iterable[int]) -> Graph:
    """G∖W as an induced subgraph."""
    removed = set(W)
    for v in removed:
        G.check_vertex(v)
    return induced_subgraph(G, [v for v in G.vertices if v not in removed])


def components(G: Graph) -> List[FrozenSet[int]]:
    """Connected components ordered by their smallest vertex."""
    comps = [frozenset(c) for c in nx.connected_components(G.nx_graph)]
    return sorted(comps, key=min)


def cut_vertices(G: Graph) -> FrozenSet[int]:
    return frozenset(nx.articulation_points(G.nx_graph))


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: Tuple[FrozenSet[int], ...]
    cut_vertices: FrozenSet[int]

    def block_edges(self, G: Graph, index: int) -> List[Edge]:
        block = self.blocks[index]
        return [e for e in G.sorted_edges() if e[0] in block and e[1] in block]


def blocks(G: Graph) -> BlockDecomposition:
    """Biconnected components; a bridge is a two-vertex block."""
    found = sorted((frozenset(b) for b in nx.biconnected_components(G.nx_graph)), key=lambda b: sorted(b))
    return BlockDecomposition(tuple(found), cut_vertices(G))


def maximal_cliques(G: Graph) -> List[FrozenSet[int]]:
    if G.n > MAX_CLIQUE_VERTICES:
        raise CapExceededError("maximal clique enumeration vertex cap", MAX_CLIQUE_VERTICES, G.n)
    cliques = [frozenset(c) for c in nx.find_cliques(G.nx_graph)]
    return sorted(cliques, key=lambda c: sorted(c))


def is_clique(G: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(G.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def is_free_vertex(G: Graph, v: int) -> bool:
    return is_clique(G, G.neighbors(v))


def neighbor_completion(G: Graph, v: int) -> Graph:
    """G_v: G plus every edge between two neighbours of v."""
    nbrs = sorted(G.neighbors(v))
    added = itertools.combinations(nbrs, 2)
    return Graph(G.n, G.edges | frozenset(added), G.labels)


def cone(G: Graph, apex_label: Optional[int] = None) -> Graph:
    """cone(v, G): a fresh vertex n+1 adjacent to every vertex of G."""
    apex = G.n + 1
    edges = set(G.edges) | {(v, apex) for v in G.vertices}
    labels: Tuple[int, ...] = ()
    if G.labels or apex_label is not None:
        base = [G.label(v) for v in G.vertices]
        labels = tuple(base) + (apex_label if apex_label is not None else max(base, default=0) + 1,)
    return Graph(apex, frozenset(edges), labels)


def whisker(G: Graph, anchors: Sequence[int]) -> Graph:
    """Attach a pendant vertex to each anchor; leaves are n+1, n+2, ... in anchor order."""
    if len(set(anchors)) != len(anchors):
        raise GraphError(f"duplicate whisker anchor in {list(anchors)}")
    for w in anchors:
        G.check_vertex(w)
    edges = set(G.edges)
    for offset, w in enumerate(anchors, start=1):
        edges.add((w, G.n + offset))
    labels: Tuple[int, ...] = ()
    if G.labels:
        top = max(G.labels)
        labels = G.labels + tuple(top + i for i in range(1, len(anchors) + 1))
    return Graph(G.n + len(anchors), frozenset(edges), labels)


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    shift = G1.n
    edges = set(G1.edges) | {(u + shift, v + shift) for u, v in G2.edges}
    return Graph(G1.n + G2.n, frozenset(edges))


def glue(G1: Graph, v1: int, G2: Graph, v2: int) -> Graph:
    """
    Gluing of G1 and G2 identifying v1 with v2

    Both vertices must be free in their graphs. G1 keeps its labels 1..n1;
    the remaining vertices of G2 follow in increasing order.
    """
    if not is_free_vertex(G1, v1) or not is_free_vertex(G2, v2):
        raise GraphError(f"gluing vertex must be free on both sides ({v1} in G1, {v2} in G2)")
    mapping = {v2: v1}
    nxt = G1.n
    for v in G2.vertices:
        if v != v2:
            nxt += 1
            mapping[v] = nxt
    edges = set(G1.edges) | {(mapping[u], mapping[v]) for u, v in G2.edges}
    return Graph(nxt, frozenset(edges))


def cycle_rank(G: Graph) -> int:
    """m(G) = |E| - |V| + 1 for connected G."""
    if not G.is_connected():
        raise GraphError("cycle rank is defined for connected graphs only")
    return len(G.edges) - G.n + 1


def _gluing_split(G: Graph) -> Optional[Tuple[Graph, Graph]]:
    """Split at the lowest cut vertex that is free on both sides, if any."""
    for v in sorted(cut_vertices(G)):
        rest = G.nx_graph.subgraph([u for u in G.vertices if u != v])
        parts = sorted((frozenset(c) for c in nx.connected_components(rest)), key=min)
        if len(parts) != 2:
            continue
        nbrs = G.neighbors(v)
        if all(is_clique(G, nbrs & part) for part in parts):
            left = induced_subgraph(G, parts[0] | {v})
            right = induced_subgraph(G, parts[1] | {v})
            return left, right
    return None


def decompose(G: Graph) -> List[Graph]:
    """
    Indecomposable factors of a connected graph

    Each factor keeps labels pointing at the vertices of G, so gluing the
    factors back together along shared labels reproduces G.
    """
    if not G.is_connected():
        raise GraphError("decompose expects a connected graph")
    root = G if G.labels else G.relabeled(list(G.vertices))
    pending = [root]
    factors: List[Graph] = []
    while pending:
        current = pending.pop()
        split = _gluing_split(current)
        if split is None:
            factors.append(current)
            continue
        left, right = split
        # induced_subgraph composes labels, so they stay relative to G
        pending.append(right)
        pending.append(left)
    return factors


def is_decomposable(G: Graph) -> bool:
    return G.is_connected() and _gluing_split(G) is not None
