"""
Block graphs, the Cohen-Macaulay block graph criterion and the b(G) invariant
"""

import logging
from dataclasses import dataclass
from functools import cached_property, partial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from ..errors import CapExceededError, FamilyError, GraphError
from ..graphs.families import ChainSpec, chain_layout, validate_setup
from ..graphs.graph_core import Graph, delete_vertices, cut_vertices
from ..services.parallel import run_partitioned

logger = logging.getLogger(__name__)

MAX_GENERAL_VERTICES = 20
MAX_CUT_VERTICES = 20

MODES = ("cut_vertex", "general")


def is_chordal(G: Graph) -> bool:
    return nx.is_chordal(G.nx_graph)


def _cm_block_count(h: nx.Graph, require_cm: bool = True) -> Optional[int]:
    """
    Number of blocks if ``h`` is a block graph, else None

    With ``require_cm`` every vertex must also lie in at most two blocks.
    """
    membership: Dict[int, int] = {}
    count = 0
    for block in nx.biconnected_components(h):
        size = len(block)
        if h.subgraph(block).number_of_edges() != size * (size - 1) // 2:
            return None
        count += 1
        if require_cm:
            for v in block:
                membership[v] = membership.get(v, 0) + 1
                if membership[v] > 2:
                    return None
    return count


def is_block_graph(G: Graph) -> bool:
    """Every biconnected block is a clique (such graphs are chordal)."""
    return _cm_block_count(G.nx_graph, require_cm=False) is not None


def is_cm_block_graph(G: Graph) -> bool:
    """Block graph in which no vertex lies in more than two maximal cliques."""
    return _cm_block_count(G.nx_graph) is not None


def block_count(H: Graph) -> int:
    """Number of nontrivial blocks; isolated vertices contribute nothing."""
    count = _cm_block_count(H.nx_graph, require_cm=False)
    if count is None:
        raise GraphError("block_count expects a block graph")
    return count


@dataclass(frozen=True)
class CmbWitness:
    """An induced CM block graph H = G∖W."""

    graph: Graph
    removed: Tuple[int, ...]
    block_count: int

    @cached_property
    def subgraph(self) -> Graph:
        return delete_vertices(self.graph, self.removed)

    def to_dict(self) -> Dict[str, object]:
        return {"removed": list(self.removed), "blocks": self.block_count}


def _candidates(G: Graph, mode: str) -> List[int]:
    if mode not in MODES:
        raise GraphError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "cut_vertex":
        if not G.is_connected():
            raise GraphError("cut_vertex mode expects a connected graph")
        cuts = sorted(cut_vertices(G))
        if len(cuts) > MAX_CUT_VERTICES:
            raise CapExceededError("cut vertex enumeration cap", MAX_CUT_VERTICES, len(cuts))
        return cuts
    if G.n > MAX_GENERAL_VERTICES:
        raise CapExceededError(
            "induced subgraph enumeration vertex cap", MAX_GENERAL_VERTICES, G.n, "use --mode cut_vertex"
        )
    return list(G.vertices)


def _removed_from_mask(candidates: Sequence[int], mask: int) -> Tuple[int, ...]:
    return tuple(v for i, v in enumerate(candidates) if mask >> i & 1)


def _scan_masks(G: Graph, candidates: Tuple[int, ...], best_only: bool, start: int, stop: int):
    """CM block subgraphs G∖W for W given by masks in [start, stop)."""
    g = G.nx_graph
    found = []
    best = None
    for mask in range(start, stop):
        removed = _removed_from_mask(candidates, mask)
        gone = set(removed)
        count = _cm_block_count(g.subgraph(v for v in G.vertices if v not in gone))
        if count is None:
            continue
        if best_only:
            if best is None or (-count, removed) < (-best[1], best[0]):
                best = (removed, count)
        else:
            found.append((removed, count))
    return [best] if best_only and best is not None else found


def _witness_order(item: Tuple[Tuple[int, ...], int]):
    removed, count = item
    return (-count, removed)


def enumerate_cmb(G: Graph, mode: str = "cut_vertex", threads: int = 1) -> List[CmbWitness]:
    """
    All W (cut vertex subsets, or any vertex subsets in general mode) with
    G∖W a Cohen-Macaulay block graph, largest block count first and ties
    broken by the lexicographically smallest removed set
    """
    candidates = tuple(_candidates(G, mode))
    total = 1 << len(candidates)
    logger.info("enumerating %d subsets of %d candidates (%s mode)", total, len(candidates), mode)
    task = partial(_scan_masks, G, candidates, False)
    found = [item for chunk in run_partitioned(task, total, threads) for item in chunk]
    found.sort(key=_witness_order)
    return [CmbWitness(G, removed, count) for removed, count in found]


def best_witness(G: Graph, mode: str = "cut_vertex", threads: int = 1) -> Optional[CmbWitness]:
    """The first witness enumerate_cmb would return, without materialising the rest."""
    candidates = tuple(_candidates(G, mode))
    total = 1 << len(candidates)
    task = partial(_scan_masks, G, candidates, True)
    found = [item for chunk in run_partitioned(task, total, threads) for item in chunk]
    if not found:
        logger.warning("no induced CM block graph reachable in %s mode", mode)
        return None
    removed, count = min(found, key=_witness_order)
    return CmbWitness(G, removed, count)


def b_invariant(G: Graph, mode: str = "cut_vertex", threads: int = 1) -> int:
    """b(G): the largest block count of an induced CM block graph, 0 if none exists."""
    witness = best_witness(G, mode, threads)
    return witness.block_count if witness else 0


def s_of_g(spec: ChainSpec) -> List[int]:
    """1-based indices of the segments containing exactly one cut vertex."""
    violations = validate_setup(spec)
    if violations:
        raise FamilyError(f"S(G) needs a valid chain, violated conditions: {violations}")
    layout = chain_layout(spec)
    anchors: FrozenSet[int] = frozenset(spec.whiskers)
    return [i for i, seg in enumerate(layout.segment_vertices, start=1) if len(seg & anchors) == 1]
