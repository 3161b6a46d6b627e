"""
Graph carriers and the two graph families
"""

from .families import (
    ChainSpec,
    Join,
    StarParams,
    chain_layout,
    chain_of_cycles,
    expected_regularity,
    first_cut_vertex,
    star_product,
    validate_setup,
    whiskered_chain,
    whiskered_complete,
    whiskered_star,
)
from .graph_core import (
    BlockDecomposition,
    Graph,
    blocks,
    components,
    cone,
    cut_vertices,
    cycle_rank,
    decompose,
    delete_vertices,
    disjoint_union,
    glue,
    induced_subgraph,
    is_free_vertex,
    maximal_cliques,
    neighbor_completion,
    whisker,
)

__all__ = [
    'BlockDecomposition', 'ChainSpec', 'Graph', 'Join', 'StarParams',
    'blocks', 'chain_layout', 'chain_of_cycles', 'components', 'cone', 'cut_vertices',
    'cycle_rank', 'decompose', 'delete_vertices', 'disjoint_union', 'expected_regularity',
    'first_cut_vertex', 'glue', 'induced_subgraph', 'is_free_vertex', 'maximal_cliques',
    'neighbor_completion', 'star_product', 'validate_setup', 'whisker', 'whiskered_chain',
    'whiskered_complete', 'whiskered_star',
]
