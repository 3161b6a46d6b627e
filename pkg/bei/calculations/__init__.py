"""
Calculations for block graphs, initial ideals and regularity
"""

from .cm_block import CmbWitness, b_invariant, block_count, enumerate_cmb, is_block_graph, is_chordal, is_cm_block_graph, s_of_g
from .groebner import (
    AdmissiblePath,
    Binomial,
    MonomialIdeal,
    enumerate_admissible_paths,
    initial_ideal,
    max_induced_matching,
    paper_matching,
    path_monomial,
    verify_induced_matching,
)
from .homology import reduced_homology_dims
from .monomial_reg import (
    RegularityReport,
    regularity_bei,
    regularity_block_closed_form,
    regularity_squarefree,
    regularity_via_gluing,
)

__all__ = [
    'AdmissiblePath', 'Binomial', 'CmbWitness', 'MonomialIdeal', 'RegularityReport',
    'b_invariant', 'block_count', 'enumerate_admissible_paths', 'enumerate_cmb', 'initial_ideal',
    'is_block_graph', 'is_chordal', 'is_cm_block_graph', 'max_induced_matching', 'paper_matching',
    'path_monomial', 'reduced_homology_dims', 'regularity_bei', 'regularity_block_closed_form',
    'regularity_squarefree', 'regularity_via_gluing', 's_of_g', 'verify_induced_matching',
]
