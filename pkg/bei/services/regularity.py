"""
Regularity dispatch

Picks the cheapest exact method for a graph: the block-graph closed form,
then the gluing sum, then Hochster's formula on the initial ideal.
"""

import logging
from typing import Optional

from ..calculations.cm_block import is_cm_block_graph
from ..calculations.monomial_reg import (
    RegularityReport,
    regularity_bei,
    regularity_block_closed_form,
    regularity_via_gluing,
)
from ..config import Config
from ..errors import GraphError
from ..graphs.graph_core import Graph, components, is_decomposable

logger = logging.getLogger(__name__)

METHODS = ("auto", "hochster", "gluing", "closed-form")


class RegularityService:
    """
    Service computing reg(S/J_G) with the configured field and worker count
    """

    def __init__(self, config: Config):
        self.config = config

    def choose_method(self, G: Graph) -> str:
        if is_cm_block_graph(G):
            return "closed-form"
        if len(components(G)) > 1 or is_decomposable(G):
            return "gluing"
        return "hochster"

    def compute(
        self,
        G: Graph,
        method: str = "auto",
        field_char: Optional[int] = None,
        certified: bool = True,
    ) -> RegularityReport:
        """
        Regularity of S/J_G

        Args:
            G: the graph
            method: one of METHODS
            field_char: overrides the configured characteristic
            certified: False allows the heuristic Hochster scan
        """
        if method not in METHODS:
            raise GraphError(f"method must be one of {METHODS}, got {method!r}")
        p = field_char if field_char is not None else self.config.field_char
        if method == "auto":
            method = self.choose_method(G)
            logger.info("auto selected %s for a %d-vertex graph", method, G.n)

        if method == "closed-form":
            return regularity_block_closed_form(G, p)
        if method == "gluing":
            return regularity_via_gluing(G, p, self.config.threads)
        return regularity_bei(G, p, self.config.threads, certified)
