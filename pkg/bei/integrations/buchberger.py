"""
Independent Gröbner basis oracle backed by sympy's Buchberger implementation

Used to cross-check the admissible-path description of in(J_G) on small
graphs.
"""

import logging
from typing import List

import sympy as sp

from ..calculations.groebner import MonomialIdeal, edge_binomials, x_var, y_var
from ..config import is_prime
from ..errors import CapExceededError, ConfigError, ConsistencyError
from ..graphs.graph_core import Graph

logger = logging.getLogger(__name__)

MAX_ORACLE_VERTICES = 6
DEFAULT_ORACLE_CHAR = 32003


def ring_generators(n: int) -> List[sp.Symbol]:
    """x_1, ..., x_n, y_1, ..., y_n in lex order."""
    xs = sp.symbols(f"x1:{n + 1}")
    ys = sp.symbols(f"y1:{n + 1}")
    return list(xs) + list(ys)


def buchberger_oracle(G: Graph, field_char: int = DEFAULT_ORACLE_CHAR) -> MonomialIdeal:
    """
    Minimal generators of in(J_G) from a reduced lex Gröbner basis

    Args:
        G: graph with at most MAX_ORACLE_VERTICES vertices
        field_char: prime characteristic of the coefficient field

    Returns:
        MonomialIdeal of the leading monomials of the reduced basis
    """
    if G.n > MAX_ORACLE_VERTICES:
        raise CapExceededError("Buchberger oracle vertex cap", MAX_ORACLE_VERTICES, G.n)
    if not is_prime(field_char):
        raise ConfigError(f"field characteristic must be prime, got {field_char}")
    if not G.edges:
        return MonomialIdeal(G.n, ())

    gens = ring_generators(G.n)
    xs, ys = gens[: G.n], gens[G.n:]
    polys = [xs[b.i - 1] * ys[b.j - 1] - xs[b.j - 1] * ys[b.i - 1] for b in edge_binomials(G)]

    basis = sp.groebner(polys, *gens, order="lex", modulus=field_char, method="buchberger")
    logger.info("reduced basis of J_G on %d vertices has %d elements", G.n, len(basis.exprs))

    leading = []
    for poly in basis.polys:
        exponents = poly.monoms(order="lex")[0]
        if any(e > 1 for e in exponents):
            raise ConsistencyError(f"leading monomial {poly.LM(order='lex')} is not squarefree")
        support = []
        for k, e in enumerate(exponents):
            if e:
                support.append(x_var(k + 1, G.n) if k < G.n else y_var(k - G.n + 1, G.n))
        leading.append(frozenset(support))
    return MonomialIdeal(G.n, tuple(leading)).minimalized()
