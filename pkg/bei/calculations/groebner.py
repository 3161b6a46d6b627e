"""
Closed-form Gröbner bases of binomial edge ideals

Variables are indexed 0..2n-1: x_i is index i-1 and y_i is index n+i-1, and
the monomial order is lex with x_1 > ... > x_n > y_1 > ... > y_n. A squarefree
monomial is the frozenset of its variable indices.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from ..errors import CapExceededError, ConsistencyError, FamilyError, IdealError
from ..graphs.families import StarParams
from ..graphs.graph_core import Graph

logger = logging.getLogger(__name__)

MAX_MATCHING_GENERATORS = 64

Monomial = FrozenSet[int]

_VARIABLE_PATTERN = re.compile(r"^([xy])(\d+)$")


def x_var(i: int, n: int) -> int:
    return i - 1


def y_var(i: int, n: int) -> int:
    return n + i - 1


def variable_name(index: int, n: int) -> str:
    return f"x{index + 1}" if index < n else f"y{index - n + 1}"


def parse_variable(name: str, n: int) -> int:
    match = _VARIABLE_PATTERN.match(name.strip())
    if not match:
        raise IdealError(f"variables are named x<i> or y<i>, got {name!r}")
    kind, i = match.group(1), int(match.group(2))
    if not 1 <= i <= n:
        raise IdealError(f"variable {name} outside 1..{n}")
    return x_var(i, n) if kind == "x" else y_var(i, n)


def _monomial_key(mono: Monomial) -> Tuple[int, Tuple[int, ...]]:
    return (len(mono), tuple(sorted(mono)))


def to_mask(mono: Iterable[int]) -> int:
    mask = 0
    for v in mono:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Squarefree monomial ideal on x_1..x_n, y_1..y_n

    Also read as a clutter whose edges are the generator supports.
    """

    n: int
    generators: Tuple[Monomial, ...]

    def __post_init__(self):
        gens = {frozenset(g) for g in self.generators}
        for g in gens:
            if not g:
                raise IdealError("the unit monomial is not allowed as a generator")
            if min(g) < 0 or max(g) >= 2 * self.n:
                raise IdealError(f"generator {sorted(g)} uses a variable outside 0..{2 * self.n - 1}")
        object.__setattr__(self, "generators", tuple(sorted(gens, key=_monomial_key)))

    @property
    def num_vars(self) -> int:
        return 2 * self.n

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        return tuple(to_mask(g) for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __contains__(self, mono) -> bool:
        return frozenset(mono) in set(self.generators)

    def is_minimal(self) -> bool:
        masks = self.masks
        return not any(a != b and a & b == a for a in masks for b in masks)

    def minimalized(self) -> "MonomialIdeal":
        masks = self.masks
        keep = [g for g, b in zip(self.generators, masks) if not any(a != b and a & b == a for a in masks)]
        return MonomialIdeal(self.n, tuple(keep))

    def names(self, mono: Monomial) -> List[str]:
        return [variable_name(v, self.n) for v in sorted(mono)]

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "generators": [self.names(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "MonomialIdeal":
        try:
            n = int(data["n"])
            gens = [frozenset(parse_variable(name, n) for name in gen) for gen in data["generators"]]
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, IdealError):
                raise
            raise IdealError(f"ideal JSON needs 'n' and 'generators': {e}") from None
        return cls(n, tuple(gens))


@dataclass(frozen=True)
class Binomial:
    """f_ij = x_i y_j - x_j y_i with i < j; its lex-leading term is x_i y_j."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise IdealError(f"f_ij needs two distinct vertices, got i = j = {self.i}")
        lo, hi = sorted((self.i, self.j))
        object.__setattr__(self, "i", lo)
        object.__setattr__(self, "j", hi)

    def leading_monomial(self, n: int) -> Monomial:
        return frozenset({x_var(self.i, n), y_var(self.j, n)})

    def trailing_monomial(self, n: int) -> Monomial:
        return frozenset({x_var(self.j, n), y_var(self.i, n)})


def edge_binomials(G: Graph) -> List[Binomial]:
    return [Binomial(u, v) for u, v in G.sorted_edges()]


# ----------------------------------------------------------------------
# admissible paths
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissiblePath:
    vertices: Tuple[int, ...]
    n: int = field(compare=False)

    @property
    def i(self) -> int:
        return self.vertices[0]

    @property
    def j(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]


def _paths_between(G: Graph, i: int, j: int) -> List[Tuple[int, ...]]:
    """Induced i-j paths whose interior avoids the closed interval [i, j]."""
    adjacency = G.adjacency
    found = []
    path = [i]
    on_path = {i}

    def extend():
        last = path[-1]
        for w in sorted(adjacency[last]):
            if w in on_path:
                continue
            if w != j and i <= w <= j:
                continue
            # a neighbour earlier on the path would be a chord
            if any(p in adjacency[w] for p in path[:-1]):
                continue
            if w == j:
                found.append(tuple(path) + (j,))
                continue
            path.append(w)
            on_path.add(w)
            extend()
            path.pop()
            on_path.discard(w)

    extend()
    return found


def enumerate_admissible_paths(G: Graph) -> List[AdmissiblePath]:
    """All admissible paths, ordered by endpoints and then by vertex sequence."""
    paths = []
    for i in G.vertices:
        for j in range(i + 1, G.n + 1):
            paths.extend(AdmissiblePath(p, G.n) for p in _paths_between(G, i, j))
    logger.info("found %d admissible paths on %d vertices", len(paths), G.n)
    return sorted(paths, key=lambda p: (p.i, p.j, p.vertices))


def path_monomial(path: AdmissiblePath) -> Monomial:
    """u_π x_i y_j: x_v for interior v > j, y_v for interior v < i."""
    i, j, n = path.i, path.j, path.n
    variables = {x_var(i, n), y_var(j, n)}
    for v in path.interior:
        variables.add(x_var(v, n) if v > j else y_var(v, n))
    return frozenset(variables)


def initial_ideal(G: Graph) -> MonomialIdeal:
    """
    in(J_G) from the admissible paths

    The path monomials are already the minimal generators; a redundant one
    means the structural description is wrong and raises ConsistencyError.
    """
    monomials = [path_monomial(p) for p in enumerate_admissible_paths(G)]
    ideal = MonomialIdeal(G.n, tuple(monomials))
    if len(ideal) != len(monomials) or not ideal.is_minimal():
        raise ConsistencyError(f"admissible-path monomials of {G.to_json()} are not a minimal generating set")
    return ideal


# ----------------------------------------------------------------------
# induced matchings
# ----------------------------------------------------------------------


def verify_induced_matching(I: MonomialIdeal, M: Sequence[Iterable[int]]) -> bool:
    """Pairwise disjoint generators whose union contains no other generator."""
    members = [frozenset(m) for m in M]
    generators = set(I.generators)
    for m in members:
        if m not in generators:
            raise IdealError(f"{I.names(m)} is not a generator of the ideal")
    union = 0
    for m in members:
        mask = to_mask(m)
        if union & mask:
            return False
        union |= mask
    chosen = {to_mask(m) for m in members}
    return not any(mask & union == mask and mask not in chosen for mask in I.masks)


def matching_bound(M: Sequence[Iterable[int]]) -> int:
    return sum(len(frozenset(m)) - 1 for m in M)


def max_induced_matching(I: MonomialIdeal) -> Tuple[List[Monomial], int]:
    """
    Induced matching maximising Σ(|e| - 1) by branch and bound

    The remaining-weight sum bounds every branch; candidates are ordered by
    weight so heavy generators are tried first.
    """
    if len(I) > MAX_MATCHING_GENERATORS:
        raise CapExceededError("induced matching generator cap", MAX_MATCHING_GENERATORS, len(I))
    masks = I.masks
    order = sorted(range(len(masks)), key=lambda k: (-(len(I.generators[k]) - 1), k))
    weight = [len(g) - 1 for g in I.generators]

    best: List[int] = []
    best_weight = -1

    def closes_other(union: int, chosen: List[int]) -> bool:
        return any(masks[k] & union == masks[k] and k not in chosen for k in range(len(masks)))

    def search(candidates: List[int], chosen: List[int], union: int, total: int) -> None:
        nonlocal best, best_weight
        if total > best_weight:
            best, best_weight = list(chosen), total
        remaining = sum(weight[c] for c in candidates)
        for idx, c in enumerate(candidates):
            if total + remaining <= best_weight:
                return
            remaining -= weight[c]
            new_union = union | masks[c]
            chosen.append(c)
            if not closes_other(new_union, chosen):
                rest = [d for d in candidates[idx + 1:] if masks[d] & new_union == 0]
                search(rest, chosen, new_union, total + weight[c])
            chosen.pop()

    search(order, [], 0, 0)
    matching = sorted((I.generators[k] for k in best), key=_monomial_key)
    return matching, max(best_weight, 0)


def paper_matching(p: StarParams) -> List[Monomial]:
    """
    The induced matching {x1, y2}, {x_{i+2}, y_{m+n+i}} (1 <= i <= 2r-2) of
    the whiskered star in Gröbner labeling
    """
    if p.labeling != "groebner":
        raise FamilyError("the explicit matching is stated for the groebner labeling")
    n = p.vertex_count
    matching = [frozenset({x_var(1, n), y_var(2, n)})]
    for i in range(1, 2 * p.r - 1):
        matching.append(frozenset({x_var(i + 2, n), y_var(p.m + p.n + i, n)}))
    return matching
