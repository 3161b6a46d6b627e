"""
Constructors and validators for the two graph families

- whiskered chains of cycles, described declaratively by a ChainSpec
- whiskered K_m ⋆_r K_n, described by StarParams, in either the original
  labeling or the relabeling used for the Gröbner basis computation
"""

import json
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from ..errors import FamilyError
from .graph_core import Graph, complete_graph, whisker

logger = logging.getLogger(__name__)

LABELINGS = ("original", "groebner")

SETUP_CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii")

_SEGMENT_PATTERN = re.compile(r"^(K|C)(\d+)$")


def _parse_segment(name: str) -> Tuple[str, int]:
    """Return ("K", k) for complete segments and ("C", 4) for C4; C3 is K3."""
    match = _SEGMENT_PATTERN.match(name.strip().upper())
    if not match:
        raise FamilyError(f"unknown segment {name!r}; use K<k> (k >= 3), C3 or C4")
    kind, size = match.group(1), int(match.group(2))
    if kind == "C" and size not in (3, 4):
        raise FamilyError(f"cycle segments must be C3 or C4, got {name!r}")
    if kind == "K" and size < 3:
        raise FamilyError(f"complete segments need at least 3 vertices, got {name!r}")
    if kind == "C" and size == 3:
        return ("K", 3)
    return kind, size


def _new_vertex_count(position: int, kind: str, size: int) -> int:
    if position == 0:
        return size
    if kind == "C":
        return 2
    return size - 2


@dataclass(frozen=True)
class Join:
    """Whether the next shared edge reuses the previous w (resp. u) vertex."""

    w_merge: bool = False
    u_merge: bool = False

    def to_dict(self) -> Dict[str, bool]:
        return {"w_merge": self.w_merge, "u_merge": self.u_merge}


@dataclass(frozen=True)
class ChainSpec:
    """
    A chain of cycles D_1, ..., D_r with whiskers

    ``joins[k]`` describes the shared edge {w_{k+1}, u_{k+1}} of D_{k+1} and
    D_{k+2}: ``w_merge`` means w_{k+1} = w_k, otherwise {w_k, w_{k+1}} is an
    edge of D_{k+1} (likewise for u). ``whiskers`` lists the anchor vertices
    of the block, which become the cut vertices of the whiskered graph.
    """

    segments: Tuple[str, ...]
    joins: Tuple[Join, ...] = ()
    whiskers: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "joins", tuple(j if isinstance(j, Join) else Join(**j) for j in self.joins))
        object.__setattr__(self, "whiskers", tuple(int(w) for w in self.whiskers))
        if not self.segments:
            raise FamilyError("a chain needs at least one segment")
        parsed = [_parse_segment(s) for s in self.segments]
        if len(self.joins) != len(self.segments) - 1:
            raise FamilyError(
                f"{len(self.segments)} segments need {len(self.segments) - 1} joins, got {len(self.joins)}"
            )
        if len(set(self.whiskers)) != len(self.whiskers):
            raise FamilyError(f"duplicate whisker anchor in {list(self.whiskers)}")
        block_size = sum(_new_vertex_count(i, kind, size) for i, (kind, size) in enumerate(parsed))
        for w in self.whiskers:
            if not 1 <= w <= block_size:
                raise FamilyError(f"whisker anchor {w} is not a vertex of the {block_size}-vertex block")

    @property
    def r(self) -> int:
        return len(self.segments)

    @property
    def kinds(self) -> List[Tuple[str, int]]:
        return [_parse_segment(s) for s in self.segments]

    def to_dict(self) -> Dict[str, object]:
        return {
            "segments": list(self.segments),
            "joins": [j.to_dict() for j in self.joins],
            "whiskers": list(self.whiskers),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "ChainSpec":
        try:
            joins = tuple(
                Join(bool(j.get("w_merge", False)), bool(j.get("u_merge", False))) for j in data.get("joins", [])
            )
            return cls(tuple(data["segments"]), joins, tuple(data.get("whiskers", [])))
        except (KeyError, TypeError, AttributeError) as e:
            raise FamilyError(f"chain spec JSON needs 'segments', 'joins' and 'whiskers': {e}") from None


@dataclass(frozen=True)
class StarParams:
    m: int
    n: int
    r: int
    labeling: str = "original"

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise FamilyError(f"m and n must be at least 2, got m={self.m}, n={self.n}")
        if not 2 <= self.r <= min(self.m, self.n):
            raise FamilyError(f"r must satisfy 2 <= r <= min(m, n) = {min(self.m, self.n)}, got r={self.r}")
        if self.labeling not in LABELINGS:
            raise FamilyError(f"labeling must be one of {LABELINGS}, got {self.labeling!r}")

    @property
    def vertex_count(self) -> int:
        return self.m + self.n + 2 * (self.r - 1)

    def with_labeling(self, labeling: str) -> "StarParams":
        return StarParams(self.m, self.n, self.r, labeling)

    def to_dict(self) -> Dict[str, object]:
        return {"m": self.m, "n": self.n, "r": self.r, "labeling": self.labeling}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "StarParams":
        try:
            return cls(int(data["m"]), int(data["n"]), int(data["r"]), str(data.get("labeling", "original")))
        except (KeyError, TypeError, ValueError) as e:
            raise FamilyError(f"star JSON needs integer 'm', 'n', 'r': {e}") from None


# ----------------------------------------------------------------------
# chain layout
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLayout:
    """
    Realised vertex sets of a chain

    ``shared[i - 1]`` is the pair (w_i, u_i) for 1 <= i <= r - 1. ``head`` is
    (w_0, u_0) when D_1 is a C4 and ``tail`` is (w_r, u_r) when D_r is a C4
    (for r = 1 that is the far edge {w_1, u_1} of the C4 head).
    """

    segment_vertices: Tuple[FrozenSet[int], ...]
    edges: FrozenSet[Tuple[int, int]]
    shared: Tuple[Tuple[int, int], ...]
    block_size: int
    head: Optional[Tuple[int, int]] = None
    tail: Optional[Tuple[int, int]] = None
    cycle_kinds: Tuple[Tuple[str, int], ...] = field(default=())

    def segments_containing(self, v: int) -> List[int]:
        """1-based indices of the segments holding v."""
        return [i for i, seg in enumerate(self.segment_vertices, start=1) if v in seg]

    def is_c4(self, index: int) -> bool:
        return self.cycle_kinds[index - 1] == ("C", 4)

    def cut_positions(self) -> FrozenSet[int]:
        """Vertices that are cut vertices in a valid whiskering."""
        positions = {w for w, _ in self.shared}
        if self.head:
            positions.add(self.head[0])
        if self.tail:
            positions.add(self.tail[0])
        return frozenset(positions)

    def non_cut_positions(self) -> FrozenSet[int]:
        positions = {u for _, u in self.shared}
        if self.head:
            positions.add(self.head[1])
        if self.tail:
            positions.add(self.tail[1])
        return frozenset(positions)


def _join_violations(spec: ChainSpec) -> List[str]:
    violations = []
    kinds = spec.kinds
    for k, join in enumerate(spec.joins):
        # joins[k] lays out the exit edge of segment k + 1
        kind, size = kinds[k]
        merges = int(join.w_merge) + int(join.u_merge)
        if k == 0 and merges:
            violations.append("join 0: the first shared edge cannot merge with a previous one")
        elif k > 0 and kind == "C" and merges:
            violations.append(f"join {k}: a C4 segment has two fresh vertices and no merge")
        elif k > 0 and kind == "K" and size == 3 and merges != 1:
            violations.append(f"join {k}: a C3 segment needs exactly one of w_merge/u_merge")
    return violations


def _interior_complete(spec: ChainSpec) -> List[int]:
    return [i for i, (kind, size) in enumerate(spec.kinds[1:], start=2) if kind == "K" and size > 3]


def chain_layout(spec: ChainSpec) -> ChainLayout:
    problems = _join_violations(spec)
    interior = _interior_complete(spec)
    if interior:
        problems.append(f"complete segment K_k (k > 3) only allowed at position 1, found at {interior}")
    if problems:
        raise FamilyError("; ".join(problems))

    kinds = spec.kinds
    edges = set()
    segment_vertices: List[FrozenSet[int]] = []
    shared: List[Tuple[int, int]] = []
    head = tail = None

    kind, size = kinds[0]
    if kind == "K":
        first = complete_graph(size)
        edges |= first.edges
        segment_vertices.append(frozenset(range(1, size + 1)))
        w, u = size - 1, size
        nxt = size
    else:
        w0, u0, w, u = 1, 2, 3, 4
        edges |= {(w0, u0), (w0, w), (w, u), (u0, u)}
        segment_vertices.append(frozenset({w0, u0, w, u}))
        head = (w0, u0)
        nxt = 4
    if spec.r > 1:
        shared.append((w, u))
    elif head:
        tail = (w, u)

    for i in range(2, spec.r + 1):
        kind, size = kinds[i - 1]
        last = i == spec.r
        join = spec.joins[i - 1] if not last else Join()
        if kind == "C":
            new_w, new_u = nxt + 1, nxt + 2
            nxt += 2
            edges |= {(w, new_w), (u, new_u), (new_w, new_u)}
            segment_vertices.append(frozenset({w, u, new_w, new_u}))
            if last:
                tail = (new_w, new_u)
            w, u = new_w, new_u
        else:
            t = nxt + 1
            nxt += 1
            edges |= {(w, t), (u, t)}
            segment_vertices.append(frozenset({w, u, t}))
            if join.w_merge:
                u = t
            elif join.u_merge:
                w = t
        if not last:
            shared.append((w, u))

    return ChainLayout(
        segment_vertices=tuple(segment_vertices),
        edges=frozenset(tuple(sorted(e)) for e in edges),
        shared=tuple(shared),
        block_size=nxt,
        head=head,
        tail=tail,
        cycle_kinds=tuple(kinds),
    )


# ----------------------------------------------------------------------
# chain constructors
# ----------------------------------------------------------------------


def chain_of_cycles(spec: ChainSpec) -> Graph:
    layout = chain_layout(spec)
    return Graph(layout.block_size, layout.edges)


def whiskered_chain(spec: ChainSpec) -> Graph:
    return whisker(chain_of_cycles(spec), list(spec.whiskers))


def whiskered_complete(k: int, anchors: Sequence[int]) -> Graph:
    """K_k with whiskers; a decomposable member of the chain family."""
    return whisker(complete_graph(k), list(anchors))


def validate_setup(spec: ChainSpec) -> List[str]:
    """
    Conditions (i)-(vii) of the chain setup that fail, as roman numerals

    The cut vertices of the whiskered graph are exactly the whisker anchors.
    """
    violations = set()
    kinds = spec.kinds

    if _interior_complete(spec):
        violations.add("i")
    for i in range(1, spec.r):
        if kinds[i - 1] == ("C", 4) and kinds[i] == ("C", 4):
            violations.add("ii")
    if _join_violations(spec):
        violations.add("iv")
    if violations & {"i", "iv"}:
        # without a consistent layout the vertex-level conditions are undefined
        return sorted(violations, key=SETUP_CONDITIONS.index)

    layout = chain_layout(spec)
    anchors = set(spec.whiskers)

    for w, u in layout.shared:
        if w not in anchors or u in anchors:
            violations.add("iii")
    if spec.r > 1 or layout.head:
        stray = anchors - layout.cut_positions() - layout.non_cut_positions()
        if stray:
            violations.add("iii")
    if layout.head:
        w0, u0 = layout.head
        w1, u1 = layout.shared[0] if layout.shared else layout.tail
        if not {w0, w1} <= anchors or {u0, u1} & anchors:
            violations.add("v")
    if layout.tail and layout.shared:
        w_prev, u_prev = layout.shared[-1]
        w_r, u_r = layout.tail
        if not {w_prev, w_r} <= anchors or {u_prev, u_r} & anchors:
            violations.add("vi")

    membership = Counter(v for seg in layout.segment_vertices for v in seg)
    for v, count in membership.items():
        in_c4 = any(layout.is_c4(i) for i in layout.segments_containing(v))
        if (count >= 4 or (count == 3 and in_c4)) and v not in anchors:
            violations.add("vii")

    result = sorted(violations, key=SETUP_CONDITIONS.index)
    if result:
        logger.info("chain %s violates setup conditions %s", list(spec.segments), result)
    return result


def first_cut_vertex(spec: ChainSpec) -> Optional[int]:
    """w_0 when D_1 is a C4, else w_1; for a single complete segment the smallest anchor."""
    layout = chain_layout(spec)
    if layout.head:
        return layout.head[0]
    if layout.shared:
        return layout.shared[0][0]
    return min(spec.whiskers) if spec.whiskers else None


# ----------------------------------------------------------------------
# K_m ⋆_r K_n
# ----------------------------------------------------------------------


def _star_sides(p: StarParams) -> Tuple[List[int], List[int], List[Tuple[int, int]]]:
    m, n, r = p.m, p.n, p.r
    if p.labeling == "original":
        left = list(range(1, m + 1))
        right = list(range(m + 1, m + n + 1))
        rungs = [(i, m + i) for i in range(1, r + 1)]
    else:
        left = [2 * i - 1 for i in range(1, r + 1)] + list(range(2 * r + 1, 2 * r + (m - r) + 1))
        right = [2 * i for i in range(1, r + 1)] + list(range(2 * r + (m - r) + 1, m + n + 1))
        rungs = [(2 * i - 1, 2 * i) for i in range(1, r + 1)]
    return left, right, rungs


def star_product(p: StarParams) -> Graph:
    left, right, rungs = _star_sides(p)
    edges = set(rungs)
    for side in (left, right):
        edges |= {(a, b) for a in side for b in side if a < b}
    return Graph(p.m + p.n, frozenset(edges))


def star_whisker_anchors(p: StarParams) -> List[int]:
    if p.labeling == "original":
        return list(range(1, p.r)) + list(range(p.m + 1, p.m + p.r))
    return [i + 2 for i in range(1, 2 * p.r - 1)]


def whiskered_star(p: StarParams) -> Graph:
    return whisker(star_product(p), star_whisker_anchors(p))


# ----------------------------------------------------------------------
# predictions
# ----------------------------------------------------------------------


def star_expected_regularity(p: StarParams) -> int:
    if p.r == 2:
        return 3 if p.m == p.n == 2 else 4
    return 2 * p.r - 1


def expected_regularity(family: Union[ChainSpec, StarParams]) -> Optional[int]:
    """
    Closed-form regularity of the whiskered family member

    Returns None for a chain that fails the setup conditions, since no
    formula is known for those.
    """
    if isinstance(family, StarParams):
        return star_expected_regularity(family)
    if isinstance(family, ChainSpec):
        if validate_setup(family):
            return None
        from ..calculations.cm_block import b_invariant

        return b_invariant(whiskered_chain(family), "cut_vertex")
    raise FamilyError(f"expected a ChainSpec or StarParams, got {type(family).__name__}")
