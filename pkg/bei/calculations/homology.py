"""
Reduced simplicial homology over prime fields

Faces are bitmasks over the vertex set. Over GF(2) boundary matrices are
rows of packed ints reduced by XOR; for odd characteristic they are built as
numpy arrays and ranked with galois.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence

import galois
import numpy as np

from ..errors import ComplexError

logger = logging.getLogger(__name__)


def bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of a GF(2) matrix given as packed int rows."""
    pivots: Dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


@lru_cache(maxsize=None)
def _field(p: int):
    return galois.GF(p)


def gfp_rank(matrix: np.ndarray, p: int) -> int:
    if matrix.size == 0:
        return 0
    GF = _field(p)
    return int(np.linalg.matrix_rank(GF(np.mod(matrix, p))))


def faces_by_dimension(faces: Iterable[int]) -> Dict[int, List[int]]:
    """Group face masks by dimension (|face| - 1), each list sorted."""
    grouped: Dict[int, List[int]] = {}
    for face in set(faces):
        grouped.setdefault(popcount(face) - 1, []).append(face)
    for d in grouped:
        grouped[d].sort()
    return grouped


def check_closed(grouped: Dict[int, List[int]]) -> None:
    present = {face for faces in grouped.values() for face in faces}
    if 0 not in present:
        raise ComplexError("face family must contain the empty face")
    for face in present:
        for v in bits(face):
            if face & ~(1 << v) not in present:
                raise ComplexError(f"face {bits(face)} is present but its facet {bits(face & ~(1 << v))} is not")


def boundary_rank(grouped: Dict[int, List[int]], d: int, field_char: int = 2) -> int:
    """Rank of ∂_d: C_d -> C_{d-1}; ∂_0 sends every vertex to the empty face."""
    top = grouped.get(d, [])
    below = grouped.get(d - 1, [])
    if not top or not below:
        return 0
    index = {face: k for k, face in enumerate(below)}
    if field_char == 2:
        rows = []
        for face in top:
            row = 0
            for v in bits(face):
                row |= 1 << index[face & ~(1 << v)]
            rows.append(row)
        return gf2_rank(rows)
    matrix = np.zeros((len(top), len(below)), dtype=np.int64)
    for r, face in enumerate(top):
        for sign_exp, v in enumerate(bits(face)):
            matrix[r, index[face & ~(1 << v)]] = 1 if sign_exp % 2 == 0 else -1
    return gfp_rank(matrix, field_char)


def reduced_homology_dims(faces: Iterable[int], field_char: int = 2) -> List[int]:
    """
    dim H̃_d for d = -1 .. top dimension

    Args:
        faces: face masks of a simplicial complex, including the empty face 0
        field_char: prime characteristic of the coefficient field

    Returns:
        list whose entry k is dim H̃_{k-1}
    """
    grouped = faces_by_dimension(faces)
    check_closed(grouped)
    top = max(grouped)
    ranks = {d: boundary_rank(grouped, d, field_char) for d in range(0, top + 2)}
    dims = []
    for d in range(-1, top + 1):
        count = len(grouped.get(d, []))
        dims.append(count - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return dims


def reduced_euler_characteristic(faces: Iterable[int]) -> int:
    """Σ_d (-1)^d f_d including the empty face in degree -1."""
    return sum((-1) ** (popcount(face) - 1) for face in set(faces))


def top_nonvanishing_degree(grouped: Dict[int, List[int]], field_char: int, floor: int) -> Optional[int]:
    """Largest d >= floor with H̃_d != 0, or None."""
    top = max(grouped)
    upper = boundary_rank(grouped, top + 1, field_char)
    for d in range(top, floor - 1, -1):
        lower = boundary_rank(grouped, d, field_char) if d >= 0 else 0
        if len(grouped.get(d, [])) - lower - upper > 0:
            return d
        upper = lower
    return None


@dataclass(frozen=True)
class SimplicialView:
    """
    Stanley-Reisner complex of a squarefree monomial ideal

    A set of variables is a face iff it contains no generator support.
    """

    num_vars: int
    forbidden: Sequence[int]

    def is_face(self, mask: int) -> bool:
        return not any(g & mask == g for g in self.forbidden)

    def restriction_faces(self, sigma: int) -> List[int]:
        """Faces of Δ|σ by depth-first growth; a branch dies once it holds a generator."""
        verts = bits(sigma)
        inside = [g for g in self.forbidden if g & sigma == g]
        faces = [0]
        stack = [(0, 0)]
        while stack:
            face, start = stack.pop()
            for k in range(start, len(verts)):
                grown = face | (1 << verts[k])
                if any(g & grown == g for g in inside):
                    continue
                faces.append(grown)
                stack.append((grown, k + 1))
        return faces
