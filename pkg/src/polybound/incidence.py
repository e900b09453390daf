"""Vertex-facet incidence matrices and derived combinatorial data.

Vertex sets are stored as Python int bitmasks (bit v set <=> vertex v in
the set), which makes the set operations used by the face enumeration
algorithms exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .linalg import dot, rank
from .polyhedron import Graph, HRep, VRep, ClosureResult


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class IncidenceMatrix:
    """Facet x vertex 0/1 matrix; rows are vertex-set bitmasks.

    `far_face` is an optional bitmask of the vertices on the far face; it
    is None when no unbounded-direction data is attached.
    """

    n: int
    row_masks: tuple[int, ...]
    far_face: Optional[int] = None

    def __post_init__(self):
        full = self.all_mask
        for row in self.row_masks:
            if row & ~full:
                raise InputError("row mask references a vertex out of range")
            if row == 0:
                raise InputError("every facet must contain at least one vertex")

    @property
    def m(self) -> int:
        return len(self.row_masks)

    @property
    def alpha(self) -> int:
        return sum(row.bit_count() for row in self.row_masks)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def far_face_indices(self) -> Optional[tuple[int, ...]]:
        return None if self.far_face is None else indices_from_mask(self.far_face)

    def column_mask(self, v: int) -> int:
        """Bitmask over rows: which facets contain vertex v."""
        mask = 0
        for i, row in enumerate(self.row_masks):
            if row >> v & 1:
                mask |= 1 << i
        return mask

    def with_far_face(self, far: Iterable[int]) -> "IncidenceMatrix":
        return IncidenceMatrix(self.n, self.row_masks, mask_from_indices(far))


def closure_mask(mask: int, rows: Sequence[int]) -> Optional[int]:
    """Intersection of all rows containing `mask`; None when no row does
    (the improper face, "Whole")."""
    acc = None
    for row in rows:
        if mask & ~row == 0:
            acc = row if acc is None else acc & row
            if acc == mask:  # cannot shrink further
                return acc
    return acc


def compute_incidences(h: HRep, v: VRep) -> IncidenceMatrix:
    """Incidence matrix of the polytope h over its exact vertex set v.

    Redundant rows (those whose incident vertices do not span a
    (d-1)-dimensional affine hull) are dropped, and duplicate facet rows
    are merged, so output rows biject with facets.  Rays in v are ignored.
    """
    d = h.dim
    points = v.vertices
    for p in points:
        for a, b in h.rows:
            if dot(a, p) > b:
                raise InputError("point outside polyhedron")
    masks: list[int] = []
    seen = set()
    for a, b in h.rows:
        incident = [i for i, p in enumerate(points) if dot(a, p) == b]
        if len(incident) < d:
            continue
        if _affine_rank(points, incident, d) != d - 1:
            continue
        mask = mask_from_indices(incident)
        if mask not in seen:
            seen.add(mask)
            masks.append(mask)
    return IncidenceMatrix(len(points), tuple(masks))


def _affine_rank(points, indices, d: int) -> int:
    """Rank of the difference vectors of the indexed points (early exit at d-1)."""
    base = points[indices[0]]
    rows = []
    r = 0
    for i in indices[1:]:
        diff = tuple(x - y for x, y in zip(points[i], base))
        rows.append(diff)
        new_rank = rank(rows)
        if new_rank == r:
            rows.pop()
        else:
            r = new_rank
        if r >= d - 1:
            return r
    return r


def far_face_vertices(closure: ClosureResult, v: VRep) -> set[int]:
    """Indices of closure vertices on the far hyperplane sum(x) = 1."""
    a, b = closure.closure.rows[closure.far_inequality]
    return {i for i, p in enumerate(v.vertices) if dot(a, p) == b}


def is_simple(inc: IncidenceMatrix, d: int) -> bool:
    """True iff every vertex lies on exactly d facets."""
    counts = [0] * inc.n
    for row in inc.row_masks:
        for i in indices_from_mask(row):
            counts[i] += 1
    return all(c == d for c in counts)


def vertex_edge_graph(inc: IncidenceMatrix, d: int) -> Graph:
    """Vertex-edge graph of a simple d-polytope: u,v adjacent iff they share
    exactly d-1 facets.  That criterion is only valid for simple polytopes,
    so non-simple input is rejected."""
    if not is_simple(inc, d):
        raise InputError("not simple")
    cols = [inc.column_mask(v) for v in range(inc.n)]
    edges = []
    for u in range(inc.n):
        for v in range(u + 1, inc.n):
            if (cols[u] & cols[v]).bit_count() == d - 1:
                edges.append((u, v))
    return Graph(inc.n, tuple(edges))


def polytope_edges(inc: IncidenceMatrix) -> list[tuple[int, int]]:
    """All edges of an arbitrary polytope from incidences alone: {u,v} is an
    edge iff it is closed under the facet-intersection closure operator."""
    edges = []
    for u in range(inc.n):
        for v in range(u + 1, inc.n):
            pair = (1 << u) | (1 << v)
            if closure_mask(pair, inc.row_masks) == pair:
                edges.append((u, v))
    return edges


def restrict_to_near(inc: IncidenceMatrix) -> tuple[IncidenceMatrix, tuple[int, ...]]:
    """Incidences of the unbounded polyhedron behind a closure's matrix.

    Drops the far-face vertex columns and every row contained in the far
    face (the facet at infinity).  Returns the restricted matrix (far_face
    unset) and the original indices of the surviving vertex columns.
    """
    if inc.far_face is None:
        raise InputError("far-face data required to restrict incidences")
    near = [i for i in range(inc.n) if not inc.far_face >> i & 1]
    position = {orig: new for new, orig in enumerate(near)}
    rows = []
    for row in inc.row_masks:
        if row & ~inc.far_face == 0:
            continue
        rows.append(mask_from_indices(position[i] for i in indices_from_mask(row)
                                      if i in position))
    return IncidenceMatrix(len(near), tuple(rows)), tuple(near)
