"""Closure operator, cover generation, face tree, and the bounded-subcomplex
algorithms that work on a closure's incidence matrix.

The face poset is explored bottom-up from the empty face.  Covers of a
closed vertex set H are the inclusion-minimal sets among the closures
cl(H + {v}); a face of the closure polytope is bounded exactly when its
vertex set avoids the far face, so the main algorithm simply refuses to
step onto far-meeting faces and thereby runs in time proportional to the
bounded part alone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, InternalError
from .incidence import IncidenceMatrix, closure_mask, indices_from_mask

#: Distinguished "improper face" result of the closure operator.
WHOLE = None


def closure(mask: int, inc: IncidenceMatrix) -> Optional[int]:
    """Intersection of the facet rows containing `mask`; WHOLE (None) when
    no facet contains it."""
    return closure_mask(mask, inc.row_masks)


def covers(mask: int, inc: IncidenceMatrix) -> list[int]:
    """Faces covering the closed set `mask`: the inclusion-minimal closures
    cl(mask + {v}) over vertices v outside mask, deduplicated and sorted by
    vertex tuple."""
    candidates: set[int] = set()
    rest = inc.all_mask & ~mask
    v = 0
    while rest:
        if rest & 1:
            cl = closure_mask(mask | (1 << v), inc.row_masks)
            if cl is not None:
                candidates.add(cl)
        rest >>= 1
        v += 1
    minimal = [c for c in candidates
               if not any(o != c and o & ~c == 0 for o in candidates)]
    return sorted(minimal, key=indices_from_mask)


class FaceTree:
    """Trie over canonical generator sequences of bounded faces.

    The canonical path of a face repeatedly appends the smallest vertex of
    the face not yet inside the closure of the generators chosen so far;
    the empty face lives at the root.  Node ids are handed out in insertion
    order, so they double as discovery-order diagram ids.
    """

    __slots__ = ("_inc", "_root", "_count")

    def __init__(self, inc: IncidenceMatrix):
        self._inc = inc
        self._root = {}
        self._count = 0

    def _path(self, face: int) -> list[int]:
        gens = 0
        current = 0
        path = []
        while current != face:
            v = (face & ~current & -(face & ~current)).bit_length() - 1
            gens |= 1 << v
            path.append(v)
            current = closure_mask(gens, self._inc.row_masks)
            if current is None or current & ~face:
                raise InputError("face tree expects a closed vertex set")
        return path

    def insert_or_find(self, face: int) -> tuple[int, bool]:
        node = self._root
        for v in self._path(face):
            node = node.setdefault(v, {})
        if "id" in node:
            return node["id"], False
        node["id"] = self._count
        self._count += 1
        return node["id"], True

    def find(self, face: int) -> Optional[int]:
        node = self._root
        for v in self._path(face):
            if v not in node:
                return None
            node = node[v]
        return node.get("id")

    def __len__(self) -> int:
        """Number of trie nodes (excluding the root)."""
        total = 0
        stack = [self._root]
        while stack:
            node = stack.pop()
            for key, child in node.items():
                if key != "id":
                    total += 1
                    stack.append(child)
        return total


def face_tree_insert_or_find(tree: FaceTree, face: int,
                             inc: IncidenceMatrix) -> tuple[int, bool]:
    """Functional form of FaceTree.insert_or_find (inc must match the tree's)."""
    if inc is not tree._inc:
        raise InputError("face tree belongs to a different incidence matrix")
    return tree.insert_or_find(face)


@dataclass(frozen=True)
class HasseNode:
    id: int
    vertex_set: int
    rank: int


@dataclass
class HasseDiagram:
    """Ranked DAG of faces; the root is the empty face at rank -1."""

    n: int
    nodes: list[HasseNode]
    arcs: list[tuple[int, int]]
    root_id: int = 0
    far_face: Optional[int] = None
    top_id: Optional[int] = None

    def node_count(self) -> int:
        return len(self.nodes)

    def f_vector(self) -> list[int]:
        """Face counts by rank, rank 0 upward (the empty face is excluded)."""
        top = max((nd.rank for nd in self.nodes), default=-1)
        hist = [0] * (top + 1)
        for nd in self.nodes:
            if nd.rank >= 0:
                hist[nd.rank] += 1
        return hist

    def vertex_sets(self) -> set[int]:
        return {nd.vertex_set for nd in self.nodes}

    def canonical(self):
        """Id-renaming-invariant form: sorted (rank, vertices) plus arcs as
        vertex-tuple pairs.  Two diagrams are isomorphic as ranked DAGs iff
        their canonical forms are equal (vertex sets are unique per face)."""
        by_id = {nd.id: nd for nd in self.nodes}
        faces = sorted((nd.rank, indices_from_mask(nd.vertex_set)) for nd in self.nodes)
        arcs = sorted((indices_from_mask(by_id[lo].vertex_set),
                       indices_from_mask(by_id[hi].vertex_set)) for lo, hi in self.arcs)
        return tuple(faces), tuple(arcs)


def selective_generation(inc: IncidenceMatrix, max_dim: Optional[int] = None) -> HasseDiagram:
    """Hasse diagram of the bounded faces, generated without ever visiting
    an unbounded one.

    Needs far-face data on `inc`; a cover is expanded only when its vertex
    set misses the far face.  With `max_dim` set, only faces of rank up to
    max_dim are emitted (the skeleton cutoff).
    """
    far = inc.far_face
    if far is None:
        raise InputError("far face required; use moebius_generation")
    tree = FaceTree(inc)
    root_id, fresh = tree.insert_or_find(0)
    if root_id != 0 or not fresh:
        raise InternalError("face tree must start empty")
    nodes = [HasseNode(0, 0, -1)]
    arcs: list[tuple[int, int]] = []
    if far == inc.all_mask:
        return HasseDiagram(inc.n, nodes, arcs, 0, far)
    queue = deque([(0, 0)])
    while queue:
        nid, face = queue.popleft()
        rank = nodes[nid].rank
        if max_dim is not None and rank >= max_dim:
            continue
        for cover in covers(face, inc):
            if cover & far:
                continue
            gid, new = tree.insert_or_find(cover)
            if new:
                nodes.append(HasseNode(gid, cover, rank + 1))
                queue.append((gid, cover))
            elif nodes[gid].rank != rank + 1:
                raise InternalError("cover arcs must raise rank by one")
            arcs.append((nid, gid))
    return HasseDiagram(inc.n, nodes, arcs, 0, far)


def full_face_lattice(inc: IncidenceMatrix) -> HasseDiagram:
    """Complete face lattice of a polytope, including the improper top face
    (whose node carries the full vertex set).  Ignores far-face data."""
    tree = FaceTree(inc)
    tree.insert_or_find(0)
    nodes = [HasseNode(0, 0, -1)]
    arcs: list[tuple[int, int]] = []
    coatoms: list[int] = []
    queue = deque([(0, 0)])
    while queue:
        nid, face = queue.popleft()
        rank = nodes[nid].rank
        ups = covers(face, inc)
        if not ups:
            coatoms.append(nid)
            continue
        for cover in ups:
            gid, new = tree.insert_or_find(cover)
            if new:
                nodes.append(HasseNode(gid, cover, rank + 1))
                queue.append((gid, cover))
            elif nodes[gid].rank != rank + 1:
                raise InternalError("cover arcs must raise rank by one")
            arcs.append((nid, gid))
    ranks = {nodes[c].rank for c in coatoms}
    if len(ranks) != 1:
        raise InternalError("facets of a polytope must share one rank")
    top_id = len(nodes)
    nodes.append(HasseNode(top_id, inc.all_mask, ranks.pop() + 1))
    for c in coatoms:
        arcs.append((c, top_id))
    return HasseDiagram(inc.n, nodes, arcs, 0, inc.far_face, top_id)


def filter_bounded(hd: HasseDiagram, far: int) -> HasseDiagram:
    """Bounded subdiagram of a full face lattice: drops the improper top
    node and every face meeting `far`, with incident arcs."""
    keep = {}
    nodes = []
    for nd in hd.nodes:
        if nd.id == hd.top_id:
            continue
        if nd.vertex_set & far:
            continue
        keep[nd.id] = len(nodes)
        nodes.append(HasseNode(len(nodes), nd.vertex_set, nd.rank))
    arcs = sorted((keep[lo], keep[hi]) for lo, hi in hd.arcs
                  if lo in keep and hi in keep)
    return HasseDiagram(hd.n, nodes, arcs, keep[hd.root_id], far)


def relabel_vertices(hd: HasseDiagram, index_map: dict[int, int], n: int,
                     far_face: Optional[int] = None) -> HasseDiagram:
    """Re-express all vertex sets through index_map (old index -> new index)."""
    nodes = []
    for nd in hd.nodes:
        mask = 0
        for i in indices_from_mask(nd.vertex_set):
            mask |= 1 << index_map[i]
        nodes.append(HasseNode(nd.id, mask, nd.rank))
    return HasseDiagram(n, nodes, list(hd.arcs), hd.root_id, far_face, hd.top_id)
