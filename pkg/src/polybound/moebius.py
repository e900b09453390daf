"""Bounded subcomplex from the incidences of the unbounded polyhedron alone.

When no far-face information is available, boundedness of a face is read
off the Moebius function of the poset of vertex sets of faces (all
intersections of incidence rows, plus the empty set): an element is the
vertex set of a bounded face exactly when its Moebius number is nonzero.

`moebius_generation` interleaves the poset search with the Moebius
recursion.  The work queue is ordered by vertex-set cardinality, a linear
extension of containment, so when an element is popped every element
strictly below it has been processed; its Moebius number is then an exact
sum over the registry of bounded elements seen so far (unbounded elements
contribute zero and need not be stored).  `vertex_poset` materializes the
whole poset and serves as the independent oracle.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceededError, InputError, InternalError
from .bounded import HasseDiagram, HasseNode, covers
from .incidence import IncidenceMatrix, indices_from_mask

DEFAULT_ELEMENT_BUDGET = 10**6


@dataclass(frozen=True)
class VertexPoset:
    """All vertex sets of proper faces (bitmasks, including 0 for the empty
    face) ordered by containment, with their Moebius numbers; `mu_top` is
    the number of the artificial top element."""

    n: int
    elements: tuple[int, ...]
    mu: dict[int, int]
    mu_top: int

    @property
    def size(self) -> int:
        return len(self.elements)


class BoundedRegistry:
    """Bounded poset elements popped so far, with their Moebius numbers.

    The stored pairs are exactly the nonzero-Moebius elements, so for any
    element H whose strict subsets have all been processed,
    `mu_hat(H)` is its exact Moebius number.
    """

    __slots__ = ("_mu",)

    def __init__(self):
        self._mu: dict[int, int] = {}

    def add(self, mask: int, mu: int) -> None:
        if mu == 0:
            raise InternalError("registry stores bounded elements only")
        self._mu[mask] = mu

    def below(self, mask: int) -> list[tuple[int, int]]:
        """The (vertex_set, mu) pairs strictly below `mask`."""
        return [(s, m) for s, m in self._mu.items() if s != mask and s & ~mask == 0]

    def mu_hat(self, mask: int) -> int:
        if mask == 0:
            return 1
        return -sum(m for s, m in self._mu.items() if s != mask and s & ~mask == 0)


def vertex_poset(inc: IncidenceMatrix,
                 budget: int = DEFAULT_ELEMENT_BUDGET) -> VertexPoset:
    """Poset of all nonempty intersections of incidence rows, plus the empty
    set, with Moebius numbers computed by the plain recursion."""
    if inc.far_face is not None:
        raise InputError("expected incidences without far-face data")
    rows = inc.row_masks
    elements = set(rows)
    frontier = set(rows)
    while frontier:
        fresh = set()
        for s in frontier:
            for r in rows:
                t = s & r
                if t and t not in elements:
                    elements.add(t)
                    fresh.add(t)
            if len(elements) > budget:
                raise BudgetExceededError(
                    f"vertex poset exceeds element budget {budget}")
        frontier = fresh
    elements.add(0)
    ordered = sorted(elements, key=lambda s: (s.bit_count(), indices_from_mask(s)))
    mu: dict[int, int] = {}
    for s in ordered:
        if s == 0:
            mu[s] = 1
        else:
            mu[s] = -sum(m for t, m in mu.items() if t != s and t & ~s == 0)
    mu_top = -sum(mu.values())
    return VertexPoset(inc.n, tuple(ordered), mu, mu_top)


def moebius_oracle_filter(vp: VertexPoset) -> set[int]:
    """Vertex sets of bounded faces: the elements with nonzero Moebius number."""
    return {s for s in vp.elements if vp.mu[s] != 0}


def moebius_generation(inc: IncidenceMatrix, max_dim: Optional[int] = None,
                       order: str = "bycard",
                       budget: int = DEFAULT_ELEMENT_BUDGET) -> HasseDiagram:
    """Hasse diagram of the bounded faces from the incidences of the
    unbounded polyhedron, without any far-face data.

    `order` is "bycard" (cardinality-ordered queue, the guaranteed-correct
    linear extension) or "fifo" (plain breadth-first, kept for fidelity
    experiments).  With `max_dim`, faces above that rank are not emitted.
    """
    if inc.far_face is not None:
        raise InputError("far-face data present; restrict to near vertices first")
    if order not in ("bycard", "fifo"):
        raise InputError(f"unknown queue discipline {order!r}")

    registry = BoundedRegistry()
    node_rank: dict[int, int] = {0: -1}     # mask -> rank, set at creation
    emitted: dict[int, int] = {}            # mask -> final node index
    nodes: list[HasseNode] = []
    pending_arcs: list[tuple[int, int]] = []  # (parent mask, child mask)
    seq = 0
    heap: list = []
    fifo = deque()

    def push(mask: int):
        nonlocal seq
        if order == "bycard":
            heapq.heappush(heap, (mask.bit_count(), seq, mask))
        else:
            fifo.append(mask)
        seq += 1

    def pop() -> int:
        return heapq.heappop(heap)[2] if order == "bycard" else fifo.popleft()

    push(0)
    created = {0}
    while heap or fifo:
        face = pop()
        mu = registry.mu_hat(face)
        if mu == 0:
            continue  # unbounded face: not emitted, not expanded
        registry.add(face, mu)
        rank = node_rank[face]
        emitted[face] = len(nodes)
        nodes.append(HasseNode(len(nodes), face, rank))
        if len(nodes) > budget:
            raise BudgetExceededError(f"bounded complex exceeds element budget {budget}")
        if max_dim is not None and rank >= max_dim:
            continue
        for cover in covers(face, inc):
            if cover not in created:
                created.add(cover)
                node_rank[cover] = rank + 1
                push(cover)
            pending_arcs.append((face, cover))

    arcs = []
    by_mask = {nd.vertex_set: nd for nd in nodes}
    for parent, child in pending_arcs:
        if child in emitted:
            if by_mask[child].rank != by_mask[parent].rank + 1:
                raise InternalError("cover arcs must raise rank by one")
            arcs.append((emitted[parent], emitted[child]))
    arcs.sort()
    return HasseDiagram(inc.n, nodes, arcs, 0, None)
