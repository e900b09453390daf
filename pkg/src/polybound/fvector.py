"""Face numbers of simple polyhedra via an oriented vertex-edge graph.

Orienting the edges of the closure polytope along a generic objective that
is larger on every far-face vertex than on every ordinary vertex makes
face counting local: each face has a unique source and a unique sink, the
sink is a far vertex exactly for the faces that meet the far face, and at
a simple vertex the k-subsets of in-arcs (out-arcs) biject with the
k-faces having that vertex as sink (source).

Counting sinks over the ordinary vertices therefore yields the f-vector of
the bounded subcomplex, and counting sources yields the f-vector of the
unbounded polyhedron itself.  Only the ordinary vertices need to be
simple, so closures whose far vertices are degenerate are fine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import InputError, InternalError
from .incidence import IncidenceMatrix, is_simple, polytope_edges, indices_from_mask
from .linalg import ONE, Vector, dot
from .polyhedron import VRep


@dataclass(frozen=True)
class HVector:
    """Degree histograms: `h[k]` counts ordinary vertices of out-degree k,
    `h_inf[k]` far-face vertices of in-degree k."""

    h: tuple[int, ...]
    h_inf: tuple[int, ...]


@dataclass(frozen=True)
class FVector:
    f: tuple[int, ...]
    total: int  # sum of face counts plus the empty face

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "FVector":
        return cls(tuple(counts), sum(counts) + 1)


def generic_ray_objective(v: VRep, far: Iterable[int], seed: int = 0) -> Vector:
    """Objective for closure coordinates: exact, pairwise-distinct values on
    all vertices, with every far-face value above every ordinary value.

    Starts from the all-ones vector (the far face lies on sum(x) = 1, all
    other vertices below it) and adds a seeded rational perturbation that
    shrinks on every retry; both conditions are verified exactly."""
    far = set(far)
    d = v.dim
    if not v.vertices:
        raise InputError("no vertices to separate")
    for attempt in range(64):
        rng = random.Random(f"ray-objective:{seed}:{attempt}")
        eps = Fraction(1, 2 ** (4 + 2 * attempt))
        c = tuple(ONE + eps * Fraction(rng.randrange(1, 2**20), 2**20)
                  for _ in range(d))
        values = [dot(c, p) for p in v.vertices]
        if len(set(values)) != len(values):
            continue
        far_vals = [val for i, val in enumerate(values) if i in far]
        near_vals = [val for i, val in enumerate(values) if i not in far]
        if far_vals and near_vals and min(far_vals) <= max(near_vals):
            continue
        return c
    raise InputError("could not find a generic far-dominant objective")


def f_vector_simple(inc: IncidenceMatrix, coords: VRep, d: int,
                    seed: int = 0) -> tuple[FVector, FVector, HVector]:
    """(f-vector of the bounded subcomplex, f-vector of the polyhedron,
    degree histograms) for a simple pointed polyhedron given its closure's
    incidences (far face attached) and vertex coordinates."""
    if inc.far_face is None:
        raise InputError("far-face data required")
    if inc.n != len(coords.vertices):
        raise InputError("incidences and coordinates disagree on vertex count")
    far = set(indices_from_mask(inc.far_face))
    near = [i for i in range(inc.n) if i not in far]
    counts = [0] * inc.n
    for row in inc.row_masks:
        for i in indices_from_mask(row):
            counts[i] += 1
    if any(counts[i] != d for i in near):
        raise InputError("not simple")

    c = generic_ray_objective(coords, far, seed)
    values = [dot(c, p) for p in coords.vertices]
    out_deg = [0] * inc.n
    in_deg = [0] * inc.n
    for u, v in polytope_edges(inc):
        lo, hi = (u, v) if values[u] < values[v] else (v, u)
        out_deg[lo] += 1
        in_deg[hi] += 1

    # near vertices are simple, so their degrees stay <= d; far vertices of a
    # non-simple closure can exceed d, so the far histograms size to fit
    width = max([d] + in_deg + out_deg) + 1
    h = [0] * (d + 1)
    h_inf = [0] * width
    sink_near = [0] * (d + 1)
    out_far = [0] * width
    for i in range(inc.n):
        if i in far:
            h_inf[in_deg[i]] += 1
            out_far[out_deg[i]] += 1
        else:
            h[out_deg[i]] += 1
            sink_near[in_deg[i]] += 1

    f_all = [sum(comb(i, k) * h[i] for i in range(k, d + 1)) for k in range(d + 1)]
    f_bounded = [sum(comb(i, k) * sink_near[i] for i in range(k, d + 1))
                 for k in range(d + 1)]
    if is_simple(inc, d):
        # with a fully simple closure the far in/out histograms give the
        # same bounded counts; disagreement means an orientation bug
        alt = [sum(comb(i, k) * (h[i] + out_far[i] - h_inf[i]) for i in range(k, d + 1))
               for k in range(d + 1)]
        if alt != f_bounded:
            raise InternalError("degree bookkeeping mismatch on simple closure")
    return (FVector.from_counts(f_bounded), FVector.from_counts(f_all),
            HVector(tuple(h), tuple(h_inf)))
