"""Polyhedron representations and vertex enumeration.

An `HRep` is a system of inequalities a.x <= b; a `VRep` lists vertices and
(normalized) extreme ray directions.  `projective_closure` turns a pointed
unbounded polyhedron into a projectively equivalent polytope inside the
standard simplex, with the directions of unboundedness realized on the
hyperplane sum(x) = 1.

Three enumerators are provided:

* `enumerate_vertices_bruteforce` solves every d-subset of rows; it is the
  independent oracle for everything else and is budget-guarded.
* `enumerate_vertices_pivoting` walks the vertex-edge graph, enumerating
  edge directions at each vertex from (d-1)-subsets of its active rows; it
  is exact on degenerate (non-simple) polyhedra as well.
* `reverse_search_vertices` is the classic reverse search for simple
  polyhedra under a generic objective, with a ratio test that flags
  unbounded edges.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Optional, Sequence

from .errors import BudgetExceededError, InputError, InternalError
from .linalg import ZERO, ONE, Vector, as_vector, dot, nullspace, rank, solve_linear_system
from .lp import LpStatus, lp_solve

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class HRep:
    """Inequality description: rows (a, b) each meaning a.x <= b."""

    dim: int
    rows: tuple[tuple[Vector, Fraction], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dimension must be at least 1")
        if not self.rows:
            raise InputError("an H-representation needs at least one row")
        for a, _ in self.rows:
            if len(a) != self.dim:
                raise InputError("row length does not match dimension")

    @classmethod
    def from_rows(cls, dim: int, rows: Sequence[tuple[Sequence, object]]) -> "HRep":
        return cls(dim, tuple((as_vector(a), Fraction(b)) for a, b in rows))

    def coefficient_rows(self) -> list[Vector]:
        return [a for a, _ in self.rows]

    def rhs(self) -> list[Fraction]:
        return [b for _, b in self.rows]

    def contains(self, x: Sequence[Fraction]) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)


def normalize_ray(direction: Sequence[Fraction]) -> Vector:
    """Scale by a positive factor so the first nonzero entry has absolute value 1."""
    lead = next((x for x in direction if x != 0), None)
    if lead is None:
        raise InputError("zero vector is not a ray direction")
    scale = ONE / abs(lead)
    return tuple(x * scale for x in direction)


@dataclass(frozen=True)
class VRep:
    """Vertex/ray description.  Vertices are duplicate-free and sorted;
    rays are normalized (first nonzero entry +-1), duplicate-free, sorted."""

    dim: int
    vertices: tuple[Vector, ...]
    rays: tuple[Vector, ...]

    @classmethod
    def build(cls, dim: int, vertices, rays) -> "VRep":
        vs = sorted(set(tuple(v) for v in vertices))
        rs = sorted(set(normalize_ray(r) for r in rays))
        return cls(dim, tuple(vs), tuple(rs))


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertex indices; optionally with per-edge orientation
    tags (+1 means oriented low->high) and with pivot directions that were
    found unbounded, as (vertex index, ray index) pairs."""

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    orientation: Optional[tuple[int, ...]] = None
    unbounded_edges: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class ClosureResult:
    """Outcome of `projective_closure`.

    `closure` is the polytope inside the standard simplex.  `translation`
    and `rho` (with its exact inverse `rho_inv`) are the affine pieces of
    the transform; `far_inequality` indexes the closure row realizing
    sum(x) <= 1.
    """

    closure: HRep
    translation: Vector
    rho: tuple[Vector, ...]
    rho_inv: tuple[Vector, ...]
    far_inequality: int

    def map_point(self, x: Sequence[Fraction]) -> Vector:
        """Image in the closure of an ordinary point of the polyhedron."""
        y = _mat_vec(self.rho, [xi - vi for xi, vi in zip(x, self.translation)])
        denom = ONE + sum(y, ZERO)
        if denom <= 0:
            raise InternalError("point maps outside the affine chart")
        return tuple(yi / denom for yi in y)

    def map_ray(self, direction: Sequence[Fraction]) -> Vector:
        """Far-face vertex of the closure corresponding to a recession direction."""
        y = _mat_vec(self.rho, direction)
        total = sum(y, ZERO)
        if total <= 0:
            raise InputError("not a recession direction of the polyhedron")
        return tuple(yi / total for yi in y)

    def unmap_point(self, z: Sequence[Fraction]) -> Vector:
        """Preimage of a closure point below the far hyperplane."""
        s = sum(z, ZERO)
        if s >= 1:
            raise InputError("far-face points have no ordinary preimage")
        y = [zi / (ONE - s) for zi in z]
        x = _mat_vec(self.rho_inv, y)
        return tuple(xi + vi for xi, vi in zip(x, self.translation))

    def unmap_far_vertex(self, z: Sequence[Fraction]) -> Vector:
        """Recession direction of the polyhedron behind a far-face vertex."""
        return normalize_ray(_mat_vec(self.rho_inv, z))


def _mat_vec(rows: Sequence[Vector], v: Sequence[Fraction]) -> list[Fraction]:
    return [dot(r, v) for r in rows]


def _canonical_row(a: Sequence[Fraction], b: Fraction) -> tuple[Vector, Fraction]:
    """Clear denominators and divide by the gcd; preserves the inequality."""
    denoms = [x.denominator for x in a] + [b.denominator]
    scale = lcm(*denoms) if denoms else 1
    ints = [int(x * scale) for x in a] + [int(b * scale)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def _matrix_inverse(rows: Sequence[Vector]) -> list[Vector]:
    d = len(rows)
    cols = []
    for j in range(d):
        e = [ONE if i == j else ZERO for i in range(d)]
        col = solve_linear_system(rows, e)
        if col is None:
            raise InternalError("singular matrix passed to inverse")
        cols.append(col)
    return [tuple(cols[j][i] for j in range(d)) for i in range(d)]


def projective_closure(h: HRep) -> ClosureResult:
    """Bounded polytope projectively equivalent to the pointed polyhedron h.

    The construction finds one vertex, translates it to the origin, maps a
    rank-d set of its active constraints onto the coordinate hyperplanes,
    and then pushes the hyperplane at infinity onto sum(x) = 1.  Errors:
    "empty polyhedron" when infeasible, "not pointed" otherwise when no
    vertex exists.
    """
    d = h.dim
    a_rows = [list(a) for a in h.coefficient_rows()]
    b = h.rhs()
    out = lp_solve(a_rows, b, [ZERO] * d)
    if out.status is LpStatus.INFEASIBLE:
        raise InputError("empty polyhedron")
    v = out.point
    active = [i for i, (a, bi) in enumerate(h.rows) if dot(a, v) == bi]
    # dual basis: scan active constraints in input order, keep rank-increasing rows
    basis_rows: list[Vector] = []
    for i in active:
        candidate = basis_rows + [h.rows[i][0]]
        if rank(candidate) > len(basis_rows):
            basis_rows.append(h.rows[i][0])
        if len(basis_rows) == d:
            break
    if len(basis_rows) < d:
        raise InputError("not pointed")
    rho = tuple(tuple(-x for x in row) for row in basis_rows)  # R = -W
    rho_inv = tuple(_matrix_inverse(rho))

    new_rows = []
    for a, bi in h.rows:
        beta = bi - dot(a, v)
        a_prime = tuple(dot(a, tuple(rho_inv[i][j] for i in range(d))) for j in range(d))
        mapped = tuple(x + beta for x in a_prime)
        new_rows.append(_canonical_row(mapped, beta))
    new_rows.append((tuple(ONE for _ in range(d)), ONE))
    closure = HRep(d, tuple(new_rows))
    return ClosureResult(closure, tuple(v), rho, rho_inv, len(new_rows) - 1)


def _solve_square_unique(rows: list[Vector], rhs: list[Fraction]) -> Optional[list[Fraction]]:
    """Solution of a square system if the matrix is invertible, else None."""
    d = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][d] for i in range(d)]


def enumerate_vertices_bruteforce(h: HRep, budget: int = DEFAULT_BUDGET) -> VRep:
    """Oracle enumeration: solve every d-subset of rows, keep feasible solutions.

    Rays are recovered by running the same procedure on the projective
    closure and pulling the far-face vertices back as directions.
    """
    vertices = _bruteforce_points(h, budget)
    if not vertices:
        return VRep.build(h.dim, [], [])
    rays: list[Vector] = []
    closure = projective_closure(h)
    far_candidates = _bruteforce_points(closure.closure, budget)
    for z in far_candidates:
        if sum(z, ZERO) == 1:
            rays.append(closure.unmap_far_vertex(z))
    return VRep.build(h.dim, vertices, rays)


def _bruteforce_points(h: HRep, budget: int) -> list[Vector]:
    m = len(h.rows)
    d = h.dim
    if m < d:
        return []
    if comb(m, d) > budget:
        raise BudgetExceededError(
            f"instance too large for brute force: C({m},{d}) subsets exceed budget {budget}")
    a_rows = h.coefficient_rows()
    b = h.rhs()
    seen = set()
    for subset in itertools.combinations(range(m), d):
        x = _solve_square_unique([a_rows[i] for i in subset], [b[i] for i in subset])
        if x is None:
            continue
        point = tuple(x)
        if point in seen:
            continue
        if all(dot(a, point) <= bi for a, bi in h.rows):
            seen.add(point)
    return sorted(seen)


def enumerate_vertices_pivoting(h: HRep, budget: int = DEFAULT_BUDGET) -> VRep:
    """Exact vertex/ray enumeration by walking the bounded vertex-edge graph.

    At each vertex the incident edge directions are the one-dimensional
    null spaces of (d-1)-subsets of its active rows that point into the
    polyhedron, so degenerate vertices are handled without perturbation.
    The budget bounds the total number of subsets inspected.
    """
    d = h.dim
    a_rows = h.coefficient_rows()
    b = h.rhs()
    out = lp_solve(a_rows, b, [ZERO] * d)
    if out.status is LpStatus.INFEASIBLE:
        raise InputError("empty polyhedron")
    start = out.point
    active0 = [a for a, bi in zip(a_rows, b) if dot(a, start) == bi]
    if rank(active0) < d:
        raise InputError("not pointed")

    work = 0
    visited = {start}
    stack = [start]
    rays: set[Vector] = set()
    while stack:
        x = stack.pop()
        act = [i for i in range(len(a_rows)) if dot(a_rows[i], x) == b[i]]
        work += comb(len(act), d - 1)
        if work > budget:
            raise BudgetExceededError(
                f"instance too large for pivot enumeration (budget {budget})")
        directions: set[Vector] = set()
        for subset in itertools.combinations(act, d - 1):
            kernel = nullspace([a_rows[i] for i in subset])
            if len(kernel) != 1:
                continue
            v = kernel[0]
            signs = [dot(a_rows[i], v) for i in act]
            if all(s <= 0 for s in signs):
                directions.add(normalize_ray(v))
            elif all(s >= 0 for s in signs):
                directions.add(normalize_ray([-c for c in v]))
        for v in directions:
            t_best = None
            for a, bi in zip(a_rows, b):
                av = dot(a, v)
                if av > 0:
                    t = (bi - dot(a, x)) / av
                    if t_best is None or t < t_best:
                        t_best = t
            if t_best is None:
                rays.add(v)
                continue
            y = tuple(xi + t_best * vi for xi, vi in zip(x, v))
            if y not in visited:
                visited.add(y)
                stack.append(y)
    return VRep.build(d, visited, rays)


def bounded_generic_objective(h: HRep, attempt: int = 0, seed: int = 0) -> Vector:
    """Objective bounded above on a pointed h, with a seeded perturbation.

    The coefficient sum of all rows strictly decreases along every nonzero
    recession direction of a pointed region, so it is bounded above; the
    perturbation (shrunk on every retry attempt) breaks ties between
    vertices.  Genericity is verified by the caller.
    """
    d = h.dim
    base = [sum((a[j] for a, _ in h.rows), ZERO) for j in range(d)]
    rng = random.Random(f"objective:{seed}:{attempt}")
    scale = Fraction(1, 2 ** (16 + 8 * attempt))
    return tuple(base[j] + scale * rng.randrange(1, 2**12) for j in range(d))


def reverse_search_with_retries(h: HRep, seed: int = 0,
                                attempts: int = 64) -> tuple[VRep, Graph]:
    """Reverse search under automatically chosen objectives, retrying with a
    fresh perturbation whenever genericity or boundedness fails."""
    last = None
    for attempt in range(attempts):
        try:
            return reverse_search_vertices(h, bounded_generic_objective(h, attempt, seed))
        except InputError as exc:
            last = exc
            message = str(exc)
            if "generic" not in message and "unbounded" not in message:
                raise
    raise InputError(f"no generic objective found after {attempts} attempts: {last}")


def reverse_search_vertices(h: HRep, objective: Sequence[Fraction]) -> tuple[VRep, Graph]:
    """Reverse search over a simple pointed polyhedron with a generic objective.

    Returns all vertices plus the bounded vertex-edge graph; pivot
    directions whose ratio test never blocks are reported as rays and
    flagged in `Graph.unbounded_edges`.  Raises "not simple" when a visited
    vertex lies on more than d facets, and "objective not generic" when two
    vertices share an objective value.
    """
    d = h.dim
    a_rows = h.coefficient_rows()
    b = h.rhs()
    c = as_vector(objective)
    if len(c) != d:
        raise InputError("objective length does not match dimension")
    out = lp_solve(a_rows, b, list(c))
    if out.status is LpStatus.INFEASIBLE:
        raise InputError("empty polyhedron")
    if out.status is LpStatus.UNBOUNDED:
        raise InputError("objective unbounded on polyhedron")
    root = out.point

    def active_basis(x: Vector) -> list[int]:
        act = [i for i in range(len(a_rows)) if dot(a_rows[i], x) == b[i]]
        if len(act) != d or rank([a_rows[i] for i in act]) != d:
            raise InputError("not simple")
        return act

    def pivot(x: Vector, act: list[int], k: int):
        """Direction relaxing row k; returns ('ray', v) or ('vertex', y, v)."""
        # v solves: a_i . v = 0 for i in act - {k}, a_k . v = -1
        mat = [a_rows[i] for i in act if i != k] + [a_rows[k]]
        rhs = [ZERO] * (d - 1) + [Fraction(-1)]
        v = _solve_square_unique([list(r) for r in mat], rhs)
        if v is None:
            raise InputError("not simple")
        t_best = None
        blockers: list[int] = []
        for i in range(len(a_rows)):
            av = dot(a_rows[i], v)
            if av > 0:
                t = (b[i] - dot(a_rows[i], x)) / av
                if t_best is None or t < t_best:
                    t_best, blockers = t, [i]
                elif t == t_best:
                    blockers.append(i)
        if t_best is None:
            return ("ray", normalize_ray(v))
        if t_best == 0 or len(blockers) > 1:
            raise InputError("not simple")
        y = tuple(xi + t_best * vi for xi, vi in zip(x, v))
        return ("vertex", y, tuple(v))

    def ascent_neighbor(x: Vector, act: list[int]) -> Optional[Vector]:
        """Smallest-index improving pivot (Bland); None at the optimum."""
        for k in act:
            res = pivot(x, act, k)
            if res[0] == "ray":
                continue
            _, y, v = res
            if dot(c, v) > 0:
                return y
        return None

    vertices: list[Vector] = []
    edges: set[tuple[Vector, Vector]] = set()
    ray_flags: list[tuple[Vector, Vector]] = []
    seen = set()
    stack = [root]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        vertices.append(x)
        act = active_basis(x)
        for k in act:
            res = pivot(x, act, k)
            if res[0] == "ray":
                ray_flags.append((x, res[1]))
                continue
            _, y, _ = res
            vx, vy = dot(c, x), dot(c, y)
            if vx == vy:
                raise InputError("objective not generic")
            edges.add((min(x, y), max(x, y)))
            if vy < vx:
                # y is a child iff its Bland ascent pivot leads back to x
                y_act = active_basis(y)
                if ascent_neighbor(y, y_act) == x:
                    stack.append(y)
    values = [dot(c, x) for x in vertices]
    if len(set(values)) != len(values):
        raise InputError("objective not generic")

    vrep = VRep.build(d, vertices, [r for _, r in ray_flags])
    index = {v: i for i, v in enumerate(vrep.vertices)}
    ray_index = {r: i for i, r in enumerate(vrep.rays)}
    edge_list = sorted((index[u], index[v]) if index[u] < index[v] else (index[v], index[u])
                       for u, v in edges)
    unbounded = sorted((index[x], ray_index[normalize_ray(r)]) for x, r in ray_flags)
    return vrep, Graph(len(vrep.vertices), tuple(edge_list), None, tuple(unbounded))
