"""Exact linear programming over the rationals.

`lp_solve` maximizes (or minimizes) c.x over {x : A x <= b} with x free,
using a two-phase tableau simplex with Bland's anti-cycling rule, so it
terminates without any numerical tolerances.  Optimal points are
post-processed ("purified") onto a vertex whenever the feasible region is
pointed; the same purification doubles as the vertex finder used by the
projective closure construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, InternalError
from .linalg import ZERO, ONE, Vector, dot, nullspace

MAX = "max"
MIN = "min"


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    point: Optional[Vector] = None
    objective: Optional[Fraction] = None


def _simplex(tableau, rhs, basis, costs, ncols):
    """Run Bland-rule simplex on the given tableau in place.

    tableau rows are already expressed in the current basis.  Returns
    "optimal" or "unbounded".
    """
    m = len(tableau)
    while True:
        # reduced costs r_j = c_j - c_B . T[:,j]
        entering = -1
        for j in range(ncols):
            rj = costs[j]
            for i in range(m):
                cb = costs[basis[i]]
                if cb:
                    rj -= cb * tableau[i][j]
            if rj > 0:
                entering = j
                break
        if entering < 0:
            return "optimal"
        # ratio test; ties broken by smallest basic variable index (Bland)
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(tableau, rhs, basis, leave, entering)


def _pivot(tableau, rhs, basis, row, col):
    piv = tableau[row][col]
    inv = ONE / piv
    tableau[row] = [x * inv for x in tableau[row]]
    rhs[row] *= inv
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            f = tableau[i][col]
            tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[row])]
            rhs[i] -= f * rhs[row]
    basis[row] = col


def purify_to_vertex(rows, b, c, x):
    """Slide an optimal point along the optimal face until it is a vertex.

    Repeatedly moves along a null direction of the active constraints
    (keeping c.x fixed) until a new constraint blocks; each step raises the
    active rank, so at most d steps happen.  Returns (point, is_vertex);
    is_vertex is False exactly when a full line inside the optimal face was
    found, i.e. the region is not pointed.
    """
    d = len(x)
    x = list(x)
    while True:
        active = [list(a) for a, bi in zip(rows, b) if dot(a, x) == bi]
        stack = active + ([list(c)] if any(ci != 0 for ci in c) else [])
        if not stack:
            stack = [[ZERO] * d]
        kernel = nullspace(stack)
        if not kernel:
            return tuple(x), True
        v = kernel[0]
        t_fwd = _blocking_step(rows, b, x, v)
        if t_fwd is not None:
            x = [xi + t_fwd * vi for xi, vi in zip(x, v)]
            continue
        t_bwd = _blocking_step(rows, b, x, [-vi for vi in v])
        if t_bwd is not None:
            x = [xi - t_bwd * vi for xi, vi in zip(x, v)]
            continue
        return tuple(x), False  # line through x: not pointed


def _blocking_step(rows, b, x, v):
    best = None
    for a, bi in zip(rows, b):
        av = dot(a, v)
        if av > 0:
            t = (bi - dot(a, x)) / av
            if best is None or t < best:
                best = t
    return best


def lp_solve(a, b: Sequence, c: Sequence, sense: str = MAX, purify: bool = True) -> LpOutcome:
    """Exact simplex for max/min c.x subject to A x <= b (x free).

    With c = 0 this is the feasibility test.  When the region is pointed,
    an Optimal outcome carries a vertex of the region.
    """
    from .linalg import _as_row_list

    rows = _as_row_list(a)
    rhs_in = [Fraction(x) for x in b]
    obj = [Fraction(x) for x in c]
    if len(rows) != len(rhs_in):
        raise InputError("A and b row counts differ")
    d = len(rows[0]) if rows else 0
    if any(len(r) != d for r in rows):
        raise InputError("ragged constraint matrix")
    if len(obj) != d:
        raise InputError("objective length does not match variable count")
    if sense not in (MAX, MIN):
        raise InputError(f"unknown sense {sense!r}")
    if sense == MIN:
        flipped = lp_solve(rows, rhs_in, [-x for x in obj], MAX, purify=purify)
        if flipped.status is LpStatus.OPTIMAL:
            return LpOutcome(LpStatus.OPTIMAL, flipped.point, -flipped.objective)
        return flipped

    m = len(rows)
    # columns: x = u - w split (2d), slacks (m), artificials appended per need
    base_cols = 2 * d + m
    tableau = []
    rhs = []
    basis = []
    art_cols = []
    for i in range(m):
        row = [ZERO] * base_cols
        for j in range(d):
            row[j] = rows[i][j]
            row[d + j] = -rows[i][j]
        row[2 * d + i] = ONE
        ri = rhs_in[i]
        if ri < 0:
            row = [-x for x in row]
            ri = -ri
        tableau.append(row)
        rhs.append(ri)
    # rows whose slack got negated need an artificial to provide a basis
    for i in range(m):
        if tableau[i][2 * d + i] == ONE:
            basis.append(2 * d + i)
        else:
            col = base_cols + len(art_cols)
            art_cols.append(col)
            for k in range(m):
                tableau[k].append(ONE if k == i else ZERO)
            basis.append(col)
    ncols = base_cols + len(art_cols)

    if art_cols:
        costs1 = [ZERO] * ncols
        for col in art_cols:
            costs1[col] = Fraction(-1)
        status = _simplex(tableau, rhs, basis, costs1, ncols)
        if status != "optimal":
            raise InternalError("phase I cannot be unbounded")
        if any(rhs[i] != 0 for i in range(len(basis)) if basis[i] in art_cols):
            return LpOutcome(LpStatus.INFEASIBLE)
        _expel_artificials(tableau, rhs, basis, base_cols, set(art_cols))

    costs2 = [ZERO] * base_cols
    for j in range(d):
        costs2[j] = obj[j]
        costs2[d + j] = -obj[j]
    for i in range(len(tableau)):
        tableau[i] = tableau[i][:base_cols]
    status = _simplex(tableau, rhs, basis, costs2, base_cols)
    if status == "unbounded":
        return LpOutcome(LpStatus.UNBOUNDED)

    x = [ZERO] * d
    for i, var in enumerate(basis):
        if var < d:
            x[var] += rhs[i]
        elif var < 2 * d:
            x[var - d] -= rhs[i]
    point = tuple(x)
    if purify and d:
        point, _ = purify_to_vertex(rows, rhs_in, obj, point)
    return LpOutcome(LpStatus.OPTIMAL, point, dot(obj, point))


def _expel_artificials(tableau, rhs, basis, base_cols, art_cols):
    """Pivot basic artificials out; drop rows that turn out redundant."""
    i = 0
    while i < len(tableau):
        if basis[i] in art_cols:
            col = next((j for j in range(base_cols) if tableau[i][j] != 0), None)
            if col is None:
                del tableau[i], rhs[i], basis[i]
                continue
            _pivot(tableau, rhs, basis, i, col)
        i += 1


def feasible_point(rows, b) -> Optional[Vector]:
    """A feasible point of {A x <= b}, or None.  Vertex when pointed."""
    d = len(rows[0]) if rows else 0
    out = lp_solve(rows, b, [ZERO] * d)
    return out.point if out.status is LpStatus.OPTIMAL else None
