"""Small exact linear algebra kernel: Gauss-Jordan solving, rank, null spaces.

Everything works over `Fraction`; there is deliberately no floating-point
path anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InputError

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise InputError("dimension mismatch in dot product")
    return sum((x * y for x, y in zip(a, b)), ZERO)


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix, row-major entries."""

    rows: int
    cols: int
    entries: Vector

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError("entry count does not match matrix shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [as_vector(r) for r in rows]
        if not rows:
            raise InputError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InputError("ragged rows in matrix")
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), width, flat)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        flat = tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
        return cls(n, n, flat)

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def times_vector(self, v: Sequence[Fraction]) -> Vector:
        return tuple(dot(self.row(i), v) for i in range(self.rows))


def _as_row_list(a) -> list[list[Fraction]]:
    if isinstance(a, Matrix):
        return [list(a.row(i)) for i in range(a.rows)]
    return [[Fraction(x) for x in row] for row in a]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column indices)."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(a) -> int:
    rows = _as_row_list(a)
    if not rows:
        return 0
    _, pivots = _rref(rows)
    return len(pivots)


def solve_linear_system(a, b: Sequence) -> Optional[Vector]:
    """Exact solution of A x = b, or None when the system is inconsistent.

    When the solution space is positive-dimensional, free variables are
    pinned to 0, so the returned solution is deterministic.
    """
    rows = _as_row_list(a)
    rhs = [Fraction(x) for x in b]
    if len(rows) != len(rhs):
        raise InputError("A and b row counts differ")
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [rows[i] + [rhs[i]] for i in range(len(rows))]
    aug, pivots = _rref(aug)
    # A pivot in the rhs column marks an inconsistent row 0 = 1.
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for r, col in enumerate(pivots):
        x[col] = aug[r][ncols]
    return tuple(x)


def nullspace(a) -> list[Vector]:
    """Basis of the null space of A (possibly empty)."""
    rows = _as_row_list(a)
    if not rows:
        return []
    ncols = len(rows[0])
    rows, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, col in enumerate(pivots):
            v[col] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def invertible(a) -> bool:
    rows = _as_row_list(a)
    return bool(rows) and len(rows) == len(rows[0]) and rank(rows) == len(rows)
