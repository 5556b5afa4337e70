"""
Exact rational linear algebra on dense Fraction matrices.

Pivoting is first-nonzero in column order, so every result is
deterministic for a given input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from engine.boolfn import DimensionError

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def identity(size: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    cols = len(b[0]) if b else 0
    return [
        [sum((row[k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(cols)]
        for row in a
    ]


def quadratic_form(vector: Sequence[Fraction], matrix: Matrix) -> Fraction:
    """vᵀ M v."""
    total = Fraction(0)
    for i, vi in enumerate(vector):
        if vi:
            total += vi * sum((matrix[i][j] * vj for j, vj in enumerate(vector) if vj), Fraction(0))
    return total


@dataclass
class Reduction:
    rows: Matrix
    pivots: list[int]
    steps: list[str] = field(default_factory=list)


def rref(rows: Sequence[Sequence[int | Fraction]], pivot_columns: int | None = None) -> Reduction:
    """
    Gauss–Jordan reduction. Pivots are only taken from the first
    `pivot_columns` columns; the rest ride along (right-hand sides,
    row-operation bookkeeping).
    """
    m = to_matrix(rows)
    if not m:
        return Reduction([], [])
    width = len(m[0])
    limit = width if pivot_columns is None else pivot_columns
    pivots: list[int] = []
    steps: list[str] = []
    r = 0
    for col in range(limit):
        pivot_row = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
            steps.append(f"swap rows {r} and {pivot_row}")
        p = m[r][col]
        if p != 1:
            m[r] = [v / p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        steps.append(f"pivot on column {col} (row {r})")
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return Reduction(m, pivots, steps)


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(rref(rows).pivots)


def solve_consistent(
    a: Sequence[Sequence[int | Fraction]],
    b: Sequence[int | Fraction],
) -> list[Fraction] | None:
    """A particular solution of A z = b (free variables 0), or None if inconsistent."""
    if len(a) != len(b):
        raise DimensionError("row count of A and length of b differ")
    if not a:
        return []
    cols = len(a[0])
    red = rref([list(row) + [rhs] for row, rhs in zip(a, b)], pivot_columns=cols)
    for row in red.rows[len(red.pivots):]:
        if row[cols] != 0:
            return None
    z = [Fraction(0)] * cols
    for r, col in enumerate(red.pivots):
        z[col] = red.rows[r][cols]
    return z


def invert(matrix: Sequence[Sequence[int | Fraction]]) -> Matrix:
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise DimensionError("only square matrices can be inverted")
    if size == 0:
        return []
    augmented = [list(row) + ident for row, ident in zip(matrix, identity(size))]
    red = rref(augmented, pivot_columns=size)
    if len(red.pivots) < size:
        raise ValueError("matrix is singular")
    return [row[size:] for row in red.rows]
