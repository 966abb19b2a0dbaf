"""Exact sparse linear algebra over a field.

Rows are ``dict[int, scalar]`` (column -> nonzero entry).  Scalars are
whatever the caller uses (Fraction, Residue); only operators are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class Solution:
    values: list | None  # None: inconsistent
    rank: int
    free: list[int]

    @property
    def unique(self) -> bool:
        return self.values is not None and not self.free


def _axpy(target: dict, factor, row: dict) -> None:
    for c, v in row.items():
        nv = target.get(c, 0) - factor * v
        if nv == 0:
            target.pop(c, None)
        else:
            target[c] = nv


def rref(rows: list[dict], rhs: list | None = None):
    """Reduce to reduced row-echelon form.

    Returns ``(pivots, reduced_rows, reduced_rhs, leftover)``; ``pivots`` maps
    a pivot column to the index of its row.  Rows that reduce to zero with a
    nonzero right-hand side land in ``leftover`` (inconsistency witnesses).
    """
    pivot_rows: list[dict] = []
    pivot_rhs: list = []
    where: dict[int, int] = {}
    leftover = []
    for k, row in enumerate(rows):
        # plain ints would turn into floats on division
        row = {c: Fraction(v) if type(v) is int else v for c, v in row.items() if v != 0}
        b = rhs[k] if rhs is not None else 0
        if type(b) is int:
            b = Fraction(b)
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        for c in [c for c in row if c in where]:
            f = row[c]
            idx = where[c]
            _axpy(row, f, pivot_rows[idx])
            b = b - f * pivot_rhs[idx]
        if not row:
            if b != 0:
                leftover.append(b)
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        b = b * inv
        # keep existing pivot rows free of the new pivot column
        for idx, prow in enumerate(pivot_rows):
            if pc in prow:
                f = prow[pc]
                _axpy(prow, f, row)
                pivot_rhs[idx] = pivot_rhs[idx] - f * b
        where[pc] = len(pivot_rows)
        pivot_rows.append(row)
        pivot_rhs.append(b)
    return where, pivot_rows, pivot_rhs, leftover


def solve(rows: list[dict], rhs: list, ncols: int, zero=0) -> Solution:
    """Solve ``rows * x = rhs``; free variables are set to zero."""
    where, prows, prhs, leftover = rref(rows, rhs)
    free = [c for c in range(ncols) if c not in where]
    if leftover:
        return Solution(None, len(prows), free)
    x = [zero] * ncols
    for c, idx in where.items():
        x[c] = prhs[idx]
    return Solution(x, len(prows), free)


def rank(rows: list[dict]) -> int:
    return len(rref(rows)[1])


def dense_rows(matrix) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v != 0} for r in matrix]
