"""Exact linear algebra over the rationals.

Dense routines take lists of rows; the sparse rank takes a list of dicts
mapping column index to value. Everything is done with ints and Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _f(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [[_f(x) for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}."""
    if not matrix:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = rref(matrix)
    n = len(red[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def linear_solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of A x = b (free variables zero), or None if inconsistent."""
    if not matrix:
        return [] if not any(rhs) else None
    n = len(matrix[0])
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, piv):
        x[pc] = row[n]
    return x


def sparse_rank(rows: list[dict]) -> int:
    """Rank of a sparse matrix given as {column: value} rows.

    Elimination keeps a dict of pivot rows keyed by their leading column;
    each incoming row is reduced against them until it is zero or gets a
    fresh pivot.
    """
    pivots: dict = {}
    for row in rows:
        row = {c: _f(v) for c, v in row.items() if v}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = 1 / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                break
            f = row[lead]
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)
