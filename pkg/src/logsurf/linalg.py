"""Exact linear algebra over Q for small dense systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a x = b exactly by Gauss-Jordan elimination with row pivoting."""
    n = len(a)
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    if len(rows) != n or any(len(r) != n + 1 for r in rows):
        raise ValueError("solve needs a square system")
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"singular at column {col}")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        pivot_row = [v / p for v in rows[col]]
        rows[col] = pivot_row
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], pivot_row)]
    return [rows[i][n] for i in range(n)]


def ldl_pivots(a: Sequence[Sequence]) -> list[Fraction]:
    """Pivots of symmetric Gaussian elimination without row exchanges.

    Stops at the first zero pivot, which is then the last entry returned.
    """
    n = len(a)
    m = [[Fraction(v) for v in row] for row in a]
    pivots: list[Fraction] = []
    for k in range(n):
        p = m[k][k]
        pivots.append(p)
        if p == 0:
            break
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = m[i][k] / p
            for j in range(k + 1, n):
                m[i][j] -= f * m[k][j]
    return pivots


def is_negative_definite(a: Sequence[Sequence]) -> bool:
    """Sylvester's criterion via elimination pivots: all pivots negative."""
    if len(a) == 0:
        return True
    pivots = ldl_pivots(a)
    return len(pivots) == len(a) and all(p < 0 for p in pivots)


def det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    m = [[Fraction(v) for v in row] for row in a]
    sign = 1
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return sign * out
