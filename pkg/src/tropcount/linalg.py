"""Fraction-free (Bareiss) elimination for small dense integer systems."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    pass


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    m = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1] if n else 1


def solve_integer_system(matrix: Sequence[Sequence[int]], rhs: Sequence[Fraction | int]) -> list[Fraction]:
    """Solve A x = b exactly for square integer A and rational b.

    The right-hand side is cleared of denominators and carried as an extra
    column through the elimination, so every intermediate entry is an
    integer (each division by the previous pivot is exact).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("need a square system")
    b = [Fraction(x) for x in rhs]
    scale = lcm(*(x.denominator for x in b)) if b else 1
    m = [list(map(int, row)) + [int(x * scale)] for row, x in zip(matrix, b)]
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    break
            else:
                raise SingularMatrixError(f"matrix is singular (no pivot in column {k})")
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n])
        for j in range(i + 1, n):
            acc -= m[i][j] * x[j]
        x[i] = acc / m[i][i]
    return [xi / scale for xi in x]
