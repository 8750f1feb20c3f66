"""Exact linear algebra helpers.

Pivot rows are located cheaply with numpy elimination modulo a large prime
(integers only), then the chosen square block is inverted exactly with
fraction-free (Bareiss) elimination.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

PRIME = 2147483629  # largest prime below 2**31, so products fit in int64


def independent_rows(matrix: list[list[int]], ncols: int, prime: int = PRIME) -> list[int]:
    """Indices of a maximal set of rows that stay independent modulo ``prime``.

    Over Q the returned rows are independent as well (a nonzero minor mod p is
    nonzero over the integers).
    """
    if not matrix:
        return []
    # work on the transpose: pivot columns of M^T are independent rows of M
    t = np.array([[x % prime for x in row] for row in matrix], dtype=np.int64).T.copy()
    rows, cols = t.shape
    picked = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(t[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            t[[r, p]] = t[[p, r]]
        inv = pow(int(t[r, c]), prime - 2, prime)
        t[r] = (t[r] * inv) % prime
        below = np.nonzero(t[r + 1:, c])[0] + r + 1
        for k in below:
            f = int(t[k, c])
            t[k] = (t[k] - f * t[r]) % prime
        picked.append(c)
        r += 1
    return picked


def bareiss_inverse(square: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Return ``(d, m)`` with ``m = d * square^{-1}``, all integers (``d`` is +-det).

    Fraction-free Gauss-Jordan on ``[square | I]``.  Raises ``ArithmeticError``
    for a singular matrix.
    """
    n = len(square)
    aug = [list(map(int, row)) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(square)]
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if aug[r][k] != 0), None)
            if swap is None:
                raise ArithmeticError("singular matrix")
            aug[k], aug[swap] = aug[swap], aug[k]
        rowk = aug[k]
        piv = rowk[k]
        for r in range(n):
            if r != k:
                row = aug[r]
                f = row[k]
                aug[r] = [(piv * x - f * y) // prev for x, y in zip(row, rowk)]
        prev = piv
    # the left block is now prev * identity, hence the right block is prev * inverse
    return prev, [row[n:] for row in aug]


def solve_square(square: list[list[int]], rhs: list) -> list[Fraction]:
    det, adj = bareiss_inverse(square)
    return [Fraction(sum(a * b for a, b in zip(row, rhs))) / det for row in adj]


def rank_exact(matrix: list[list]) -> int:
    """Exact rank over Q by fraction elimination; used in tests and small checks."""
    m = [[Fraction(x) for x in row] for row in matrix]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank
