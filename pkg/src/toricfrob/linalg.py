"""Exact linear algebra helpers: integer determinants and inverses, ranks over
Q, and ranks over prime fields.

Everything here is exact; no floating point is ever used.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def det_int(rows) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(rows, rhs):
    """Solve M x = rhs exactly over Q by Cramer's rule.

    Returns a list of Fractions, or None when M is singular.
    """
    d = det_int(rows)
    if d == 0:
        return None
    n = len(rows)
    sol = []
    for j in range(n):
        cols = [[rows[i][k] if k != j else rhs[i] for k in range(n)] for i in range(n)]
        sol.append(Fraction(det_int(cols), d))
    return sol


def inverse_unimodular(rows):
    """Exact integer inverse of an integer matrix with determinant +-1."""
    n = len(rows)
    d = det_int(rows)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {d})")
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        col = solve_rational(rows, e)
        for i in range(n):
            assert col[i].denominator == 1
            inv[i][j] = int(col[i])
    return inv


def rank_rational(rows) -> int:
    """Rank of an integer matrix over Q (exact Gaussian elimination)."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat or not mat[0]:
        return 0
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(mat, p: int) -> int:
    """Rank of an integer matrix over F_p (exact elimination, vectorised)."""
    a = np.array(mat, dtype=np.int64)
    if a.size == 0:
        return 0
    a %= p
    nrows, ncols = a.shape
    r = 0
    for col in range(ncols):
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rows = np.nonzero(a[r + 1 :, col])[0] + r + 1
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, col], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True
