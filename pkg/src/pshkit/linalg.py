"""Exact linear algebra over the integers and rationals.

Matrices are numpy object arrays (or nested lists) of ``int``/``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def to_frac_array(m) -> np.ndarray:
    arr = np.asarray(m, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, Fraction) else Fraction(v)
    return out


def _rows(m) -> list[list[Fraction]]:
    arr = np.asarray(m, dtype=object)
    return [[Fraction(x) for x in row] for row in arr.reshape(arr.shape[0], -1)] if arr.size else []


def frac_rank(m) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    rows = _rows(m)
    if not rows:
        return 0
    ncol = len(rows[0])
    rank = 0
    for c in range(ncol):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c] != 0:
                f = rows[r][c] / p[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def frac_det(m) -> Fraction:
    """Determinant of a square rational matrix."""
    rows = _rows(m)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c]
        det *= p[c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                f = rows[r][c] / p[c]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
    return det


def frac_inverse(m) -> np.ndarray:
    """Inverse by Gauss-Jordan; raises ``ZeroDivisionError`` if singular."""
    rows = _rows(m)
    n = len(rows)
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return np.array([row[n:] for row in aug], dtype=object).reshape(n, n)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(m) -> list[list[int]]:
    """A ℤ-basis of ``{v ∈ ℤ^n : M v = 0}`` for an integer matrix ``M``.

    Column operations by unimodular 2x2 steps bring ``M`` to column echelon
    form; the trailing columns of the accumulated transform span the kernel
    lattice, which is therefore saturated.
    """
    arr = np.asarray(m, dtype=object)
    nrow = arr.shape[0] if arr.ndim == 2 else 0
    ncol = arr.shape[1] if arr.ndim == 2 else 0
    a = [[int(arr[i, j]) for j in range(ncol)] for i in range(nrow)]
    u = [[int(i == j) for j in range(ncol)] for i in range(ncol)]  # columns are basis vectors

    def colop(j: int, k: int, p: int, q: int, r: int, s: int) -> None:
        # (col_j, col_k) <- (p col_j + q col_k, r col_j + s col_k)
        for mat in (a, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    piv = 0
    for i in range(nrow):
        if piv >= ncol:
            break
        for k in range(piv + 1, ncol):
            x, y = a[i][piv], a[i][k]
            if y == 0:
                continue
            g, s, t = _ext_gcd(x, y)
            # det [[s, t], [-y/g, x/g]] = (s x + t y)/g = 1
            colop(piv, k, s, t, -y // g, x // g)
        if a[i][piv] != 0:
            piv += 1
    basis = [[u[r][c] for r in range(ncol)] for c in range(piv, ncol)]
    return basis


def integer_rank(m) -> int:
    return frac_rank(m)
