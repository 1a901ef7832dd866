"""Small exact linear algebra over the rationals.

Matrices are lists of rows; every entry is a ``Fraction``.  Sizes here never
exceed a dozen or so, so plain Gaussian elimination is all we need.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass ints, strings or Fractions")
    return Fraction(x)


def mat(rows: Sequence[Sequence]) -> Matrix:
    return [[to_frac(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [row[:] for row in a]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    n = len(a[0]) if a else 0
    aug = [row[:] + [to_frac(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [row[:] + e for row, e in zip(a, identity(n))]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def det(a: Matrix) -> Fraction:
    m = [row[:] for row in a]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def nullspace(a: Matrix, ncols: int | None = None) -> Matrix:
    """Basis of the right kernel of ``a``."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    if not a:
        return identity(n)
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis
