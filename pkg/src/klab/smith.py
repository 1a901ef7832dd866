"""Smith normal form over the integers with unimodular transforms.

``smith_normal_form(a)`` returns ``(u, d, v)`` with ``u * a * v == d``, where
``u`` and ``v`` are unimodular and ``d`` is diagonal with each diagonal entry
dividing the next.  Everything is plain Python ints.
"""
from __future__ import annotations

IntMatrix = list[list[int]]


def _eye(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def imatmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, r)) for r in a]
    u = _eye(rows)
    v = _eye(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        d[dst] = [x + f * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        done = False
            if done:
                # divisibility of the rest of the block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % d[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest entry of row/column t into the pivot slot
            cand = [(abs(d[i][t]), i, t) for i in range(t, rows) if d[i][t]]
            cand += [(abs(d[t][j]), t, j) for j in range(t, cols) if d[t][j]]
            _, i, j = min(cand)
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def diagonal(d: IntMatrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    from fractions import Fraction

    from . import linalg

    inv = linalg.inverse([[Fraction(x) for x in row] for row in m])
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]
