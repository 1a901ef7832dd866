"""Small finite fields by lookup tables, plus row reduction over them.

Elements of GF(p^k) are ints in [0, p^k): the base-p digits are the
coefficients of a polynomial in a root of a fixed monic irreducible modulus.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

Vec = tuple[int, ...]


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    while len(a) >= len(m):
        c = a[-1]
        if c:
            shift = len(a) - len(m)
            for i, x in enumerate(m):
                a[shift + i] = (a[shift + i] - c * x) % p
        a.pop()
    return a


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            if not any(_poly_mod(m, div, p)):
                return False
    return True


def _modulus(p: int, k: int) -> list[int]:
    """Lexicographically first monic irreducible of degree k (low coefficients first)."""
    if k == 1:
        return [0, 1]
    for low in product(range(p), repeat=k):
        m = list(low) + [1]
        if m[0] and _is_irreducible(m, p):
            return m
    raise ValueError(f"no irreducible polynomial of degree {k} over F_{p}")


class GF:
    """GF(p^k) with full addition and multiplication tables."""

    def __init__(self, p: int, k: int = 1):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        self.p, self.k, self.q = p, k, p ** k
        self.modulus = _modulus(p, k)
        digits = [self._digits(x) for x in range(self.q)]
        self.add_t = [[self._num([(a + b) % p for a, b in zip(x, y)]) for y in digits] for x in digits]
        self.neg_t = [self._num([(-a) % p for a in x]) for x in digits]
        self.mul_t = [[self._mul_slow(x, y) for y in digits] for x in digits]
        self.inv_t = [0] * self.q
        for x in range(1, self.q):
            self.inv_t[x] = next(y for y in range(1, self.q) if self.mul_t[x][y] == 1)

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _num(self, ds: list[int]) -> int:
        return sum(d * self.p ** i for i, d in enumerate(ds))

    def _mul_slow(self, x: list[int], y: list[int]) -> int:
        prod = [0] * (2 * self.k - 1)
        for i, a in enumerate(x):
            for j, b in enumerate(y):
                prod[i + j] = (prod[i + j] + a * b) % self.p
        r = _poly_mod(prod, self.modulus, self.p)
        return self._num(r + [0] * (self.k - len(r)))

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def add(self, a: int, b: int) -> int:
        return self.add_t[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_t[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.inv_t[a]

    def power(self, a: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul_t[out][a]
        return out

    def subfield(self, e: int) -> list[int]:
        """Elements of the subfield of order p^e (fixed by x -> x^(p^e))."""
        if self.k % e:
            raise ValueError(f"F_{self.p}^{e} is not a subfield of {self}")
        return [x for x in range(self.q) if self.power(x, self.p ** e) == x]


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    return GF(p, k)


# -- linear algebra ---------------------------------------------------------------

def rref(f: GF, rows: list[Vec]) -> tuple[Vec, ...]:
    """Reduced row echelon form with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    out_rows = 0
    for c in range(ncols):
        piv = next((r for r in range(out_rows, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        inv = f.inv(m[out_rows][c])
        m[out_rows] = [f.mul(inv, x) for x in m[out_rows]]
        for r in range(len(m)):
            if r != out_rows and m[r][c]:
                k = m[r][c]
                m[r] = [f.sub(x, f.mul(k, y)) for x, y in zip(m[r], m[out_rows])]
        out_rows += 1
    return tuple(tuple(r) for r in m[:out_rows])


def rank(f: GF, rows: list[Vec]) -> int:
    return len(rref(f, rows))


def span_sum(f: GF, a: tuple[Vec, ...], b: tuple[Vec, ...]) -> tuple[Vec, ...]:
    return rref(f, list(a) + list(b))


def intersection_dim(f: GF, a: tuple[Vec, ...], b: tuple[Vec, ...]) -> int:
    return len(a) + len(b) - rank(f, list(a) + list(b))


def contains(f: GF, big: tuple[Vec, ...], small: tuple[Vec, ...]) -> bool:
    return rank(f, list(big) + list(small)) == len(big)


def annihilator(f: GF, basis: tuple[Vec, ...], n: int) -> tuple[Vec, ...]:
    """Rows c with c . w = 0 for every w in the span (the orthogonal complement)."""
    return tuple(nullspace(f, list(basis), n))


def all_subspaces(f: GF, n: int, scalars: list[int] | None = None) -> list[tuple[Vec, ...]]:
    """Every subspace of scalars^n as an RREF basis, including 0 and the whole space.

    ``scalars`` is the coefficient set (a subfield of f); default all of f.
    """
    sc = list(range(f.q)) if scalars is None else sorted(scalars)
    out = []
    for r in range(n + 1):
        for pivots in combinations(range(n), r):
            free_slots = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
            for vals in product(sc, repeat=len(free_slots)):
                rows = [[0] * n for _ in range(r)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), x in zip(free_slots, vals):
                    rows[i][j] = x
                out.append(tuple(tuple(row) for row in rows))
    return out


def gaussian_binomial_total(q: int, n: int) -> int:
    """Number of subspaces of F_q^n."""
    total = 0
    for r in range(n + 1):
        num = den = 1
        for i in range(r):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def nullspace(f: GF, rows: list[Vec], ncols: int) -> list[Vec]:
    """Basis of {x : rows . x = 0}."""
    r = rref(f, rows)
    pivots = [next(j for j, x in enumerate(row) if x) for row in r]
    out = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = [0] * ncols
        v[j] = 1
        for row, pc in zip(r, pivots):
            v[pc] = f.neg_t[row[j]]
        out.append(tuple(v))
    return out
