"""Based root data, Weyl groups and dominance orders in exact arithmetic.

Coweights and weights live in one ambient rational space and are paired by
the dot product.  Type A is realised inside GL_n coordinates, types B, C, D in
orthogonal coordinates and G2 in the sum-zero plane of Q^3.  The coweight
lattice X_*(T) is carried separately as a Z-basis, so that different
isogenies share a root system but not a lattice.

Simple-root indices are 0-based throughout.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .linalg import to_frac

WEIGHT = "weight"
COWEIGHT = "coweight"


def fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class RatVector:
    """An exact rational vector tagged as a weight or a coweight."""

    entries: tuple[Fraction, ...]
    tag: str = COWEIGHT

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(to_frac(x) for x in self.entries))
        if self.tag not in (WEIGHT, COWEIGHT):
            raise ValueError(f"unknown lattice tag {self.tag!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _same(self, other: "RatVector") -> None:
        if not isinstance(other, RatVector):
            raise TypeError("expected a RatVector")
        if other.tag != self.tag:
            raise TypeError(f"cannot combine a {self.tag} with a {other.tag}; use pair()")
        if len(other) != len(self):
            raise ValueError("dimension mismatch")

    def __add__(self, other: "RatVector") -> "RatVector":
        self._same(other)
        return RatVector(tuple(a + b for a, b in zip(self.entries, other.entries)), self.tag)

    def __sub__(self, other: "RatVector") -> "RatVector":
        self._same(other)
        return RatVector(tuple(a - b for a, b in zip(self.entries, other.entries)), self.tag)

    def __neg__(self) -> "RatVector":
        return RatVector(tuple(-a for a in self.entries), self.tag)

    def scale(self, c) -> "RatVector":
        c = to_frac(c)
        return RatVector(tuple(c * a for a in self.entries), self.tag)

    def pair(self, other: "RatVector") -> Fraction:
        if not isinstance(other, RatVector) or other.tag == self.tag:
            raise TypeError("pairing needs one weight and one coweight")
        if len(other) != len(self):
            raise ValueError("dimension mismatch")
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(fmt(a) for a in self.entries) + ")"

    def to_json(self) -> list[str]:
        return [fmt(a) for a in self.entries]


def cw(*xs) -> RatVector:
    """Coweight from its coordinates; ``cw(1, 0)`` or ``cw("1/2", "1/2")``."""
    if len(xs) == 1 and not isinstance(xs[0], (int, str, Fraction)):
        xs = tuple(xs[0])
    return RatVector(tuple(xs), COWEIGHT)


def wt(*xs) -> RatVector:
    if len(xs) == 1 and not isinstance(xs[0], (int, str, Fraction)):
        xs = tuple(xs[0])
    return RatVector(tuple(xs), WEIGHT)


def sum_vectors(vs: Iterable[RatVector], zero: RatVector) -> RatVector:
    out = zero
    for v in vs:
        out = out + v
    return out


Mat = tuple[tuple[Fraction, ...], ...]


def _freeze(m: linalg.Matrix) -> Mat:
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True)
class WeylElement:
    """w = s_{word[0]} s_{word[1]} ... acting on coweights by ``matrix``."""

    word: tuple[int, ...]
    matrix: Mat = field(compare=False, repr=False)
    inverse_matrix: Mat = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def act(self, v: RatVector) -> RatVector:
        if v.tag != COWEIGHT:
            raise TypeError("Weyl matrices act on coweights")
        return RatVector(tuple(linalg.matvec([list(r) for r in self.matrix], v.entries)), COWEIGHT)

    def act_inverse(self, v: RatVector) -> RatVector:
        return RatVector(tuple(linalg.matvec([list(r) for r in self.inverse_matrix], v.entries)), COWEIGHT)


ParabolicIndex = frozenset


@dataclass(frozen=True)
class BasedRootDatum:
    """Simple roots and coroots plus a Z-basis of the coweight lattice."""

    simple_roots: tuple[RatVector, ...]
    simple_coroots: tuple[RatVector, ...]
    lattice_basis: tuple[RatVector, ...]
    label: str = field(default="", compare=False)

    rank: int = field(init=False, compare=False, repr=False)
    ambient: int = field(init=False, compare=False, repr=False)
    cartan_matrix: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    positive_roots: tuple[RatVector, ...] = field(init=False, compare=False, repr=False)
    positive_coroots: tuple[RatVector, ...] = field(init=False, compare=False, repr=False)
    root_coefficients: tuple[tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    fundamental_weights: tuple[RatVector, ...] = field(init=False, compare=False, repr=False)
    rho2: RatVector = field(init=False, compare=False, repr=False)
    rho2_coroots: RatVector = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        roots = tuple(RatVector(r.entries, WEIGHT) for r in self.simple_roots)
        coroots = tuple(RatVector(c.entries, COWEIGHT) for c in self.simple_coroots)
        basis = tuple(RatVector(b.entries, COWEIGHT) for b in self.lattice_basis)
        if len(roots) != len(coroots):
            raise ValueError("number of simple roots and simple coroots differ")
        if not roots and not basis:
            raise ValueError("a based root datum needs roots or a lattice basis")
        m = len(roots[0]) if roots else len(basis[0])
        if any(len(v) != m for v in roots + coroots + basis):
            raise ValueError("root, coroot and lattice vectors must share one ambient dimension")
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("simple_roots", roots)
        set_("simple_coroots", coroots)
        set_("lattice_basis", basis)
        n = len(roots)
        set_("rank", n)
        set_("ambient", m)

        a = [[roots[i].pair(coroots[j]) for j in range(n)] for i in range(n)]
        if any(x.denominator != 1 for row in a for x in row):
            raise ValueError("Cartan matrix is not integral")
        a_int = tuple(tuple(int(x) for x in row) for row in a)
        _check_finite_type(a_int)
        set_("cartan_matrix", a_int)

        if linalg.rank([list(b.entries) for b in basis]) != len(basis):
            raise ValueError("lattice basis is not linearly independent")
        for c in coroots:
            if self._lattice_solve(c, basis) is None:
                raise ValueError(f"coroot {c} is not in the coweight lattice")
        for b in basis:
            for r in roots:
                if b.pair(r).denominator != 1:
                    raise ValueError("a root is not integral on the coweight lattice")

        pos_r, pos_c, coeffs = _root_closure(roots, coroots, a_int)
        set_("positive_roots", pos_r)
        set_("positive_coroots", pos_c)
        set_("root_coefficients", coeffs)

        inv = linalg.inverse([[Fraction(x) for x in row] for row in a_int])
        fws = []
        for j in range(n):
            v = [Fraction(0)] * m
            for k in range(n):
                for t in range(m):
                    v[t] += inv[j][k] * roots[k].entries[t]
            fws.append(RatVector(tuple(v), WEIGHT))
        set_("fundamental_weights", tuple(fws))
        set_("rho2", sum_vectors(pos_r, RatVector((0,) * m, WEIGHT)))
        set_("rho2_coroots", sum_vectors(pos_c, RatVector((0,) * m, COWEIGHT)))

    # -- lattice -----------------------------------------------------------
    @staticmethod
    def _lattice_solve(x: RatVector, basis) -> list[Fraction] | None:
        cols = linalg.transpose([list(b.entries) for b in basis])
        sol = linalg.solve(cols, x.entries)
        if sol is None or any(c.denominator != 1 for c in sol):
            return None
        return sol

    def lattice_coords(self, x: RatVector) -> tuple[int, ...]:
        sol = self._lattice_solve(x, self.lattice_basis)
        if sol is None:
            raise ValueError(f"{x} is not in the coweight lattice")
        return tuple(int(c) for c in sol)

    def in_lattice(self, x: RatVector) -> bool:
        return self._lattice_solve(x, self.lattice_basis) is not None

    def from_lattice_coords(self, coords: Sequence[int]) -> RatVector:
        zero = self.zero()
        return sum_vectors((b.scale(c) for b, c in zip(self.lattice_basis, coords)), zero)

    def zero(self, tag: str = COWEIGHT) -> RatVector:
        return RatVector((0,) * self.ambient, tag)

    def coweight(self, xs: Sequence) -> RatVector:
        v = RatVector(tuple(xs), COWEIGHT)
        if len(v) != self.ambient:
            raise ValueError(f"expected {self.ambient} coordinates, got {len(v)}")
        return v

    # -- reflections and dominance -----------------------------------------
    def reflect(self, i: int, v: RatVector) -> RatVector:
        return v - self.simple_coroots[i].scale(v.pair(self.simple_roots[i]))

    def all_indices(self) -> frozenset[int]:
        return frozenset(range(self.rank))

    def is_dominant(self, v: RatVector, subset: Iterable[int] | None = None) -> bool:
        idx = range(self.rank) if subset is None else subset
        return all(v.pair(self.simple_roots[i]) >= 0 for i in idx)

    def word_matrix(self, word: Sequence[int]) -> tuple[Mat, Mat]:
        m = linalg.identity(self.ambient)
        minv = linalg.identity(self.ambient)
        for i in word:
            s = self._simple_matrix(i)
            m = linalg.matmul(m, s)
            minv = linalg.matmul(s, minv)
        return _freeze(m), _freeze(minv)

    def _simple_matrix(self, i: int) -> linalg.Matrix:
        c, r = self.simple_coroots[i].entries, self.simple_roots[i].entries
        return [[Fraction(int(p == q)) - c[p] * r[q] for q in range(self.ambient)] for p in range(self.ambient)]

    def element(self, word: Sequence[int]) -> WeylElement:
        m, minv = self.word_matrix(word)
        return WeylElement(tuple(word), m, minv)

    def dominant_representative(self, v: RatVector, subset: Iterable[int] | None = None) -> tuple[RatVector, WeylElement]:
        idx = sorted(range(self.rank) if subset is None else subset)
        applied: list[int] = []
        while True:
            for i in idx:
                if v.pair(self.simple_roots[i]) < 0:
                    v = self.reflect(i, v)
                    applied.append(i)
                    break
            else:
                break
        return v, self.element(tuple(reversed(applied)))

    def dominant(self, v: RatVector, subset: Iterable[int] | None = None) -> RatVector:
        return self.dominant_representative(v, subset)[0]

    def coroot_coefficients(self, x: RatVector) -> tuple[Fraction, ...] | None:
        """Coefficients of x on the simple coroots, or None outside their span."""
        cs = tuple(x.pair(w) for w in self.fundamental_weights)
        back = sum_vectors((c_.scale(c) for c_, c in zip(self.simple_coroots, cs)), self.zero())
        return cs if back == x else None

    def dominance_leq(self, v1: RatVector, v2: RatVector, mode: str = "rational") -> bool:
        if v1.tag != v2.tag:
            raise TypeError("mismatched lattice tags")
        if mode not in ("rational", "integral"):
            raise ValueError("mode must be 'rational' or 'integral'")
        cs = self.coroot_coefficients(v2 - v1)
        if cs is None or any(c < 0 for c in cs):
            return False
        return mode == "rational" or all(c.denominator == 1 for c in cs)

    def star(self, v: RatVector) -> RatVector:
        return self.dominant(-v)

    def levi_center_projection(self, x: RatVector, subset: Iterable[int]) -> RatVector:
        """Project x along the coroots of the Levi onto its central directions."""
        js = sorted(subset)
        if not js:
            return x
        a = [[self.simple_coroots[i].pair(self.simple_roots[j]) for i in js] for j in js]
        rhs = [x.pair(self.simple_roots[j]) for j in js]
        cs = linalg.solve(a, rhs)
        return x - sum_vectors((self.simple_coroots[i].scale(c) for i, c in zip(js, cs)), self.zero())

    # -- Weyl group ----------------------------------------------------------
    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        """All elements, in breadth-first order so that words are reduced."""
        start = self.element(())
        seen = {start.matrix: start}
        out = [start]
        queue = deque([start])
        while queue:
            w = queue.popleft()
            for i in range(self.rank):
                s = self._simple_matrix(i)
                mat_ = _freeze(linalg.matmul(s, [list(r) for r in w.matrix]))
                if mat_ in seen:
                    continue
                inv = _freeze(linalg.matmul([list(r) for r in w.inverse_matrix], s))
                e = WeylElement((i,) + w.word, mat_, inv)
                seen[mat_] = e
                out.append(e)
                queue.append(e)
                if len(out) > 100000:
                    raise ValueError("Weyl group too large")
        return tuple(out)

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.weyl_group, key=lambda w: w.length)

    @cached_property
    def _positive_coroot_set(self) -> frozenset[RatVector]:
        return frozenset(self.positive_coroots)

    def is_positive_coroot(self, v: RatVector) -> bool:
        return v in self._positive_coroot_set

    def inversion_count(self, w: WeylElement) -> int:
        return sum(1 for c in self.positive_coroots if not self.is_positive_coroot(w.act(c)))

    def coset_reps(self, p: Iterable[int], q: Iterable[int]) -> list[WeylElement]:
        """Minimal length representatives of W_P \\ W / W_Q."""
        p, q = sorted(p), sorted(q)
        out = []
        for w in self.weyl_group:
            if all(self.is_positive_coroot(w.act_inverse(self.simple_coroots[i])) for i in p) and all(
                self.is_positive_coroot(w.act(self.simple_coroots[j])) for j in q
            ):
                out.append(w)
        return out

    def stabilizer_subset(self, v: RatVector) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if v.pair(self.simple_roots[i]) == 0)

    def levi_positive_coroots(self, subset: Iterable[int]) -> list[RatVector]:
        s = set(subset)
        return [c for c, k in zip(self.positive_coroots, self.root_coefficients) if all(k[i] == 0 for i in range(self.rank) if i not in s)]

    def levi_positive_roots(self, subset: Iterable[int]) -> list[RatVector]:
        s = set(subset)
        return [r for r, k in zip(self.positive_roots, self.root_coefficients) if all(k[i] == 0 for i in range(self.rank) if i not in s)]

    def unipotent_coroots(self, subset: Iterable[int]) -> list[RatVector]:
        """Positive coroots whose root is not a root of the Levi."""
        s = set(subset)
        return [c for c, k in zip(self.positive_coroots, self.root_coefficients) if any(k[i] for i in range(self.rank) if i not in s)]


def _check_finite_type(a: tuple[tuple[int, ...], ...]) -> None:
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            raise ValueError("Cartan matrix diagonal must be 2")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise ValueError("Cartan matrix off-diagonal entries must be <= 0")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("Cartan matrix zero pattern is not symmetric")
    fa = [[Fraction(x) for x in row] for row in a]
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if linalg.det([[fa[i][j] for j in idx] for i in idx]) <= 0:
                raise ValueError("Cartan matrix is not of finite type")


def _root_closure(roots, coroots, a) -> tuple[tuple, tuple, tuple]:
    n = len(roots)
    start = []
    for i in range(n):
        k = tuple(int(i == j) for j in range(n))
        start.append((roots[i], coroots[i], k))
    seen = {r: (c, k) for r, c, k in start}
    queue = deque(start)
    while queue:
        r, c, k = queue.popleft()
        for i in range(n):
            t = c.pair(roots[i])  # <beta^vee, alpha_i>
            s = r.pair(coroots[i])  # <alpha_i^vee, beta>
            r2 = r - roots[i].scale(s)
            c2 = c - coroots[i].scale(t)
            k2 = tuple(kk - (int(s) if j == i else 0) for j, kk in enumerate(k))
            if r2 not in seen:
                seen[r2] = (c2, k2)
                queue.append((r2, c2, k2))
                if len(seen) > 5000:
                    raise ValueError("root system is not finite")
    pos = sorted(
        ((r, c, k) for r, (c, k) in seen.items() if all(x >= 0 for x in k)),
        key=lambda t: (sum(t[2]), t[2]),
    )
    if 2 * len(pos) != len(seen):
        raise ValueError("roots are not split into positive and negative halves")
    return tuple(p[0] for p in pos), tuple(p[1] for p in pos), tuple(p[2] for p in pos)


# -- Cartan type constructors ------------------------------------------------

ISOGENIES = {"A": ("sc", "ad", "gl"), "B": ("sc", "ad"), "C": ("sc", "ad"), "D": ("sc", "ad", "so"), "G": ("sc", "ad")}


def _unit(m: int, i: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * m
    v[i] = Fraction(c)
    return v


def _classical(letter: str, r: int) -> tuple[list, list, int]:
    if letter == "A":
        m = r + 1
        roots = [[a - b for a, b in zip(_unit(m, i), _unit(m, i + 1))] for i in range(r)]
        return roots, [row[:] for row in roots], m
    if letter == "G":
        roots = [[1, -1, 0], [-2, 1, 1]]
        coroots = [[1, -1, 0], [Fraction(-2, 3), Fraction(1, 3), Fraction(1, 3)]]
        return roots, coroots, 3
    m = r
    base = [[a - b for a, b in zip(_unit(m, i), _unit(m, i + 1))] for i in range(r - 1)]
    if letter == "B":
        return base + [_unit(m, r - 1)], base + [_unit(m, r - 1, 2)], m
    if letter == "C":
        return base + [_unit(m, r - 1, 2)], base + [_unit(m, r - 1)], m
    if letter == "D":
        last = [a + b for a, b in zip(_unit(m, r - 2), _unit(m, r - 1))]
        return base + [last], base + [last[:]], m
    raise ValueError(f"unknown Cartan type {letter}")


def build_datum(letter: str, rank: int, isogeny: str = "sc") -> BasedRootDatum:
    """Based root datum of a finite Cartan type with a chosen isogeny.

    ``build_datum("A", 2, "gl")`` is GL_3, ``build_datum("C", 2)`` is Sp_4.
    """
    letter = letter.upper()
    if letter not in ISOGENIES:
        raise ValueError(f"unknown Cartan type {letter!r}")
    if letter == "G" and rank != 2:
        raise ValueError("type G exists only in rank 2")
    min_rank = {"A": 1, "B": 1, "C": 1, "D": 2, "G": 2}[letter]
    if rank < min_rank:
        raise ValueError(f"type {letter} needs rank >= {min_rank}")
    if isogeny not in ISOGENIES[letter]:
        raise ValueError(f"isogeny {isogeny!r} not available for type {letter}")
    roots, coroots, m = _classical(letter, rank)
    if isogeny == "gl" or isogeny == "so":
        basis = [_unit(m, i) for i in range(m)]
    elif isogeny == "sc":
        basis = [row[:] for row in coroots]
    else:
        # fundamental coweights: the coroot-span dual of the root lattice
        a = [[sum(Fraction(x) * Fraction(y) for x, y in zip(c, r_)) for r_ in roots] for c in coroots]
        # a[i][j] = <alpha_i^vee, alpha_j>, so the coefficient rows are a^{-1}
        inv = linalg.inverse(a)
        basis = []
        for i in range(rank):
            v = [Fraction(0)] * m
            for k in range(rank):
                for t in range(m):
                    v[t] += inv[i][k] * Fraction(coroots[k][t])
            basis.append(v)
    label = f"GL{rank + 1}" if (letter == "A" and isogeny == "gl") else f"{letter}{rank} {isogeny}"
    return BasedRootDatum(
        tuple(wt(r_) for r_ in roots), tuple(cw(c) for c in coroots), tuple(cw(b) for b in basis), label
    )


def explicit_datum(simple_roots, simple_coroots, lattice_basis=None, label: str = "explicit") -> BasedRootDatum:
    """Datum from explicit lists; the lattice defaults to the standard Z^m."""
    roots = [wt(r) for r in simple_roots]
    coroots = [cw(c) for c in simple_coroots]
    if roots and lattice_basis is None:
        m = len(roots[0])
        lattice_basis = [_unit(m, i) for i in range(m)]
    return BasedRootDatum(tuple(roots), tuple(coroots), tuple(cw(b) for b in (lattice_basis or [])), label)


def gl(n: int) -> BasedRootDatum:
    if n == 1:
        # a torus: no roots at all
        return BasedRootDatum((), (), (cw(1),), "GL1")
    return build_datum("A", n - 1, "gl")


# -- functional wrappers -------------------------------------------------------

def dominant_representative(datum: BasedRootDatum, v: RatVector) -> tuple[RatVector, WeylElement]:
    return datum.dominant_representative(v)


def dominance_leq(datum: BasedRootDatum, v1: RatVector, v2: RatVector, mode: str = "rational") -> bool:
    return datum.dominance_leq(v1, v2, mode)


def star_involution(datum: BasedRootDatum, v: RatVector) -> RatVector:
    return datum.star(v)


def coset_reps(datum: BasedRootDatum, p: Iterable[int], q: Iterable[int]) -> list[WeylElement]:
    return datum.coset_reps(p, q)
