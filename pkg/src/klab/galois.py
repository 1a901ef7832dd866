"""Finite-order Galois actions on a based root datum and pi_1 coinvariants.

A group is modelled as a pinned quasi-split datum: a ``BasedRootDatum`` plus
one automorphism ``gamma`` of finite order that permutes the simple coroots.
The fundamental group of a standard Levi M, with Galois coinvariants, is

    X_*(T) / (coroots of M  +  (1 - gamma) X_*(T))

and is computed once per Levi with the integer Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from . import linalg
from .rootcore import COWEIGHT, BasedRootDatum, RatVector, sum_vectors
from .smith import diagonal, inverse_unimodular, smith_normal_form


@dataclass(frozen=True)
class GaloisAction:
    """gamma acting on coweights by ``lattice_map`` (ambient coordinates)."""

    order: int
    node_permutation: tuple[int, ...]
    lattice_map: tuple[tuple[Fraction, ...], ...]

    def apply(self, v: RatVector) -> RatVector:
        m = [list(r) for r in self.lattice_map]
        return RatVector(tuple(linalg.matvec(m, v.entries)), v.tag if v.tag == COWEIGHT else v.tag)

    def is_trivial(self) -> bool:
        n = len(self.lattice_map)
        return all(self.lattice_map[i][j] == int(i == j) for i in range(n) for j in range(n))


def trivial_action(datum: BasedRootDatum) -> GaloisAction:
    m = linalg.identity(datum.ambient)
    return GaloisAction(1, tuple(range(datum.rank)), tuple(tuple(r) for r in m))


def _solve_map(datum: BasedRootDatum, perm: Sequence[int]) -> linalg.Matrix | None:
    """Ambient matrix sending coroot i to coroot perm[i], when that pins it down."""
    if datum.ambient != datum.rank:
        return None
    src = linalg.transpose([list(c.entries) for c in datum.simple_coroots])
    dst = linalg.transpose([list(datum.simple_coroots[perm[i]].entries) for i in range(datum.rank)])
    return linalg.matmul(dst, linalg.inverse(src))


def flip_action(datum: BasedRootDatum, perm: Sequence[int] | None = None, order: int = 2) -> GaloisAction:
    """The diagram automorphism realised on ambient coordinates.

    Type A in GL coordinates uses x -> -reverse(x), which also acts on the
    centre of GL_n by inversion (the unitary-group twist).  When the ambient
    space is spanned by the coroots the matrix is solved for directly.
    """
    n = datum.rank
    if perm is None:
        perm = tuple(reversed(range(n)))
    perm = tuple(perm)
    m = None
    is_a = all(
        datum.simple_roots[i].entries == datum.simple_coroots[i].entries for i in range(n)
    ) and datum.ambient == n + 1 and all(
        sum(r.entries) == 0 for r in datum.simple_roots
    )
    if is_a and perm == tuple(reversed(range(n))):
        k = datum.ambient
        m = [[Fraction(-1) if j == k - 1 - i else Fraction(0) for j in range(k)] for i in range(k)]
    if m is None:
        m = _solve_map(datum, perm)
    if m is None:
        if perm == tuple(range(n)):
            m = linalg.identity(datum.ambient)
        else:
            raise ValueError("cannot realise this node permutation on the ambient space; pass a lattice_map")
    return make_action(datum, order, perm, m)


def make_action(datum: BasedRootDatum, order: int, perm: Sequence[int], matrix) -> GaloisAction:
    act = GaloisAction(int(order), tuple(perm), tuple(tuple(linalg.to_frac(x) for x in r) for r in matrix))
    validate_action(datum, act)
    return act


def validate_action(datum: BasedRootDatum, act: GaloisAction) -> None:
    n, m = datum.rank, datum.ambient
    if act.order < 1:
        raise ValueError("Galois order must be positive")
    if sorted(act.node_permutation) != list(range(n)):
        raise ValueError(f"node permutation {act.node_permutation} is not a permutation of 0..{n - 1}")
    if len(act.lattice_map) != m or any(len(r) != m for r in act.lattice_map):
        raise ValueError("lattice map has the wrong shape")
    mm = [list(r) for r in act.lattice_map]
    for i in range(n):
        if act.apply(datum.simple_coroots[i]) != datum.simple_coroots[act.node_permutation[i]]:
            raise ValueError(f"lattice map does not send coroot {i} to coroot {act.node_permutation[i]}")
    # pairing compatibility: <gamma x, alpha_{pi i}> = <x, alpha_i>
    mt = linalg.transpose(mm)
    for i in range(n):
        lhs = linalg.matvec(mt, datum.simple_roots[act.node_permutation[i]].entries)
        if lhs != list(datum.simple_roots[i].entries):
            raise ValueError("lattice map is not compatible with the root pairing")
    for b in datum.lattice_basis:
        if not datum.in_lattice(act.apply(b)):
            raise ValueError("lattice map does not preserve the coweight lattice")
    p = linalg.identity(m)
    for _ in range(act.order):
        p = linalg.matmul(mm, p)
    if p != linalg.identity(m):
        raise ValueError(f"lattice map does not have order dividing {act.order}")


@dataclass(frozen=True, order=True)
class Pi1Element:
    """Canonical coordinates in pi_1(M)_Gamma; ``levi`` is the sorted index set."""

    levi: tuple[int, ...]
    coords: tuple[int, ...]

    def to_json(self) -> list[int]:
        return list(self.coords)


class Pi1GammaGroup:
    """pi_1(M)_Gamma as Z^free x prod Z/d_j, from a Smith normal form."""

    def __init__(self, group: "GroupSpec", levi: Iterable[int]):
        self.group = group
        self.levi = tuple(sorted(levi))
        datum = group.datum
        k = len(datum.lattice_basis)
        rels: list[list[int]] = []
        for i in self.levi:
            rels.append(list(datum.lattice_coords(datum.simple_coroots[i])))
        for b in datum.lattice_basis:
            rels.append(list(datum.lattice_coords(b - group.gamma(b))))
        rels = [r for r in rels if any(r)]
        self.relations = rels
        if rels:
            u, d, w = smith_normal_form(rels)
            diag = diagonal(d)
        else:
            w = [[int(i == j) for j in range(k)] for i in range(k)]
            diag = []
        invariants = [diag[j] if j < len(diag) else 0 for j in range(k)]
        self.transform = w
        self.transform_inv = inverse_unimodular(w)
        self.kept = [j for j in range(k) if invariants[j] != 1]
        self.moduli = tuple(invariants[j] for j in self.kept)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.moduli if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.moduli if d > 1)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    def _canon(self, ys: Sequence[int]) -> Pi1Element:
        return Pi1Element(self.levi, tuple(y % d if d else y for y, d in zip(ys, self.moduli)))

    def from_lattice_coords(self, c: Sequence[int]) -> Pi1Element:
        k = len(c)
        ys = [sum(c[i] * self.transform[i][j] for i in range(k)) for j in range(k)]
        return self._canon([ys[j] for j in self.kept])

    def class_of(self, x: RatVector) -> Pi1Element:
        return self.from_lattice_coords(self.group.datum.lattice_coords(x))

    def element(self, coords: Sequence[int]) -> Pi1Element:
        if len(coords) != len(self.moduli):
            raise ValueError(f"expected {len(self.moduli)} coordinates for {self.describe()}")
        return self._canon([int(c) for c in coords])

    def check(self, e: Pi1Element) -> None:
        if e.levi != self.levi or len(e.coords) != len(self.moduli):
            raise ValueError("element is not in this pi_1 group")

    def lift(self, e: Pi1Element) -> RatVector:
        """An integral coweight in the class of e."""
        self.check(e)
        k = len(self.transform)
        ys = [0] * k
        for j, c in zip(self.kept, e.coords):
            ys[j] = c
        cs = [sum(ys[i] * self.transform_inv[i][j] for i in range(k)) for j in range(k)]
        return self.group.datum.from_lattice_coords(cs)

    def add(self, a: Pi1Element, b: Pi1Element) -> Pi1Element:
        self.check(a)
        self.check(b)
        return self._canon([x + y for x, y in zip(a.coords, b.coords)])

    def neg(self, a: Pi1Element) -> Pi1Element:
        self.check(a)
        return self._canon([-x for x in a.coords])

    def zero(self) -> Pi1Element:
        return self._canon([0] * len(self.moduli))

    def slope(self, e: Pi1Element) -> RatVector:
        return self.group.center_slope(self.levi, self.lift(e))

    def torsion_elements(self) -> list[tuple[int, ...]]:
        """All residue tuples for the torsion coordinates (in kept order)."""
        return list(product(*[range(d) for d in self.moduli if d > 0]))

    def assemble(self, free: Sequence[int], tors: Sequence[int]) -> Pi1Element:
        fi, ti = iter(free), iter(tors)
        return self._canon([next(fi) if d == 0 else next(ti) for d in self.moduli])

    def split(self, e: Pi1Element) -> tuple[tuple[int, ...], tuple[int, ...]]:
        free = tuple(c for c, d in zip(e.coords, self.moduli) if d == 0)
        tors = tuple(c for c, d in zip(e.coords, self.moduli) if d > 0)
        return free, tors

    @cached_property
    def slope_matrix(self) -> list[RatVector]:
        """Slopes of the free generators, in order."""
        out = []
        for idx, d in enumerate(self.moduli):
            if d == 0:
                cs = [0] * len(self.moduli)
                cs[idx] = 1
                out.append(self.slope(self._canon(cs)))
        return out


@dataclass(frozen=True)
class GroupSpec:
    datum: BasedRootDatum
    action: GaloisAction
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        validate_action(self.datum, self.action)

    @property
    def rank(self) -> int:
        return self.datum.rank

    def gamma(self, v: RatVector) -> RatVector:
        return self.action.apply(v)

    def gamma_orbit(self, v: RatVector) -> list[RatVector]:
        out = [v]
        for _ in range(self.action.order - 1):
            out.append(self.gamma(out[-1]))
        return out

    def average(self, v: RatVector) -> RatVector:
        d = self.action.order
        return sum_vectors(self.gamma_orbit(v), self.datum.zero(v.tag)).scale(Fraction(1, d))

    def is_split(self) -> bool:
        return self.action.is_trivial()

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for i in range(self.rank):
            if i in seen:
                continue
            orb = [i]
            j = self.action.node_permutation[i]
            while j != i:
                orb.append(j)
                j = self.action.node_permutation[j]
            seen.update(orb)
            out.append(tuple(sorted(orb)))
        return tuple(out)

    def orbit_of(self, i: int) -> tuple[int, ...]:
        return next(o for o in self.orbits if i in o)

    def is_stable(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        return all(self.action.node_permutation[i] in s for i in s)

    @cached_property
    def stable_levis(self) -> tuple[frozenset[int], ...]:
        """All Gamma-stable subsets of simple roots, smallest first."""
        out = []
        for k in range(len(self.orbits) + 1):
            for combo in combinations(self.orbits, k):
                out.append(frozenset(i for o in combo for i in o))
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    @cached_property
    def _pi1_cache(self) -> dict:
        return {}

    def pi1(self, levi: Iterable[int] | None = None) -> Pi1GammaGroup:
        key = tuple(sorted(range(self.rank) if levi is None else levi))
        if not self.is_stable(key):
            raise ValueError(f"Levi {list(key)} is not Gamma-stable")
        cache = self._pi1_cache
        if key not in cache:
            cache[key] = Pi1GammaGroup(self, key)
        return cache[key]

    def center_slope(self, levi: Iterable[int], x: RatVector) -> RatVector:
        """Gamma-average of the central projection of x for the Levi."""
        return self.average(self.datum.levi_center_projection(x, levi))

    def push(self, e: Pi1Element, target: Iterable[int] | None = None) -> Pi1Element:
        """Image under pi_1(M)_Gamma -> pi_1(M')_Gamma for M inside M'."""
        tgt = self.pi1(target)
        if not set(e.levi) <= set(tgt.levi):
            raise ValueError("target Levi must contain the source Levi")
        return tgt.class_of(self.pi1(e.levi).lift(e))

    @cached_property
    def full(self) -> frozenset[int]:
        return frozenset(range(self.rank))


def split_group(datum: BasedRootDatum, label: str = "") -> GroupSpec:
    return GroupSpec(datum, trivial_action(datum), label or datum.label)


# -- functional interface -------------------------------------------------------

def relative_simple_roots(g: GroupSpec) -> list[tuple[int, ...]]:
    return list(g.orbits)


def gamma_average(g: GroupSpec, mu: RatVector) -> RatVector:
    if not g.datum.is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    return g.average(mu)


def pi1_coinvariants(g: GroupSpec, levi: Iterable[int] | None = None) -> Pi1GammaGroup:
    return g.pi1(levi)


def sharp_and_slope(g: GroupSpec, levi: Iterable[int] | None, v) -> tuple[Pi1Element, RatVector]:
    grp = g.pi1(levi)
    if isinstance(v, RatVector):
        if not v.is_integral() and not g.datum.in_lattice(v):
            raise ValueError(f"{v} is not an integral coweight")
        e = grp.class_of(v)
    else:
        grp.check(v)
        e = v
    return e, grp.slope(e)
