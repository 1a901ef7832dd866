"""Sigma-conjugacy classes through their Levi-basic parameterisation.

A class is never materialised as a group element.  It is the pair (M, k_M)
of a Gamma-stable standard Levi and a point of pi_1(M)_Gamma whose slope is
strictly dominant outside M; the Newton point is that slope and the Kottwitz
point is the image of k_M in pi_1(G)_Gamma.  Finite sets of classes are found
by scanning every Levi with a dominance bound that keeps the search finite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import linalg
from .galois import GroupSpec, Pi1Element
from .rootcore import RatVector, cw


@dataclass(frozen=True)
class SigmaConjClass:
    """[b] given by (levi, kappa_levi) inside the Levi ``ambient`` (default: all of G)."""

    levi: tuple[int, ...]
    kappa_levi: Pi1Element
    newton: RatVector = field(compare=False)
    kappa: Pi1Element = field(compare=False)
    ambient: tuple[int, ...] = ()

    @property
    def is_basic(self) -> bool:
        return self.levi == self.ambient

    def key(self) -> tuple:
        return (self.newton.entries, self.kappa.coords)

    def describe(self) -> str:
        return f"nu={self.newton} kappa={list(self.kappa.coords)}"


def make_class(g: GroupSpec, levi: Iterable[int], kappa_levi: Pi1Element | Sequence[int],
               ambient: Iterable[int] | None = None) -> SigmaConjClass:
    """Build a class, checking strict regularity of its slope outside the Levi."""
    amb = tuple(sorted(range(g.rank) if ambient is None else ambient))
    lv = tuple(sorted(levi))
    if not set(lv) <= set(amb):
        raise ValueError("levi must lie inside the ambient Levi")
    grp = g.pi1(lv)
    if not isinstance(kappa_levi, Pi1Element):
        kappa_levi = grp.element(kappa_levi)
    grp.check(kappa_levi)
    nu = grp.slope(kappa_levi)
    for i in amb:
        if i not in lv and nu.pair(g.datum.simple_roots[i]) <= 0:
            raise ValueError(f"slope {nu} is not strictly regular outside the Levi {list(lv)}")
    return SigmaConjClass(lv, kappa_levi, nu, g.push(kappa_levi, amb), amb)


def basic_class(g: GroupSpec, kappa: Pi1Element | Sequence[int], ambient: Iterable[int] | None = None) -> SigmaConjClass:
    amb = range(g.rank) if ambient is None else ambient
    return make_class(g, amb, kappa, amb)


def class_invariants(b: SigmaConjClass) -> tuple[RatVector, Pi1Element, bool]:
    return b.newton, b.kappa, b.is_basic


def in_newton_image(g: GroupSpec, v: RatVector) -> bool:
    """Whether v is the Newton point of some class of G."""
    d = g.datum
    if not d.is_dominant(v) or g.average(v) != v:
        raise ValueError(f"{v} must be dominant and Gamma-invariant")
    levi = d.stabilizer_subset(v)
    grp = g.pi1(levi)
    cols = grp.slope_matrix
    if not cols:
        return v.is_zero()
    a = linalg.transpose([list(c.entries) for c in cols])
    sol = linalg.solve(a, v.entries)
    return sol is not None and all(x.denominator == 1 for x in sol)


@dataclass
class KottwitzSet:
    group: GroupSpec
    elements: tuple[SigmaConjClass, ...]
    kind: str
    bound: RatVector
    kappa_target: Pi1Element | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        return a.kappa == b.kappa and self.group.datum.dominance_leq(a.newton, b.newton, "rational")

    @cached_property
    def order_matrix(self) -> list[list[bool]]:
        d = self.group.datum
        full = range(d.rank)
        data = [
            (b.kappa, d.levi_center_projection(b.newton, full), [b.newton.pair(w) for w in d.fundamental_weights])
            for b in self.elements
        ]
        n = len(self.elements)
        return [
            [
                data[i][0] == data[j][0] and data[i][1] == data[j][1]
                and all(x <= y for x, y in zip(data[i][2], data[j][2]))
                for j in range(n)
            ]
            for i in range(n)
        ]

    @cached_property
    def hasse_edges(self) -> list[tuple[int, int]]:
        n = len(self.elements)
        le = self.order_matrix
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and le[i][j]:
                    if not any(k not in (i, j) and le[i][k] and le[k][j] for k in range(n)):
                        out.append((i, j))
        return out

    def basic_indices(self) -> list[int]:
        return [i for i, b in enumerate(self.elements) if b.is_basic]

    def maximal_indices(self) -> list[int]:
        n = len(self.elements)
        le = self.order_matrix
        return [i for i in range(n) if not any(j != i and le[i][j] for j in range(n))]

    def minimal_indices(self) -> list[int]:
        n = len(self.elements)
        le = self.order_matrix
        return [i for i in range(n) if not any(j != i and le[j][i] for j in range(n))]

    @property
    def basic_index(self) -> int | None:
        b = self.basic_indices()
        return b[0] if len(b) == 1 else None

    @property
    def maximal_index(self) -> int | None:
        m = self.maximal_indices()
        return m[0] if len(m) == 1 else None

    def newton_points(self) -> list[RatVector]:
        out: list[RatVector] = []
        for b in self.elements:
            if b.newton not in out:
                out.append(b.newton)
        return out

    def find(self, newton: RatVector, kappa: Pi1Element | None = None) -> SigmaConjClass | None:
        for b in self.elements:
            if b.newton == newton and (kappa is None or b.kappa == kappa):
                return b
        return None


def _coordinate_caps(g: GroupSpec, bound: RatVector) -> list[Fraction]:
    """Max |coordinate| over the Weyl orbit of the bound; dominated points lie in its hull."""
    caps = [Fraction(0)] * g.datum.ambient
    for w in g.datum.weyl_group:
        v = w.act(bound)
        caps = [max(c, abs(x)) for c, x in zip(caps, v.entries)]
    return caps


def _left_inverse(cols: list[RatVector]) -> linalg.Matrix:
    a = linalg.transpose([list(c.entries) for c in cols])  # ambient x r
    at = linalg.transpose(a)
    return linalg.matmul(linalg.inverse(linalg.matmul(at, a)), at)


def _scaled(rows: list[list[Fraction]], extra: list[list[Fraction]]) -> tuple[list[list[int]], list[list[int]]]:
    """Clear denominators jointly so the search loop runs on ints."""
    den = 1
    for row in rows + extra:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    conv = lambda rs: [[int(x * den) for x in r] for r in rs]  # noqa: E731
    return conv(rows), conv(extra)


@lru_cache(maxsize=None)
def _levi_search_data(g: GroupSpec, lv: tuple[int, ...]):
    """Slope generators of pi_1(M)_Gamma with their bound-independent pairings."""
    d = g.datum
    full = tuple(range(g.rank))
    grp = g.pi1(lv)
    cols = grp.slope_matrix
    outside = [i for i in full if i not in lv]
    linv = _left_inverse(cols) if cols else []
    rows = [
        [c.pair(d.simple_roots[i]) for i in outside]
        + [c.pair(w) for w in d.fundamental_weights]
        + list(d.levi_center_projection(c, full).entries)
        for c in cols
    ]
    return grp, cols, outside, linv, rows


def enumerate_classes(g: GroupSpec, bound: RatVector, kappa_target: Pi1Element | None,
                      levis: Iterable[frozenset[int]] | None = None) -> list[SigmaConjClass]:
    """All classes with Newton point <= bound and, if given, Kottwitz point kappa_target."""
    d = g.datum
    if not d.is_dominant(bound):
        raise ValueError(f"bound {bound} is not dominant")
    caps = _coordinate_caps(g, bound)
    full = tuple(range(g.rank))
    n_fw = len(d.fundamental_weights)
    # pairings of the bound, in the same layout as the generator rows
    bound_row = [bound.pair(w) for w in d.fundamental_weights] + list(d.levi_center_projection(bound, full).entries)
    out: list[SigmaConjClass] = []
    for levi in (g.stable_levis if levis is None else levis):
        lv = tuple(sorted(levi))
        grp, cols, outside, linv, gen_rows = _levi_search_data(g, lv)
        ranges = []
        for row in linv:
            r = sum((abs(x) * c for x, c in zip(row, caps)), Fraction(0))
            ranges.append(range(math.floor(-r), math.ceil(r) + 1))
        target_row = [Fraction(0)] * len(outside) + bound_row
        gen, (tgt,) = _scaled(gen_rows, [target_row])
        n_out = len(outside)
        for free in product(*ranges):
            acc = [0] * len(tgt)
            for y, row in zip(free, gen):
                if y:
                    acc = [a + y * r for a, r in zip(acc, row)]
            if any(acc[k] <= 0 for k in range(n_out)):
                continue
            if any(acc[n_out + j] > tgt[n_out + j] for j in range(n_fw)):
                continue
            if acc[n_out + n_fw:] != tgt[n_out + n_fw:]:
                continue
            nu = d.zero()
            for y, c in zip(free, cols):
                if y:
                    nu = nu + c.scale(y)
            for tors in grp.torsion_elements():
                e = grp.assemble(free, tors)
                kap = g.push(e)
                if kappa_target is not None and kap != kappa_target:
                    continue
                out.append(SigmaConjClass(lv, e, nu, kap, full))
    out.sort(key=SigmaConjClass.key)
    return out


def _check_mu(g: GroupSpec, mu: RatVector) -> None:
    if not g.datum.is_dominant(mu):
        raise ValueError(f"mu = {mu} is not dominant")
    if not g.datum.in_lattice(mu):
        raise ValueError(f"mu = {mu} is not an integral coweight")


def mu_sharp(g: GroupSpec, mu: RatVector) -> Pi1Element:
    return g.pi1().class_of(mu)


def enumerate_B_G_mu(g: GroupSpec, mu: RatVector) -> KottwitzSet:
    _check_mu(g, mu)
    bound = g.average(mu)
    target = mu_sharp(g, mu)
    s = KottwitzSet(g, tuple(enumerate_classes(g, bound, target)), "B", bound, target)
    assert s.basic_index is not None, "B(G, mu) must have exactly one basic element"
    assert s.maximal_index is not None, "B(G, mu) must have exactly one maximal element"
    return s


def enumerate_A_G_mu(g: GroupSpec, mu: RatVector) -> KottwitzSet:
    _check_mu(g, mu)
    bound = g.average(mu)
    return KottwitzSet(g, tuple(enumerate_classes(g, bound, None)), "A", bound, None)


def generalized_bound(g: GroupSpec, nu_b: RatVector, mu: RatVector) -> RatVector:
    """Newton bound nu_b + (mu^{-1})^avg of the set B(G, 0, nu_b mu^{-1})."""
    d = g.datum
    if d.levi_center_projection(nu_b, range(g.rank)) != nu_b:
        raise ValueError(f"nu_b = {nu_b} is not central")
    return nu_b + g.average(d.star(mu))


def enumerate_generalized(g: GroupSpec, nu_b: RatVector, mu: RatVector) -> KottwitzSet:
    """B(G, 0, nu_b mu^{-1}): trivial Kottwitz point, Newton point below the shifted bound."""
    _check_mu(g, mu)
    bound = generalized_bound(g, nu_b, mu)
    zero = g.pi1().zero()
    return KottwitzSet(g, tuple(enumerate_classes(g, bound, zero)), "B0", bound, zero)


def enumerate_variants(g: GroupSpec, mu: RatVector, kind: str, nu_b: RatVector | None = None) -> KottwitzSet:
    if kind in ("A", "A_set"):
        return enumerate_A_G_mu(g, mu)
    if kind in ("generalized", "B0"):
        if nu_b is None:
            nu_b = enumerate_B_G_mu(g, mu).elements[0].newton
        return enumerate_generalized(g, nu_b, mu)
    raise ValueError(f"unknown variant {kind!r}")


def N_G_mu(g: GroupSpec, mu: RatVector) -> list[RatVector]:
    b = enumerate_B_G_mu(g, mu).newton_points()
    a = enumerate_A_G_mu(g, mu).newton_points()
    assert sorted(x.entries for x in a) == sorted(x.entries for x in b), "nu(A(G,mu)) != nu(B(G,mu))"
    return sorted(b, key=lambda v: v.entries)


def distinguished_elements(s: KottwitzSet) -> tuple[SigmaConjClass, SigmaConjClass]:
    bi, mi = s.basic_index, s.maximal_index
    assert bi is not None and mi is not None, "distinguished elements are not unique"
    basic, top = s.elements[bi], s.elements[mi]
    if s.kind == "B":
        assert top.newton == s.bound, "mu-ordinary Newton point differs from the averaged mu"
        assert s.minimal_indices() == [bi], "basic element is not the unique minimum"
    return basic, top


def gl_polygon_oracle(n: int, mu: Sequence[int]) -> set[tuple[Fraction, ...]]:
    """Newton polygons of GL_n below the Hodge polygon of mu, by direct search.

    Runs over compositions of n into slope blocks with integral block sums, so
    it shares no code with the Levi enumeration.
    """
    mu = sorted((int(x) for x in mu), reverse=True)
    if len(mu) != n:
        raise ValueError("mu must have n entries")
    total = sum(mu)
    lo, hi = min(mu), max(mu)
    prefix_mu = [sum(mu[:i]) for i in range(n + 1)]
    out: set[tuple[Fraction, ...]] = set()

    def compositions(m: int):
        if m == 0:
            yield ()
            return
        for first in range(1, m + 1):
            for rest in compositions(m - first):
                yield (first,) + rest

    for comp in compositions(n):
        choices = [range(m * lo, m * hi + 1) for m in comp]
        for sums in product(*choices):
            if sum(sums) != total:
                continue
            slopes = [Fraction(s, m) for s, m in zip(sums, comp)]
            if any(a <= b for a, b in zip(slopes, slopes[1:])):
                continue
            nu: list[Fraction] = []
            for s, m in zip(slopes, comp):
                nu.extend([s] * m)
            acc = Fraction(0)
            ok = True
            for i in range(n):
                acc += nu[i]
                if acc > prefix_mu[i + 1]:
                    ok = False
                    break
            if ok:
                out.add(tuple(nu))
    return out


def monotone_injection(g: GroupSpec, mu1: RatVector, mu2: RatVector) -> dict[SigmaConjClass, SigmaConjClass]:
    d = g.datum
    if not d.dominance_leq(d.star(mu1), d.star(mu2), "integral"):
        raise ValueError("the injection needs star(mu1) <= star(mu2)")
    s1, s2 = enumerate_B_G_mu(g, mu1), enumerate_B_G_mu(g, mu2)
    k2 = mu_sharp(g, mu2)
    out = {}
    for b in s1:
        tgt = s2.find(b.newton, k2)
        assert tgt is not None, f"{b.describe()} has no image"
        out[b] = tgt
    assert len(set(out.values())) == len(out), "map is not injective"
    return out


def dominant_grid(n: int, lo: int, hi: int) -> list[RatVector]:
    """Decreasing integer n-vectors with entries in [lo, hi]."""
    out = []
    for c in combinations(range(hi - lo + n), n):
        # stars and bars: weakly decreasing sequences
        vals = [c[i] - i + lo for i in range(n)]
        out.append(cw(*sorted(vals, reverse=True)))
    return sorted(set(out), key=lambda v: v.entries)
