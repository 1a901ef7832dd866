"""Index sets for semi-infinite orbits meeting a Schubert cell.

For a standard Levi M (index set J) and dominant mu this module computes

* the upper bound: M-dominant weights whose dominant representative is <= mu,
* the lower bound: M-dominant points of the Weyl orbit of mu,
* the branching value: M-highest weights occurring in V_mu of the dual group,
  found by Freudenthal's recursion and stripping Levi characters,

together with the order <=_P given by positive coroots outside M.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable

from . import linalg
from .galois import GroupSpec
from .rootcore import BasedRootDatum, RatVector, sum_vectors


def _dat(g) -> BasedRootDatum:
    return g.datum if isinstance(g, GroupSpec) else g


def _levi_coefficients(d: BasedRootDatum, x: RatVector, subset: list[int]) -> list[Fraction] | None:
    """Coefficients of x on the simple coroots of the Levi, or None outside their span."""
    if not subset:
        return [] if x.is_zero() else None
    a = [[d.simple_coroots[i].pair(d.simple_roots[j]) for i in subset] for j in subset]
    cs = linalg.solve(a, [x.pair(d.simple_roots[j]) for j in subset])
    if cs is None:
        return None
    back = sum_vectors((d.simple_coroots[i].scale(c) for i, c in zip(subset, cs)), d.zero())
    return cs if back == x else None


def levi_dominance_leq(d: BasedRootDatum, x: RatVector, y: RatVector, subset: Iterable[int]) -> bool:
    cs = _levi_coefficients(d, y - x, sorted(subset))
    return cs is not None and all(c >= 0 and c.denominator == 1 for c in cs)


def orbit(d: BasedRootDatum, v: RatVector, subset: Iterable[int] | None = None) -> set[RatVector]:
    idx = list(range(d.rank) if subset is None else subset)
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for i in idx:
            y = d.reflect(i, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def dominant_below(d: BasedRootDatum, mu: RatVector, subset: Iterable[int] | None = None) -> dict[RatVector, int]:
    """Levi-dominant weights <= mu in the Levi's integral order, with their depth."""
    idx = sorted(range(d.rank) if subset is None else subset)
    anti = -d.dominant(-mu, idx)
    top = _levi_coefficients(d, mu - anti, idx)
    if top is None or any(c.denominator != 1 or c < 0 for c in top):
        raise ValueError("mu is not dominant for this Levi")
    out = {}
    for cs in product(*[range(int(c) + 1) for c in top]):
        lam = mu
        for i, c in zip(idx, cs):
            if c:
                lam = lam - d.simple_coroots[i].scale(c)
        if d.is_dominant(lam, idx):
            out[lam] = sum(cs)
    return out


def _form(d: BasedRootDatum, roots: list[RatVector]):
    def k(x: RatVector, y: RatVector) -> Fraction:
        return sum((x.pair(r) * y.pair(r) for r in roots), Fraction(0)) * 2
    return k


def freudenthal(d: BasedRootDatum, mu: RatVector, subset: Iterable[int] | None = None) -> dict[RatVector, int]:
    """Weight multiplicities of the dual-group module of highest weight mu (for the Levi)."""
    idx = sorted(range(d.rank) if subset is None else subset)
    if not d.is_dominant(mu, idx):
        raise ValueError(f"{mu} is not dominant")
    pos_cor = d.levi_positive_coroots(idx)
    pos_roots = d.levi_positive_roots(idx)
    form = _form(d, pos_roots)  # W-invariant, vanishes on the centre
    rho = sum_vectors(pos_cor, d.zero()).scale(Fraction(1, 2))
    dom = dominant_below(d, mu, idx)
    mult: dict[RatVector, int] = {}
    top = form(mu + rho, mu + rho)
    for lam in sorted(dom, key=lambda v: (dom[v], v.entries)):
        if lam == mu:
            mult[lam] = 1
            continue
        acc = Fraction(0)
        for beta in pos_cor:
            k = 1
            while True:
                x = lam + beta.scale(k)
                rep = d.dominant(x, idx)
                if rep not in dom:
                    break
                acc += mult[rep] * form(x, beta)
                k += 1
        den = top - form(lam + rho, lam + rho)
        m = 2 * acc / den
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"non-integral multiplicity {m} at {lam}")
        mult[lam] = int(m)
    return {lam: m for lam, m in mult.items() if m}


def weight_multiplicities(g, mu: RatVector, subset: Iterable[int] | None = None) -> dict[RatVector, int]:
    """All weights of V_mu with multiplicity (full orbits, not only dominant ones)."""
    d = _dat(g)
    idx = sorted(range(d.rank) if subset is None else subset)
    out: dict[RatVector, int] = {}
    for lam, m in freudenthal(d, mu, idx).items():
        for x in orbit(d, lam, idx):
            out[x] = m
    return out


def weyl_dimension(g, mu: RatVector) -> Fraction:
    d = _dat(g)
    rho = d.rho2_coroots.scale(Fraction(1, 2))
    out = Fraction(1)
    for r in d.positive_roots:
        out *= (mu + rho).pair(r) / rho.pair(r)
    return out


def sigma_mdom(g, mu: RatVector, levi: Iterable[int]) -> set[RatVector]:
    """M-dominant weights whose dominant representative is <= mu."""
    d = _dat(g)
    lv = sorted(levi)
    out = set()
    for lam in dominant_below(d, mu):
        for x in orbit(d, lam):
            if d.is_dominant(x, lv):
                out.add(x)
    return out


def weyl_orbit_mdom(g, mu: RatVector, levi: Iterable[int]) -> set[RatVector]:
    """M-dominant points of W mu, computed by filtering and by double-coset representatives."""
    d = _dat(g)
    lv = sorted(levi)
    filtered = {x for x in orbit(d, mu) if d.is_dominant(x, lv)}
    via_cosets = {w.act(mu) for w in d.coset_reps(lv, d.stabilizer_subset(mu))}
    assert filtered == via_cosets, "orbit filter and coset representatives disagree"
    return filtered


def leq_P(g, x: RatVector, y: RatVector, levi: Iterable[int]) -> bool:
    """x <=_P y: y - x is a non-negative combination of positive coroots outside M."""
    d = _dat(g)
    diff = y - x
    if diff.is_zero():
        return True
    gens = d.unipotent_coroots(levi)
    for k in range(1, d.rank + 1):
        for sub in combinations(gens, k):
            a = linalg.transpose([list(c.entries) for c in sub])
            if linalg.rank(a) < k:
                continue
            sol = linalg.solve(a, diff.entries)
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def closure(g, lam: RatVector, pool: Iterable[RatVector], levi: Iterable[int]) -> set[RatVector]:
    lv = sorted(levi)
    return {x for x in pool if leq_P(g, x, lam, lv)}


def leq_P_and_closure(g, lam1: RatVector, lam2: RatVector, levi: Iterable[int], mu: RatVector | None = None):
    """(lam1 <=_P lam2, closure set of lam1 inside the ambient S_M(mu))."""
    d = _dat(g)
    if mu is None:
        mu = d.dominant(lam2)
    pool = branching_s_mu(g, mu, levi).value
    return leq_P(g, lam1, lam2, levi), closure(g, lam1, pool, levi)


@dataclass
class SMuSet:
    levi: tuple[int, ...]
    lower: set[RatVector]
    value: set[RatVector]
    upper: set[RatVector]
    max_element: RatVector
    conditional: bool = True  # the branching value relies on the Satake dictionary

    def sorted_value(self) -> list[RatVector]:
        return sorted(self.value, key=lambda v: v.entries)


def branching(g, mu: RatVector, levi: Iterable[int]) -> dict[RatVector, int]:
    """Multiplicities of Levi highest weights in the restriction of V_mu."""
    d = _dat(g)
    lv = sorted(levi)
    residual = dict(weight_multiplicities(d, mu))
    height = lambda v: sum((v.pair(w) for w in d.fundamental_weights), Fraction(0))  # noqa: E731
    out: dict[RatVector, int] = {}
    while True:
        live = [x for x, m in residual.items() if m > 0]
        if not live:
            break
        lam = max(live, key=lambda v: (height(v), v.entries))
        assert d.is_dominant(lam, lv), "highest remaining weight is not Levi-dominant"
        m = residual[lam]
        out[lam] = m
        for x, k in weight_multiplicities(d, lam, lv).items():
            residual[x] = residual.get(x, 0) - m * k
            if residual[x] < 0:
                raise ArithmeticError("branching produced a negative multiplicity")
    return out


def branching_s_mu(g, mu: RatVector, levi: Iterable[int]) -> SMuSet:
    d = _dat(g)
    lv = tuple(sorted(levi))
    if not d.is_dominant(mu):
        raise ValueError(f"mu = {mu} is not dominant")
    lower = weyl_orbit_mdom(d, mu, lv)
    upper = sigma_mdom(d, mu, lv)
    value = set(branching(d, mu, lv))
    assert lower <= value <= upper, "sandwich lower <= value <= upper fails"
    return SMuSet(lv, lower, value, upper, mu)
