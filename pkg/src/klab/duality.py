"""Transfer between classes of G and of the inner form J_b for basic b.

J_b shares the root datum and the Newton/Kottwitz target spaces with G, so a
class of J_b is recorded just by its pair (nu, kappa).  The transfer adds the
central Newton point and the Kottwitz point of b.  The checks below enumerate
the J_b side and the G side by separate routes and compare them as posets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .galois import GroupSpec, Pi1Element
from .kottwitz import (
    SigmaConjClass,
    enumerate_B_G_mu,
    enumerate_classes,
    enumerate_generalized,
    mu_sharp,
)
from .rootcore import RatVector


@dataclass(frozen=True, order=True)
class JClass:
    """A class of J_b, by its Newton point (dominant, Gamma-invariant) and Kottwitz point."""

    newton: RatVector
    kappa: Pi1Element

    def describe(self) -> str:
        return f"nu={self.newton} kappa={list(self.kappa.coords)}"


@dataclass(frozen=True)
class DualDatum:
    base: GroupSpec
    mu: RatVector
    nu_shift: RatVector
    kappa_shift: Pi1Element
    mu_inverse: RatVector

    @property
    def _pi1(self):
        return self.base.pi1()

    def transfer(self, c: JClass) -> tuple[RatVector, Pi1Element]:
        return c.newton + self.nu_shift, self._pi1.add(c.kappa, self.kappa_shift)

    def inverse_transfer(self, b: SigmaConjClass) -> JClass:
        return JClass(b.newton - self.nu_shift, self._pi1.add(b.kappa, self._pi1.neg(self.kappa_shift)))

    def transfer_class(self, c: JClass, pool: list[SigmaConjClass]) -> SigmaConjClass:
        nu, kap = self.transfer(c)
        for b in pool:
            if b.newton == nu and b.kappa == kap:
                return b
        raise LookupError(f"no class of G with nu={nu}, kappa={list(kap.coords)}")

    def j_leq(self, a: JClass, b: JClass) -> bool:
        return a.kappa == b.kappa and self.base.datum.dominance_leq(a.newton, b.newton, "rational")

    def j_is_basic(self, a: JClass) -> bool:
        d = self.base.datum
        return d.levi_center_projection(a.newton, range(d.rank)) == a.newton

    @property
    def b_inverse(self) -> JClass:
        """The class [b^{-1}] of J_b."""
        return JClass(-self.nu_shift, self._pi1.neg(self.kappa_shift))

    @property
    def j_unit(self) -> JClass:
        return JClass(self.base.datum.zero(), self._pi1.zero())


def dual_local_datum(g: GroupSpec, mu: RatVector, b: SigmaConjClass) -> DualDatum:
    if not b.is_basic:
        raise ValueError("the dual datum needs a basic class")
    if b.kappa != mu_sharp(g, mu):
        raise ValueError("b is not in B(G, mu)")
    return DualDatum(g, mu, b.newton, b.kappa, g.datum.star(mu))


def transfer_class(d: DualDatum, c: JClass) -> tuple[RatVector, Pi1Element]:
    return d.transfer(c)


def j_classes_below(d: DualDatum, bound_j: RatVector) -> list[JClass]:
    """Classes of J_b with Newton point <= bound_j, any Kottwitz point."""
    pool = enumerate_classes(d.base, bound_j + d.nu_shift, None)
    out = []
    for b in pool:
        c = d.inverse_transfer(b)
        if d.base.datum.dominance_leq(c.newton, bound_j, "rational"):
            out.append(c)
    return sorted(out)


def B_J_mu_inverse(d: DualDatum) -> list[JClass]:
    """B(J_b, mu^{-1}): kappa = (mu^{-1})^sharp, nu <= (mu^{-1})^avg, tested on the J side."""
    g = d.base
    bound = g.average(d.mu_inverse)
    target = g.pi1().class_of(-d.mu)
    return [c for c in j_classes_below(d, bound) if c.kappa == target]


def B_J_generalized(d: DualDatum) -> list[JClass]:
    """B(J_b, 0, nu_{b^{-1}} mu): kappa = 0, nu <= mu^avg - nu_b, tested on the J side."""
    g = d.base
    bound = g.average(d.mu) - d.nu_shift
    zero = g.pi1().zero()
    return [c for c in j_classes_below(d, bound) if c.kappa == zero]


@dataclass
class BijectionCheck:
    name: str
    j_side: list[JClass]
    g_side: list[SigmaConjClass]
    pairs: list[tuple[JClass, SigmaConjClass]] = field(default_factory=list)
    mismatch: str | None = None
    order_preserving: bool = False
    basic_to_basic: bool = False
    max_to_max: bool = False

    @property
    def ok(self) -> bool:
        return self.mismatch is None and self.order_preserving and self.basic_to_basic and self.max_to_max

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "size": len(self.pairs),
            "pairs": [[c.newton.to_json(), b.newton.to_json()] for c, b in self.pairs],
            "mismatch": self.mismatch,
            "order_preserving": self.order_preserving,
            "basic_to_basic": self.basic_to_basic,
            "max_to_max": self.max_to_max,
        }


def _check(d: DualDatum, name: str, j_side: list[JClass], g_side: list[SigmaConjClass]) -> BijectionCheck:
    rep = BijectionCheck(name, j_side, g_side)
    datum = d.base.datum
    remaining = list(g_side)
    for c in j_side:
        nu, kap = d.transfer(c)
        hit = next((b for b in remaining if b.newton == nu and b.kappa == kap), None)
        if hit is None:
            rep.mismatch = f"J-class {c.describe()} has no partner on the G side"
            return rep
        remaining.remove(hit)
        rep.pairs.append((c, hit))
    if remaining:
        rep.mismatch = f"G-class {remaining[0].describe()} is not hit"
        return rep

    def g_leq(a: SigmaConjClass, b: SigmaConjClass) -> bool:
        return a.kappa == b.kappa and datum.dominance_leq(a.newton, b.newton, "rational")

    rep.order_preserving = all(
        d.j_leq(c1, c2) == g_leq(b1, b2) for c1, b1 in rep.pairs for c2, b2 in rep.pairs
    )
    rep.basic_to_basic = all(d.j_is_basic(c) == b.is_basic for c, b in rep.pairs)
    j_max = [c for c, _ in rep.pairs if not any(c2 != c and d.j_leq(c, c2) for c2, _ in rep.pairs)]
    g_max = [b for _, b in rep.pairs if not any(b2 != b and g_leq(b, b2) for _, b2 in rep.pairs)]
    image = {c: b for c, b in rep.pairs}
    rep.max_to_max = sorted(image[c].key() for c in j_max) == sorted(b.key() for b in g_max)
    return rep


def verify_bijections(g: GroupSpec, mu: RatVector, b: SigmaConjClass | None = None) -> dict[str, Any]:
    if b is None:
        s = enumerate_B_G_mu(g, mu)
        b = s.elements[s.basic_index]
    d = dual_local_datum(g, mu, b)
    first = _check(d, "B(J_b,mu^-1) -> B(G,0,nu_b mu^-1)", B_J_mu_inverse(d),
                   list(enumerate_generalized(g, d.nu_shift, mu)))
    second = _check(d, "B(J_b,0,nu_b^-1 mu) -> B(G,mu)", B_J_generalized(d), list(enumerate_B_G_mu(g, mu)))
    unit_nu, unit_k = d.transfer(d.j_unit)
    inv_nu, inv_k = d.transfer(d.b_inverse)
    round_trip = all(d.inverse_transfer(x) == c for c, x in first.pairs + second.pairs)
    return {
        "first": first,
        "second": second,
        "b_inverse_to_unit": inv_nu.is_zero() and inv_k == g.pi1().zero(),
        "unit_to_b": unit_nu == b.newton and unit_k == b.kappa,
        "round_trip": round_trip,
        "ok": first.ok and second.ok and round_trip,
    }
