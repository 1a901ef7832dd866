"""Hodge-Newton decomposability, the fully decomposable verdict and its witness.

A pair (class, bound) is decomposable when a proper Gamma-stable standard Levi
containing the centraliser of the Newton point already carries the whole
difference ``bound - nu`` in the non-negative span of its coroots.  The same
test is run against B(G, mu), its dual J_b version and the two generalized
sets; ``fully_hnd_formulations`` reports all four verdicts side by side.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from . import linalg
from .duality import B_J_generalized, B_J_mu_inverse, dual_local_datum
from .galois import GroupSpec
from .kottwitz import (
    SigmaConjClass,
    enumerate_B_G_mu,
    enumerate_generalized,
    make_class,
    mu_sharp,
)
from .rootcore import RatVector, fmt, sum_vectors


@dataclass(frozen=True)
class HNDecompCertificate:
    levi: tuple[int, ...]
    coefficients: tuple[tuple[tuple[int, ...], Fraction], ...]  # (orbit, coefficient)

    def reconstruct(self, g: GroupSpec) -> RatVector:
        d = g.datum
        parts = [d.simple_coroots[i].scale(c) for orbit, c in self.coefficients for i in orbit]
        return sum_vectors(parts, d.zero())

    def to_json(self) -> dict[str, Any]:
        return {
            "levi": list(self.levi),
            "coefficients": [[list(o), fmt(c)] for o, c in self.coefficients],
        }


def _orbit_coefficients(g: GroupSpec, diff: RatVector, levi: Iterable[int]) -> tuple | None:
    """Expand diff over orbit-summed simple coroots of the Levi, if possible with c >= 0."""
    lv = sorted(levi)
    orbits = [o for o in g.orbits if set(o) <= set(lv)]
    if not orbits:
        return () if diff.is_zero() else None
    cols = [sum_vectors((g.datum.simple_coroots[i] for i in o), g.datum.zero()) for o in orbits]
    a = linalg.transpose([list(c.entries) for c in cols])
    sol = linalg.solve(a, diff.entries)
    if sol is None or any(x < 0 for x in sol):
        return None
    return tuple((o, x) for o, x in zip(orbits, sol))


def decomposition(g: GroupSpec, nu: RatVector, bound: RatVector) -> HNDecompCertificate | None:
    """Smallest proper Gamma-stable Levi over M_nu carrying bound - nu, if any."""
    d = g.datum
    m_nu = d.stabilizer_subset(nu)
    diff = bound - nu
    for levi in g.stable_levis:
        if len(levi) == g.rank or not m_nu <= levi:
            continue
        coeffs = _orbit_coefficients(g, diff, levi)
        if coeffs is not None:
            return HNDecompCertificate(tuple(sorted(levi)), coeffs)
    return None


def is_hn_decomposable(g: GroupSpec, mu: RatVector, b: SigmaConjClass,
                       bound: RatVector | None = None) -> HNDecompCertificate | None:
    if b.is_basic:
        raise ValueError("decomposability is tested on non-basic classes only")
    return decomposition(g, b.newton, g.average(mu) if bound is None else bound)


def _verdict(g: GroupSpec, items: list[tuple[RatVector, bool, Any]], bound: RatVector) -> tuple[bool, list]:
    failures = [tag for nu, basic, tag in items if not basic and decomposition(g, nu, bound) is None]
    return not failures, failures


def is_fully_hnd(g: GroupSpec, mu: RatVector) -> tuple[bool, list[SigmaConjClass]]:
    s = enumerate_B_G_mu(g, mu)
    return _verdict(g, [(b.newton, b.is_basic, b) for b in s], s.bound)


def fully_hnd_formulations(g: GroupSpec, mu: RatVector, b: SigmaConjClass | None = None) -> dict[str, Any]:
    """The four set-level verdicts: B(G,mu), B(J_b,mu^-1), B(G,0,nu_b mu^-1), B(J_b,0,nu_b^-1 mu)."""
    s = enumerate_B_G_mu(g, mu)
    if b is None:
        b = s.elements[s.basic_index]
    dual = dual_local_datum(g, mu, b)
    v1 = _verdict(g, [(x.newton, x.is_basic, x) for x in s], s.bound)
    j1 = B_J_mu_inverse(dual)
    v2 = _verdict(g, [(c.newton, dual.j_is_basic(c), c) for c in j1], g.average(dual.mu_inverse))
    s3 = enumerate_generalized(g, b.newton, mu)
    v3 = _verdict(g, [(x.newton, x.is_basic, x) for x in s3], s3.bound)
    j4 = B_J_generalized(dual)
    v4 = _verdict(g, [(c.newton, dual.j_is_basic(c), c) for c in j4], g.average(mu) - b.newton)
    verdicts = [v1[0], v2[0], v3[0], v4[0]]
    return {
        "verdicts": verdicts,
        "agree": len(set(verdicts)) == 1,
        "failures": [v1[1], v2[1], v3[1], v4[1]],
    }


# -- witness functional ------------------------------------------------------------

def orbit_weight(g: GroupSpec, orbit: Iterable[int]) -> RatVector:
    """Sum of the fundamental weights over a Galois orbit (already centre-free)."""
    d = g.datum
    return sum_vectors((d.fundamental_weights[i] for i in orbit), d.zero("weight"))


@dataclass
class WitnessReport:
    values: list[tuple[tuple[int, ...], Fraction]]
    threshold: Fraction = Fraction(1)
    flagged: list[tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "values": [[list(o), fmt(v)] for o, v in self.values],
            "threshold": fmt(self.threshold),
            "flagged": [list(o) for o in self.flagged],
        }


def witness_functional(g: GroupSpec, mu: RatVector) -> WitnessReport:
    d = g.datum
    if not d.is_dominant(mu):
        raise ValueError(f"mu = {mu} is not dominant")
    lam0 = d.star(mu)
    vals = [(o, lam0.pair(orbit_weight(g, o))) for o in g.orbits]
    rep = WitnessReport(vals)
    rep.flagged = [o for o, v in vals if v > rep.threshold]
    return rep


# -- replay of the non-full construction -----------------------------------------------

def replay_nonfull(g: GroupSpec, mu: RatVector, b: SigmaConjClass | None, alpha: int) -> dict[str, Any]:
    """Build [b'] from a flagged relative root and evaluate the identities of the argument.

    ``alpha`` is any simple index in the flagged orbit; the first index of that
    orbit plays the role of the simple root restricting to it.
    """
    from .semiinfinite import branching_s_mu, leq_P

    d = g.datum
    orbit = g.orbit_of(alpha)
    wit = witness_functional(g, mu)
    if orbit not in wit.flagged:
        raise ValueError(f"relative root {list(orbit)} is not flagged by the witness")
    s = enumerate_B_G_mu(g, mu)
    if b is None:
        b = s.elements[s.basic_index]
    if not b.is_basic or b.kappa != mu_sharp(g, mu):
        raise ValueError("b must be the basic class of B(G, mu)")
    omega = orbit_weight(g, orbit)
    beta = orbit[0]
    beta_cv = d.simple_coroots[beta]
    levi = tuple(i for i in range(g.rank) if i not in orbit)
    grp_m = g.pi1(levi)
    kappa_m = grp_m.class_of(beta_cv)
    b_prime = make_class(g, levi, kappa_m)  # raises if not strictly regular outside M
    gen = enumerate_generalized(g, b.newton, mu)
    member = any(x.newton == b_prime.newton and x.kappa == b_prime.kappa for x in gen)
    assert member, "constructed class is not in B(G, 0, nu_b mu^-1)"
    assert d.stabilizer_subset(b_prime.newton) == set(levi), "centraliser of nu_b' is not M"
    cert = decomposition(g, b_prime.newton, gen.bound)
    assert cert is None, "constructed class is decomposable"

    slope_m = lambda x: g.center_slope(levi, x)  # noqa: E731
    nu_bm = b.newton  # the basic reduction of b to M has the same (central) Newton point
    beta_q = slope_m(beta_cv)
    lam_q = nu_bm - beta_q  # lambda^sharp (x) 1 as dictated by the first identity
    e1_newton_route = nu_bm - b_prime.newton
    full = range(g.rank)
    g_center_mu = d.levi_center_projection(g.average(mu), full)
    smu = branching_s_mu(g, mu, levi)
    realised = [lam for lam in sorted(smu.value, key=lambda v: v.entries) if slope_m(lam) == lam_q]

    lam0 = d.star(mu)
    smu_inv = branching_s_mu(g, lam0, levi)
    lam0_is_max = lam0 in smu_inv.value and all(leq_P(g, x, lam0, levi) for x in smu_inv.value)
    e3_lhs = -nu_bm
    e3_rhs = slope_m(lam0) - beta_q

    return {
        "orbit": list(orbit),
        "beta": beta,
        "levi": list(levi),
        "witness_value": fmt(dict(wit.values)[orbit]),
        "b_prime": {"newton": b_prime.newton.to_json(), "kappa_levi": list(kappa_m.coords)},
        "b_prime_in_generalized_set": member,
        "b_prime_centralizer_is_levi": True,
        "b_prime_decomposable": False,
        "beta_pairing": fmt(beta_cv.pair(omega)),
        "e1": {
            "lambda_q": lam_q.to_json(),
            "newton_route": e1_newton_route.to_json(),
            "holds": lam_q == e1_newton_route,
            "g_pushforward_matches_mu": d.levi_center_projection(lam_q, full) == g_center_mu,
            "realised_by": [lam.to_json() for lam in realised],
        },
        "e2": {"lambda0": lam0.to_json(), "is_max_of_S_M_mu_inverse": lam0_is_max},
        "e3": {
            "lhs": e3_lhs.to_json(),
            "rhs": e3_rhs.to_json(),
            "g_pushforward_agree": d.levi_center_projection(e3_lhs, full) == d.levi_center_projection(e3_rhs, full),
            "lhs_pairing": fmt(e3_lhs.pair(omega)),
            "rhs_pairing": fmt(e3_rhs.pair(omega)),
            "contradiction": e3_lhs.pair(omega) == 0 and e3_rhs.pair(omega) > 0,
        },
        "basic_pairing_zero": b.newton.pair(omega) == 0,
    }


def hnd_certificate_check(g: GroupSpec, nu: RatVector, bound: RatVector, cert: HNDecompCertificate) -> bool:
    d = g.datum
    if any(c < 0 for _, c in cert.coefficients):
        return False
    if not all(set(o) <= set(cert.levi) for o, _ in cert.coefficients):
        return False
    return cert.reconstruct(g) == bound - nu and d.stabilizer_subset(nu) <= set(cert.levi)
