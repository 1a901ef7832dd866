"""HN types, HN vectors, stratum dimensions and the degree screen.

Conventions: everything is written with the standard Borel B.  The inverse
cocharacter is represented by its dominant form ``lam = star(mu)`` and an HN
type for the standard parabolic with Levi index set J is the J-dominant
vector ``w . lam`` for a minimal double coset representative w, kept when its
central projection is strictly positive on the simple roots outside J.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .galois import GroupSpec
from .hodgenewton import orbit_weight
from .kottwitz import SigmaConjClass, enumerate_B_G_mu
from .rootcore import RatVector, WeylElement, fmt, sum_vectors


@dataclass(frozen=True)
class HNType:
    parabolic: tuple[int, ...]
    nu_P: RatVector
    mu_of_nu: RatVector
    weyl_rep: WeylElement

    @property
    def length(self) -> int:
        return self.weyl_rep.length

    def to_json(self) -> dict[str, Any]:
        return {
            "parabolic": list(self.parabolic),
            "nu_P": self.nu_P.to_json(),
            "mu_of_nu": self.mu_of_nu.to_json(),
            "w": list(self.weyl_rep.word),
            "length": self.length,
        }


@dataclass
class StratumReport:
    label: str
    kind: str
    dimension: int | None
    conjectural: Fraction | None = None
    induction: dict[str, Any] | None = None
    conditional_on_nonemptiness: bool = False
    extra: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "kind": self.kind,
            "dimension": self.dimension,
            "conjectural": None if self.conjectural is None else fmt(self.conjectural),
            "induction": self.induction,
            "conditional_on_nonemptiness": self.conditional_on_nonemptiness,
            **self.extra,
        }


def theta_set(g: GroupSpec, mu: RatVector) -> list[HNType]:
    d = g.datum
    if not d.is_dominant(mu):
        raise ValueError(f"mu = {mu} is not dominant")
    lam = d.star(mu)
    q = d.stabilizer_subset(lam)
    out = []
    for levi in g.stable_levis:
        outside = [i for i in range(g.rank) if i not in levi]
        for w in d.coset_reps(levi, q):
            nu_p = w.act(lam)
            m = g.center_slope(levi, nu_p)
            if all(m.pair(d.simple_roots[i]) > 0 for i in outside):
                out.append(HNType(tuple(sorted(levi)), nu_p, m, w))
    return out


def hn_vector_of_type(g: GroupSpec, theta: HNType) -> RatVector:
    return g.datum.star(theta.mu_of_nu)


def levi_rho2(g: GroupSpec, levi: Iterable[int]) -> RatVector:
    d = g.datum
    return sum_vectors(d.levi_positive_roots(levi), d.zero("weight"))


def newton_dimension(g: GroupSpec, mu: RatVector, nu: RatVector) -> Fraction:
    return (mu - nu).pair(g.datum.rho2)


def cell_dimension(g: GroupSpec, mu: RatVector) -> Fraction:
    return mu.pair(g.datum.rho2)


def types_for_class(g: GroupSpec, mu: RatVector, nu: RatVector, types: list[HNType] | None = None) -> list[HNType]:
    """Types whose HN vector is nu and whose parabolic is the one attached to star(nu)."""
    d = g.datum
    v = d.star(nu)
    levi = tuple(sorted(d.stabilizer_subset(v)))
    types = theta_set(g, mu) if types is None else types
    return [t for t in types if t.parabolic == levi and t.mu_of_nu == v]


def hn_formula_dimension(g: GroupSpec, mu: RatVector, nu: RatVector, types: list[HNType] | None = None) -> Fraction | None:
    """max over admissible w of <w.lam, 2 rho_M> + l(w); None when no type carries nu."""
    cands = types_for_class(g, mu, nu, types)
    if not cands:
        return None
    rho_m = levi_rho2(g, cands[0].parabolic)
    return max(t.nu_P.pair(rho_m) + t.length for t in cands)


def stratum_dimensions(g: GroupSpec, mu: RatVector, target) -> StratumReport:
    """target: a class of B(G, mu), an HNType, or the string 'cell'."""
    if isinstance(target, str):
        if target != "cell":
            raise ValueError("string targets must be 'cell'")
        return StratumReport(f"Gr_{mu}", "cell", int(cell_dimension(g, mu)))
    if isinstance(target, HNType):
        rho_m = levi_rho2(g, target.parabolic)
        dim = target.nu_P.pair(rho_m) + target.length
        ind = None if len(target.parabolic) == g.rank else parabolic_induction_data(g, target)
        return StratumReport(
            f"theta{list(target.parabolic)}:{target.nu_P}", "HN-type", int(dim), None, ind,
            conditional_on_nonemptiness=len(target.parabolic) != g.rank,
        )
    if isinstance(target, SigmaConjClass):
        nd = newton_dimension(g, mu, target.newton)
        if nd.denominator != 1 or nd < 0:
            raise ArithmeticError(f"Newton dimension {nd} is not a non-negative integer")
        hn = hn_formula_dimension(g, mu, target.newton)
        return StratumReport(
            f"[b] nu={target.newton}", "Newton", int(nd), conjectural=nd,
            conditional_on_nonemptiness=not target.is_basic,
            extra={"hn_formula": None if hn is None else fmt(hn),
                   "hn_matches_conjecture": None if hn is None else hn == nd},
        )
    raise TypeError("unsupported stratum target")


def parabolic_induction_data(g: GroupSpec, theta: HNType) -> dict[str, Any]:
    if len(theta.parabolic) == g.rank:
        raise ValueError("the open type (P = G) is not a proper parabolic induction")
    return {
        "levi": list(theta.parabolic),
        "w": list(theta.weyl_rep.word),
        "affine_rank": theta.length,
        "nu_M": theta.nu_P.to_json(),
    }


def maps_to(g: GroupSpec, b_m: SigmaConjClass, b: SigmaConjClass) -> bool:
    """Whether the class b_M of the Levi pushes forward to b."""
    return g.push(b_m.kappa_levi) == b.kappa and g.datum.dominant(b_m.newton) == b.newton


def wa_screen(g: GroupSpec, mu: RatVector, b: SigmaConjClass, levi: Iterable[int],
              b_m: SigmaConjClass, lam: RatVector, check_smu: bool = True) -> dict[str, Any]:
    """Degrees <omega_alpha, lam - nu_{b_M}> for the relative simple roots outside the Levi."""
    from .semiinfinite import branching_s_mu

    d = g.datum
    lv = tuple(sorted(levi))
    if not g.is_stable(lv):
        raise ValueError("Levi must be Gamma-stable")
    if b_m.ambient != lv:
        raise ValueError("b_M must be a class of the given Levi")
    if not maps_to(g, b_m, b):
        raise ValueError("b_M does not map to b")
    if not d.is_dominant(lam, lv):
        raise ValueError(f"{lam} is not dominant for the Levi")
    if check_smu and lam not in branching_s_mu(g, mu, lv).value:
        raise ValueError(f"{lam} is not in S_M(mu)")
    rows = []
    for orbit in g.orbits:
        if set(orbit) <= set(lv):
            continue
        chi = orbit_weight(g, orbit)
        deg = lam.pair(chi) - b_m.newton.pair(chi)
        rows.append((list(orbit), deg))
    return {
        "degrees": [[o, fmt(x)] for o, x in rows],
        "passes": all(x <= 0 for _, x in rows),
    }


def newton_points_check(g: GroupSpec, mu: RatVector) -> dict[str, Any]:
    """H lands in N(G, mu); the open type maps to the basic vector."""
    s = enumerate_B_G_mu(g, mu)
    newton = {b.newton for b in s}
    basic = s.elements[s.basic_index].newton
    types = theta_set(g, mu)
    images = [hn_vector_of_type(g, t) for t in types]
    open_types = [t for t in types if len(t.parabolic) == g.rank]
    return {
        "all_in_N": all(v in newton for v in images),
        "open_is_basic": len(open_types) == 1 and hn_vector_of_type(g, open_types[0]) == basic,
        "count": len(types),
    }
