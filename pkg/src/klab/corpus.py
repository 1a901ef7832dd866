"""The fixed sweep corpus shared by the CLI sweep runner and the test suite."""
from __future__ import annotations

from itertools import product

from .galois import GroupSpec
from .kottwitz import dominant_grid
from .rootcore import RatVector, cw

# group specs in the canonical CLI syntax
SWEEP_SPECS = ("GL2", "GL3", "GL4", "C2 sc", "GL3 galois=flip,2")
EXTRA_SPECS = ("A1 sc", "A1 ad", "A2 sc galois=flip,2", "A3 ad", "B2 sc", "C2 ad", "G2 sc", "D4 sc")
SPEC_CORPUS = SWEEP_SPECS + EXTRA_SPECS + ("GL1", "D4 sc galois=0/1/3/2,2", "A3 sc galois=flip,2")


def _is_gl(g: GroupSpec) -> bool:
    d = g.datum
    return d.label.startswith("GL")


def small_mus(g: GroupSpec, bound: int = 2) -> list[RatVector]:
    """Small dominant coweights: entries in [0, bound] for GL_n, a bounded lattice box otherwise."""
    d = g.datum
    if _is_gl(g):
        n = d.ambient
        out = set(dominant_grid(n, 0, bound))
        if n >= 2:
            out.add(cw(1, *([0] * (n - 2)), -1))
        return sorted(out, key=lambda v: v.entries)
    out = set()
    basis = d.lattice_basis
    for coeffs in product(range(-bound, bound + 1), repeat=len(basis)):
        v = d.zero()
        for c, b in zip(coeffs, basis):
            v = v + b.scale(c)
        if not d.is_dominant(v):
            continue
        if any(v.pair(a) > bound for a in d.simple_roots):
            continue
        if any(abs(x) > bound for x in v.entries):
            continue
        out.add(v)
    return sorted(out, key=lambda v: v.entries)


def sweep_groups(specs=SWEEP_SPECS) -> list[GroupSpec]:
    from .cli import parse_spec
    return [parse_spec(s) for s in specs]


def sweep_instances(specs=SWEEP_SPECS, bound: int = 2) -> list[tuple[GroupSpec, RatVector]]:
    return [(g, mu) for g in sweep_groups(specs) for mu in small_mus(g, bound)]
