"""Sweeps shared between test modules, built once per process."""
from __future__ import annotations

from functools import lru_cache

from klab import filspace as fs
from klab.corpus import SWEEP_SPECS, sweep_instances

# the duality sweep also covers the quasi-split twisted A_2 as a semisimple group
DUALITY_SPECS = SWEEP_SPECS + ("A2 sc galois=flip,2",)


@lru_cache(maxsize=None)
def group_instances(specs=DUALITY_SPECS):
    return tuple(sweep_instances(specs))


@lru_cache(maxsize=None)
def lattice_points():
    """Exhaustive n <= 2 lattice sweep over GF(2) with entries in span{t^-1, 1, t}."""
    out = []
    for n in (1, 2):
        out += fs.lattice_sweep(n, 2)
    return tuple(out)


@lru_cache(maxsize=None)
def filtered_spaces():
    out = []
    for n in (1, 2):
        out += fs.filtered_sweep(n, 2)
        out += fs.filtered_sweep(n, 2, m=2)
    out += fs.filtered_sweep(2, 2, jumps=(0, "1/2", 1))
    return tuple(out)
