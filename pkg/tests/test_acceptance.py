"""The ten acceptance criteria, one test each; each prints a single PASS/FAIL line."""
from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction

from acceptance_log import record
from sweeps import filtered_spaces, group_instances, lattice_points

from klab import filspace as fs
from klab.cli import parse_spec, print_spec
from klab.corpus import SPEC_CORPUS, SWEEP_SPECS, sweep_instances
from klab.duality import verify_bijections
from klab.galois import split_group
from klab.hodgenewton import decomposition, fully_hnd_formulations, is_fully_hnd, replay_nonfull, witness_functional
from klab.kottwitz import dominant_grid, enumerate_B_G_mu, enumerate_generalized, gl_polygon_oracle
from klab.rootcore import cw, gl
from klab.semiinfinite import branching_s_mu, leq_P, weight_multiplicities, weyl_dimension
from klab.strata import (cell_dimension, hn_formula_dimension, hn_vector_of_type, newton_dimension,
                         newton_points_check, theta_set)


def _gl(n):
    return split_group(gl(n))


def _minuscule(g, mu):
    return all(mu.pair(a) in (0, 1) for a in g.datum.positive_roots)


def test_criterion_01_kottwitz_oracle():
    t0 = time.perf_counter()
    bad, count = [], 0
    for n in range(1, 5):
        g = _gl(n)
        for mu in dominant_grid(n, -2, 2):
            got = {b.newton.entries for b in enumerate_B_G_mu(g, mu)}
            want = gl_polygon_oracle(n, mu.entries)
            count += 1
            if got != want:
                bad.append(str(mu))
    g2 = {b.newton.entries for b in enumerate_B_G_mu(_gl(2), cw(2, 0))}
    excluded = (Fraction(3, 2), Fraction(1, 2)) not in g2
    elapsed = time.perf_counter() - t0
    ok = not bad and excluded and elapsed < 10
    record(1, ok, f"{count} (n, mu) pairs, mismatches {bad}, (3/2,1/2) excluded {excluded}, {elapsed:.1f}s")
    assert ok


def test_criterion_02_duality():
    t0 = time.perf_counter()
    bad, count = [], 0
    for g, mu in group_instances():
        rep = verify_bijections(g, mu)
        count += 1
        good = rep["ok"] and rep["first"].order_preserving and rep["second"].order_preserving
        good = good and rep["b_inverse_to_unit"] and rep["unit_to_b"]
        if not good:
            bad.append((print_spec(g), str(mu)))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    record(2, ok, f"{count} instances, failures {bad}, {elapsed:.1f}s")
    assert ok


def test_criterion_03_fully_hnd():
    t0 = time.perf_counter()
    disagree = []
    for g, mu in group_instances():
        if not fully_hnd_formulations(g, mu)["agree"]:
            disagree.append((print_spec(g), str(mu)))
    anchors = {
        "GL2 (1,0)": is_fully_hnd(_gl(2), cw(1, 0))[0] is True,
        "GL3 (1,0,0)": is_fully_hnd(_gl(3), cw(1, 0, 0))[0] is True,
    }
    verdict, fails = is_fully_hnd(_gl(2), cw(3, 0))
    anchors["GL2 (3,0)"] = verdict is False and [b.newton.entries for b in fails] == [(2, 1)]
    elapsed = time.perf_counter() - t0
    ok = not disagree and all(anchors.values()) and elapsed < 30
    record(3, ok, f"disagreements {disagree}, anchors {anchors}, {elapsed:.1f}s")
    assert ok


def test_criterion_04_witness():
    flagged, bad = 0, []
    for g, mu in group_instances():
        for orbit in witness_functional(g, mu).flagged:
            flagged += 1
            rep = replay_nonfull(g, mu, None, orbit[0])
            gen = enumerate_generalized(g, enumerate_B_G_mu(g, mu).elements[0].newton, mu)
            newton = cw(*(Fraction(x) for x in rep["b_prime"]["newton"]))
            indecomposable = decomposition(g, newton, gen.bound) is None
            good = (rep["b_prime_in_generalized_set"] and indecomposable and rep["e1"]["holds"]
                    and rep["basic_pairing_zero"] and not is_fully_hnd(g, mu)[0])
            if not good:
                bad.append((print_spec(g), str(mu), list(orbit)))
    ok = flagged > 0 and not bad
    record(4, ok, f"{flagged} flagged (instance, root) pairs replayed, failures {bad}")
    assert ok


def test_criterion_05_dimensions():
    nonint = []
    for g, mu in sweep_instances(SWEEP_SPECS):
        for b in enumerate_B_G_mu(g, mu):
            v = newton_dimension(g, mu, b.newton)
            if v < 0 or v.denominator != 1:
                nonint.append((print_spec(g), str(mu), str(b.newton)))
    cell = cell_dimension(_gl(2), cw(1, 0)) == 1
    compared, mismatches, minuscule_bad = 0, [], []
    for n in (1, 2, 3):
        g = _gl(n)
        for mu in dominant_grid(n, -2, 2):
            types = theta_set(g, mu)
            for b in enumerate_B_G_mu(g, mu):
                hn = hn_formula_dimension(g, mu, b.newton, types)
                if hn is None:
                    continue
                compared += 1
                if hn != newton_dimension(g, mu, b.newton):
                    mismatches.append((str(mu), str(b.newton)))
                    if _minuscule(g, mu):
                        minuscule_bad.append((str(mu), str(b.newton)))
    ok = not nonint and cell and not mismatches
    record(5, ok, f"non-integral {nonint}, cell {cell}, HN formula compared {compared}, "
                  f"mismatches {mismatches} (minuscule mismatches {minuscule_bad})")
    assert not nonint and cell and not minuscule_bad
    assert not mismatches, f"HN-stratum formula differs from <mu-nu,2rho> at {mismatches}"


def test_criterion_06_theta():
    bad = []
    for g, mu in group_instances():
        rep = newton_points_check(g, mu)
        if not (rep["all_in_N"] and rep["open_is_basic"]):
            bad.append((print_spec(g), str(mu)))
    types = theta_set(_gl(2), cw(1, 0))
    images = sorted(hn_vector_of_type(_gl(2), t).entries for t in types)
    ok = not bad and len(types) == 2 and images == [(Fraction(1, 2), Fraction(1, 2)), (1, 0)]
    record(6, ok, f"failures {bad}, |Theta(GL2,(1,0))| = {len(types)}")
    assert ok


def test_criterion_07_semi_infinite():
    t0 = time.perf_counter()
    bad, checked = [], 0
    for g, mu in group_instances():
        d = g.datum
        mass = sum(weight_multiplicities(g, mu).values())
        if mass != weyl_dimension(g, mu):
            bad.append(("mass", print_spec(g), str(mu)))
        for levi in g.stable_levis:
            sm = branching_s_mu(g, mu, levi)
            checked += 1
            sandwich = sm.lower <= sm.value <= sm.upper
            equal = sm.lower == sm.value == sm.upper if _minuscule(g, mu) else True
            maxima = [x for x in sm.value if all(leq_P(g, y, x, levi) for y in sm.value)]
            unique = maxima == [mu] and sm.max_element == mu
            if not (sandwich and equal and unique and d.is_dominant(mu)):
                bad.append((print_spec(g), str(mu), sorted(levi)))
    elapsed = time.perf_counter() - t0
    ok = not bad and checked > 0 and elapsed < 60
    record(7, ok, f"{checked} (instance, Levi) pairs, failures {bad}, {elapsed:.1f}s")
    assert ok


def test_criterion_08_filtered_objects():
    t0 = time.perf_counter()
    problems: dict[str, int] = {}

    def bump(key):
        problems[key] = problems.get(key, 0) + 1

    spaces = filtered_spaces()
    for X in spaces:
        if fs.submodularity_violations(X):
            bump("submodularity")
        fs.hn_filtration(X)  # asserts uniqueness and strictly decreasing slopes
    points = lattice_points()
    route_total = route_bad = route_bad_minuscule = 0
    for L in points:
        cmp = fs.compare_hn_routes(L)
        route_total += 1
        if not cmp["equal"]:
            route_bad += 1
            route_bad_minuscule += cmp["minuscule"]
        if cmp["deg"] != sum(fs.cartan_invariant(L).exponents):
            bump("deg = sum Cartan")
        bb = fs.bb_type_check(L)
        if bb["minuscule"] and not bb["equal"]:
            bump("BB type")
        if not fs.swap_identity(L)["equal"]:
            bump("swap")
        mem = fs.hn_membership(L)
        if not (mem["in_N"] and mem["above_basic"] and mem["below_ordinary"]):
            bump("membership")
    elapsed = time.perf_counter() - t0
    ok = not problems and route_bad == 0 and elapsed < 120
    record(8, ok, f"{len(spaces)} filtered spaces, {len(points)} lattice points, other failures {problems}, "
                  f"two-route mismatches {route_bad}/{route_total} (minuscule {route_bad_minuscule}), {elapsed:.1f}s")
    assert not problems and route_bad_minuscule == 0 and elapsed < 120
    assert route_bad == 0, f"lattice and filtration HN routes differ on {route_bad} non-minuscule points"


def _invariants(L):
    cmp = fs.compare_hn_routes(L)
    return (
        fs.det_valuation(L),
        fs.cartan_invariant(L).exponents,
        fs.hodge_filtration(L).filtration,
        cmp["lattice"].to_json(),
        cmp["filtration"].to_json(),
        fs.swap_identity(L),
        fs.hn_membership(L),
    )


def test_criterion_09_precision(lattice_points):
    changed = [fs.dump_instances([L]).strip() for L in lattice_points
               if _invariants(L) != _invariants(L.with_precision(L.precision + 2))]
    ok = not changed
    record(9, ok, f"{len(lattice_points)} lattice points recomputed at N+2, changed {changed[:3]}")
    assert ok


CLI_RUNS = (
    ["bgmu", "GL3", "2,1,0", "--format=dot"],
    ["fullhnd", "GL2", "3,0"],
    ["dims", "GL2", "1,0", "--stratum=all", "--format=text"],
    ["hnfil", "--matrix=0,t;t,1"],
)


def test_criterion_10_cli_determinism():
    t0 = time.perf_counter()
    nondet = []
    for argv in CLI_RUNS:
        outs = [subprocess.run([sys.executable, "-m", "klab", *argv], capture_output=True, check=True).stdout
                for _ in range(2)]
        if outs[0] != outs[1] or not outs[0]:
            nondet.append(" ".join(argv))
    trips = [s for s in SPEC_CORPUS if print_spec(parse_spec(s)) != s or parse_spec(print_spec(parse_spec(s))) != parse_spec(s)]
    elapsed = time.perf_counter() - t0
    ok = not nondet and not trips and elapsed < 5
    record(10, ok, f"non-deterministic {nondet}, round-trip failures {trips}, {elapsed:.1f}s")
    assert ok
