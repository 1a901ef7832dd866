from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from klab.cli import parse_spec, parse_vector
from klab.kottwitz import (N_G_mu, dominant_grid, enumerate_A_G_mu, enumerate_B_G_mu, enumerate_generalized,
                           gl_polygon_oracle, make_class, mu_sharp)
from klab.rootcore import cw


def newtons(spec, mu):
    g = parse_spec(spec)
    return [b.newton.entries for b in enumerate_B_G_mu(g, parse_vector(mu, g))]


def F(a, b=1):
    return Fraction(a, b)


def test_frozen_gl():
    assert newtons("GL2", "1,0") == [(F(1, 2), F(1, 2)), (1, 0)]
    assert newtons("GL2", "2,0") == [(1, 1), (2, 0)]
    assert newtons("GL3", "2,1,0") == [(1, 1, 1), (F(3, 2), F(3, 2), 0), (2, F(1, 2), F(1, 2)), (2, 1, 0)]


def test_frozen_other_types():
    assert newtons("C2 sc", "1,1") == [(0, 0), (F(1, 2), F(1, 2)), (1, 0), (1, 1)]
    assert newtons("GL3 galois=flip,2", "1,0,0") == [(0, 0, 0), (F(1, 2), 0, F(-1, 2))]


def test_poset_shape_gl3():
    s = enumerate_B_G_mu(parse_spec("GL3"), cw(2, 1, 0))
    assert s.hasse_edges == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert s.basic_index == 0 and s.maximal_index == 3


def test_A_set_drops_kappa_only():
    g = parse_spec("GL2")
    a = enumerate_A_G_mu(g, cw(1, 0))
    assert len(a) == 2
    assert N_G_mu(g, cw(1, 0)) == sorted((b.newton for b in a), key=lambda v: v.entries)


def test_generalized_set_gl2():
    g = parse_spec("GL2")
    s = enumerate_generalized(g, cw(F(1, 2), F(1, 2)), cw(1, 0))
    assert [b.newton.entries for b in s] == [(0, 0)]


def test_make_class_rejects_irregular_slope():
    g = parse_spec("GL2")
    try:
        make_class(g, (), [0, 0])
    except ValueError:
        return
    raise AssertionError("slope (0,0) is not regular outside the torus")


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.integers(-2, 2), min_size=n, max_size=n)))
def test_gl_matches_polygon_oracle(xs):
    n = len(xs)
    mu = cw(*sorted(xs, reverse=True))
    g = parse_spec(f"GL{n}")
    s = enumerate_B_G_mu(g, mu)
    assert {b.newton.entries for b in s} == gl_polygon_oracle(n, mu.entries)
    # unique minimum is basic, unique maximum is mu itself
    assert s.elements[s.basic_index].is_basic
    assert s.elements[s.maximal_index].newton == mu
    assert all(b.kappa == mu_sharp(g, mu) for b in s)


def test_dominant_grid_counts():
    # dominant vectors in [-2,2]^n are multisets of size n from 5 values
    assert [len(dominant_grid(n, -2, 2)) for n in (1, 2, 3, 4)] == [5, 15, 35, 70]


def test_generalized_set_sizes_with_basic_b():
    for spec, mu in (("GL2", cw(1, 0)), ("GL3", cw(1, 0, 0))):
        g = parse_spec(spec)
        b = enumerate_B_G_mu(g, mu).elements[0]
        assert len(enumerate_generalized(g, b.newton, mu)) == 1
