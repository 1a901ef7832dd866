from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from klab.cli import parse_spec
from klab.corpus import small_mus
from klab.kottwitz import enumerate_B_G_mu, make_class
from klab.rootcore import cw
from klab.strata import (cell_dimension, hn_formula_dimension, newton_dimension, newton_points_check,
                         parabolic_induction_data, stratum_dimensions, theta_set, wa_screen)


def test_gl2_types_and_dimensions():
    g = parse_spec("GL2")
    mu = cw(1, 0)
    assert len(theta_set(g, mu)) == 2
    s = enumerate_B_G_mu(g, mu)
    basic, ordinary = s.elements
    rb = stratum_dimensions(g, mu, basic)
    assert rb.dimension == 1 and rb.extra["hn_formula"] == "1"
    ro = stratum_dimensions(g, mu, ordinary)
    assert ro.dimension == 0 and ro.extra["hn_formula"] == "0" and ro.conditional_on_nonemptiness
    assert stratum_dimensions(g, mu, "cell").dimension == 1


def test_cell_dimension_gl3():
    # <2 rho, mu> for GL3, 2 rho = (2, 0, -2)
    assert cell_dimension(parse_spec("GL3"), cw(2, 1, 0)) == 4


def test_hn_formula_counterexample_gl3():
    g = parse_spec("GL3")
    mu = cw(2, 1, -1)
    nu = cw(1, "1/2", "1/2")
    assert newton_dimension(g, mu, nu) == 5
    assert hn_formula_dimension(g, mu, nu) == 4


def test_open_type_has_no_induction():
    g = parse_spec("GL2")
    open_type = [t for t in theta_set(g, cw(1, 0)) if len(t.parabolic) == 1][0]
    with pytest.raises(ValueError):
        parabolic_induction_data(g, open_type)


def test_wa_screen_on_torus_reduction():
    g = parse_spec("GL2")
    mu = cw(1, 0)
    b = enumerate_B_G_mu(g, mu).elements[1]
    b_t = make_class(g, (), [1, 0], ambient=())
    assert wa_screen(g, mu, b, (), b_t, cw(1, 0))["passes"]
    b_t2 = make_class(g, (), [0, 1], ambient=())
    rep = wa_screen(g, mu, b, (), b_t2, cw(1, 0))
    assert rep["degrees"] == [[[0], "1"]] and not rep["passes"]
    assert wa_screen(g, mu, b, (), b_t2, cw(0, 1))["passes"]


SPECS = ["GL2", "GL3", "C2 sc", "GL3 galois=flip,2", "G2 sc", "B2 sc", "A2 sc galois=flip,2"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_theta_images_lie_in_newton_set(spec, data):
    g = parse_spec(spec)
    mu = data.draw(st.sampled_from(small_mus(g)))
    rep = newton_points_check(g, mu)
    assert rep["all_in_N"] and rep["open_is_basic"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_newton_dimension_integral(spec, data):
    g = parse_spec(spec)
    mu = data.draw(st.sampled_from(small_mus(g)))
    for b in enumerate_B_G_mu(g, mu):
        v = newton_dimension(g, mu, b.newton)
        assert v >= 0 and v.denominator == 1
        assert v <= cell_dimension(g, mu)
    s = enumerate_B_G_mu(g, mu)
    assert newton_dimension(g, mu, s.elements[s.maximal_index].newton) == 0
