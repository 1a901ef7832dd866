from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from klab.cli import parse_spec
from klab.corpus import small_mus
from klab.hodgenewton import (decomposition, fully_hnd_formulations, hnd_certificate_check, is_fully_hnd,
                              replay_nonfull, witness_functional)
from klab.kottwitz import enumerate_B_G_mu
from klab.rootcore import cw


def test_anchor_verdicts():
    assert is_fully_hnd(parse_spec("GL2"), cw(1, 0))[0]
    assert is_fully_hnd(parse_spec("GL3"), cw(1, 0, 0))[0]
    ok, fails = is_fully_hnd(parse_spec("GL2"), cw(3, 0))
    assert not ok and [b.newton.entries for b in fails] == [(2, 1)]


def test_certificate_reconstructs_difference():
    g = parse_spec("GL3")
    nu, bound = cw(2, "1/2", "1/2"), cw(2, 1, 0)
    cert = decomposition(g, nu, bound)
    assert cert.levi == (1,)
    assert cert.reconstruct(g) == bound - nu
    assert hnd_certificate_check(g, nu, bound, cert)


def test_witness_values():
    w = witness_functional(parse_spec("GL3"), cw(2, 0, 0))
    assert w.values == [((0,), Fraction(2, 3)), ((1,), Fraction(4, 3))]
    assert w.flagged == [(1,)]
    assert witness_functional(parse_spec("GL3"), cw(2, 1, 0)).flagged == []


def test_replay_gl3():
    rep = replay_nonfull(parse_spec("GL3"), cw(2, 0, 0), None, 1)
    assert rep["b_prime"]["newton"] == ["1/2", "1/2", "-1"]
    assert rep["e1"]["holds"] and rep["basic_pairing_zero"] and rep["e3"]["contradiction"]


SPECS = ["GL2", "GL3", "GL4", "C2 sc", "GL3 galois=flip,2", "G2 sc", "B2 sc", "A3 ad"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_witness_implies_not_fully_hnd(spec, data):
    g = parse_spec(spec)
    mu = data.draw(st.sampled_from(small_mus(g)))
    rep = fully_hnd_formulations(g, mu)
    assert rep["agree"]
    if witness_functional(g, mu).flagged:
        assert rep["verdicts"][0] is False


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_certificates_are_valid(spec, data):
    g = parse_spec(spec)
    mu = data.draw(st.sampled_from(small_mus(g)))
    s = enumerate_B_G_mu(g, mu)
    for b in s:
        if b.is_basic:
            continue
        cert = decomposition(g, b.newton, s.bound)
        if cert is not None:
            assert hnd_certificate_check(g, b.newton, s.bound, cert)
            assert cert.reconstruct(g) == s.bound - b.newton
