from __future__ import annotations

from hypothesis import given, settings, strategies as st

from klab.cli import parse_spec
from klab.corpus import small_mus
from klab.duality import B_J_generalized, B_J_mu_inverse, dual_local_datum, verify_bijections
from klab.kottwitz import enumerate_B_G_mu
from klab.rootcore import cw


def test_sizes_gl():
    r2 = verify_bijections(parse_spec("GL2"), cw(1, 0))
    assert (len(r2["first"].pairs), len(r2["second"].pairs)) == (1, 2)
    r3 = verify_bijections(parse_spec("GL3"), cw(1, 0, 0))
    assert (len(r3["first"].pairs), len(r3["second"].pairs)) == (1, 3)
    assert r2["ok"] and r3["ok"]


def test_b_inverse_is_sent_to_unit():
    g = parse_spec("GL2")
    s = enumerate_B_G_mu(g, cw(1, 0))
    d = dual_local_datum(g, cw(1, 0), s.elements[0])
    nu, kappa = d.transfer(d.b_inverse)
    assert nu.is_zero() and kappa == g.pi1().zero()
    assert [c.newton.entries for c in B_J_mu_inverse(d)] == [(-0.5, -0.5)]
    assert len(B_J_generalized(d)) == 2


def test_non_basic_rejected():
    g = parse_spec("GL2")
    s = enumerate_B_G_mu(g, cw(1, 0))
    try:
        dual_local_datum(g, cw(1, 0), s.elements[1])
    except ValueError:
        return
    raise AssertionError("non-basic b accepted")


SPECS = ["GL2", "GL3", "C2 sc", "A2 sc galois=flip,2", "G2 sc", "B2 sc"]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_bijections_random(spec, data):
    g = parse_spec(spec)
    mu = data.draw(st.sampled_from(small_mus(g)))
    assert verify_bijections(g, mu)["ok"]
