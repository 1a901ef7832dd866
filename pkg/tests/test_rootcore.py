from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from klab.rootcore import build_datum, cw, gl

# (letter, rank) -> (|W|, number of positive roots); textbook values
WEYL_DATA = {
    ("A", 1): (2, 1), ("A", 2): (6, 3), ("A", 3): (24, 6), ("B", 2): (8, 4),
    ("C", 3): (48, 9), ("D", 4): (192, 12), ("G", 2): (12, 6),
}


@pytest.mark.parametrize("key", sorted(WEYL_DATA))
def test_weyl_group_orders(key):
    d = build_datum(*key)
    order, npos = WEYL_DATA[key]
    assert len(d.weyl_group) == order
    assert len(d.positive_roots) == npos
    assert d.longest_element.length == npos


def test_gl_weyl_group_is_symmetric_group():
    d = gl(3)
    mats = {w.matrix for w in d.weyl_group}
    assert len(mats) == 6
    for perm in permutations(range(3)):
        m = tuple(tuple(Fraction(int(perm[i] == j)) for j in range(3)) for i in range(3))
        assert m in mats


def test_fundamental_weights_are_dual_to_coroots():
    for key in WEYL_DATA:
        d = build_datum(*key)
        for i, w in enumerate(d.fundamental_weights):
            for j, c in enumerate(d.simple_coroots):
                assert c.pair(w) == int(i == j)


def test_star_on_gl():
    assert gl(3).star(cw(2, 1, 0)) == cw(0, -1, -2)


def test_coset_rep_count():
    # |W_P \ W / W_Q| for A2 with P = Q = {0}: S2 \ S3 / S2 has 2 double cosets
    d = build_datum("A", 2)
    assert len(d.coset_reps([0], [0])) == 2
    assert len(d.coset_reps([], [])) == 6


def test_bad_isogeny_rejected():
    with pytest.raises(ValueError):
        build_datum("B", 2, "gl")


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.tuples(small, small, small))
def test_dominant_representative_gl3(xs):
    d = gl(3)
    v = cw(*xs)
    dom, w = d.dominant_representative(v)
    assert d.is_dominant(dom)
    assert w.act(v) == dom or w.act_inverse(v) == dom
    assert dom.entries == tuple(sorted(v.entries, reverse=True))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(WEYL_DATA)), st.lists(small, min_size=4, max_size=4))
def test_star_is_involution_and_dominance_reflexive(key, xs):
    d = build_datum(*key)
    v = d.dominant(d.from_lattice_coords(xs[: len(d.lattice_basis)]))
    assert d.star(d.star(v)) == v
    assert d.dominance_leq(v, v)
    for c in d.simple_coroots:
        assert not d.dominance_leq(v + c, v)
