from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from klab import finfield as ff

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)]


@pytest.mark.parametrize("p,k", FIELDS)
def test_field_axioms(p, k):
    f = ff.field(p, k)
    xs = range(f.q)
    for a in xs:
        assert f.add(a, f.neg_t[a]) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in xs:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
    # multiplicative group is cyclic of order q - 1
    orders = []
    for a in range(1, f.q):
        k_ = 1
        while f.power(a, k_) != 1:
            k_ += 1
        orders.append(k_)
    assert max(orders) == f.q - 1


def test_subfields():
    assert sorted(ff.field(2, 2).subfield(1)) == [0, 1]
    assert len(ff.field(3, 2).subfield(1)) == 3
    assert len(ff.field(2, 2).subfield(2)) == 4
    with pytest.raises(ValueError):
        ff.field(2, 3).subfield(2)


def test_not_prime():
    with pytest.raises(ValueError):
        ff.GF(4)


@pytest.mark.parametrize("p,k,n", [(2, 1, 3), (2, 2, 2), (3, 1, 3), (2, 1, 4)])
def test_subspace_count_is_gaussian(p, k, n):
    f = ff.field(p, k)
    subs = ff.all_subspaces(f, n)
    assert len(subs) == len(set(subs)) == ff.gaussian_binomial_total(f.q, n)
    assert all(ff.rref(f, list(s)) == s for s in subs)


def test_gaussian_frozen():
    # subspaces of F_2^3: 1 + 7 + 7 + 1
    assert ff.gaussian_binomial_total(2, 3) == 16


vecs = st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3).map(tuple), max_size=4)


@settings(max_examples=100, deadline=None)
@given(vecs, vecs)
def test_dimension_formula_over_gf4(a, b):
    f = ff.field(2, 2)
    ra, rb = ff.rref(f, a), ff.rref(f, b)
    assert len(ff.span_sum(f, ra, rb)) + ff.intersection_dim(f, ra, rb) == len(ra) + len(rb)
    ann = ff.annihilator(f, ra, 3)
    assert len(ann) == 3 - len(ra)
    for c in ann:
        for w in ra:
            acc = 0
            for x, y in zip(c, w):
                acc = f.add(acc, f.mul(x, y))
            assert acc == 0
