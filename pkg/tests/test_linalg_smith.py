from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from klab import linalg
from klab.smith import diagonal, imatmul, inverse_unimodular, smith_normal_form

int_mats = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def _det_int(m):
    return int(sympy.Matrix(m).det())


@settings(max_examples=120, deadline=None)
@given(int_mats)
def test_snf_transform_identity(a):
    u, d, v = smith_normal_form(a)
    assert imatmul(imatmul(u, a), v) == d
    assert abs(_det_int(u)) == 1 and abs(_det_int(v)) == 1
    diag = diagonal(d)
    for x, y in zip(diag, diag[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)


@settings(max_examples=120, deadline=None)
@given(int_mats)
def test_snf_matches_sympy(a):
    ours = [abs(x) for x in diagonal(smith_normal_form(a)[1])]
    ref = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert ours == theirs


def test_snf_frozen():
    assert [abs(x) for x in diagonal(smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])[1])] == [2, 6, 12]


def test_inverse_unimodular():
    m = [[2, 1], [1, 1]]
    assert imatmul(m, inverse_unimodular(m)) == [[1, 0], [0, 1]]


fr_mats = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(fr_mats)
def test_det_and_inverse_against_sympy(a):
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in a])
    assert linalg.det(a) == Fraction(str(ref.det()))
    assert linalg.rank(a) == ref.rank()
    if ref.det() != 0:
        assert linalg.matmul(a, linalg.inverse(a)) == linalg.identity(len(a))


@settings(max_examples=80, deadline=None)
@given(fr_mats)
def test_nullspace_is_annihilated(a):
    for v in linalg.nullspace(a):
        assert all(x == 0 for x in linalg.matvec(a, v))
    assert len(linalg.nullspace(a)) == len(a[0]) - linalg.rank(a)
