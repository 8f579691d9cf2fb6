import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rtsss import linpoly
from rtsss.errors import DegreeTooLarge, DependentPoints
from rtsss.gf import FieldElement, ext_field_new

from oracles import brute_force_dependent

GF32 = ext_field_new(2, 5, (1, 0, 1, 0, 0, 1))
GF9 = ext_field_new(3, 2)
GF125 = ext_field_new(5, 3)


def elems(F, codes):
    return [FieldElement(F, c) for c in codes]


@pytest.mark.parametrize("F", [GF32, GF9, GF125], ids=str)
def test_independence_matches_brute_force(F):
    rng = random.Random(F.order)
    for size in range(1, F.m + 2):
        for _ in range(40):
            codes = [rng.randrange(F.order) for _ in range(size)]
            expect = not brute_force_dependent(F, codes)
            assert linpoly.is_fp_independent(elems(F, codes)) == expect


def test_independence_exhaustive_pairs_gf9():
    for a, b in itertools.product(range(9), repeat=2):
        assert linpoly.is_fp_independent(elems(GF9, [a, b])) == (not brute_force_dependent(GF9, [a, b]))


def test_example_interpolation():
    F = GF32
    pts = linpoly.default_points(F, 5)
    assert [p.code for p in pts] == [1, 2, 4, 8, 16]
    ys = [F.w(e) for e in (1, 19, 20, 25, 22)]
    f = linpoly.interpolate(pts, elems(F, ys))
    assert [c.code for c in f.coeffs] == [F.omega, 1, 1, 1, 1]
    assert f.secret.code == F.omega


@settings(max_examples=80, deadline=None)
@given(coeffs=st.lists(st.integers(0, 31), min_size=1, max_size=5),
       a=st.integers(0, 31), b=st.integers(0, 31))
def test_evaluation_is_fp_linear(coeffs, a, b):
    F = GF32
    f = linpoly.LinearizedPolynomial(F, tuple(elems(F, coeffs)))
    x, y = FieldElement(F, a), FieldElement(F, b)
    assert f(x + y) == f(x) + f(y)


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_interpolate_round_trip(data):
    F = GF125
    t = data.draw(st.integers(1, 3))
    seed = data.draw(st.integers(0, 2**32))
    rng = random.Random(seed)
    secret = FieldElement(F, rng.randrange(F.order))
    f = linpoly.random_linpoly(F, t, secret, rng)
    while True:
        pts = elems(F, [rng.randrange(F.order) for _ in range(t)])
        if linpoly.is_fp_independent(pts):
            break
    g = linpoly.interpolate(pts, [f(x) for x in pts])
    assert g == f


def test_dependent_points_rejected():
    F = GF32
    pts = elems(F, [3, 5, 6])  # 3 + 5 = 6 over F_2
    with pytest.raises(DependentPoints):
        linpoly.interpolate(pts, elems(F, [1, 2, 3]))
    with pytest.raises(DependentPoints):
        linpoly.interpolate_codes(F, list(range(1, 7)), [0] * 6)
    with pytest.raises(DegreeTooLarge):
        linpoly.default_points(F, 6)


def test_moore_matrix_rows_are_frobenius_powers():
    F = GF9
    pts = elems(F, [1, 3])
    X = linpoly.moore_matrix(pts)
    assert X[0] == pts
    assert X[1] == [x ** 3 for x in pts]
