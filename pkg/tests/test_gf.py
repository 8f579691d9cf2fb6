import random

import pytest
from hypothesis import given, settings, strategies as st

from rtsss import gf
from rtsss.errors import DegreeMismatch, DivisionByZero, FieldMismatch, NotIrreducible, NotPrime
from rtsss.gf import FieldElement, ext_field_new, prime_field

from oracles import inverse_by_search, poly_mul_schoolbook

GF32 = ext_field_new(2, 5, (1, 0, 1, 0, 0, 1))
GF343 = ext_field_new(7, 3)
GF3_20 = ext_field_new(3, 20)  # too large for tables, exercises the kernel path
FIELDS = [GF32, GF343, GF3_20, ext_field_new(2, 9), prime_field(11)]


def test_construction_errors():
    with pytest.raises(NotPrime):
        ext_field_new(4, 3)
    with pytest.raises(NotIrreducible):
        ext_field_new(2, 2, (1, 0, 1))
    with pytest.raises(DegreeMismatch):
        ext_field_new(2, 5, (1, 1, 1))


def test_is_prime():
    primes = [n for n in range(200) if gf.is_prime(n)]
    assert primes == [n for n in range(2, 200) if all(n % d for d in range(2, n))]


def test_example_field_powers():
    F = GF32
    w = F.omega
    assert w == 2
    # w^5 = w^2 + 1 from the defining polynomial
    assert F.pow(w, 5) == 0b00101
    assert F.is_primitive
    assert len({F.w(e) for e in range(31)}) == 31
    assert F.w(31) == 1


def test_builtin_poly_choice():
    assert GF32.poly == gf.find_primitive_poly(2, 5)
    assert gf.is_irreducible(2, gf.find_primitive_poly(2, 9))


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_mul_matches_schoolbook(F):
    rng = random.Random(5)
    for _ in range(300):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == poly_mul_schoolbook(F, a, b)


def test_table_and_kernel_multiply_agree():
    F = GF343
    rng = random.Random(2)
    for _ in range(500):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == F.mul_poly(a, b)


def test_inverse_small_field_exhaustive():
    for a in range(1, 32):
        assert GF32.inv(a) == inverse_by_search(GF32, a)
    with pytest.raises(DivisionByZero):
        GF32.inv(0)


@pytest.mark.parametrize("F", [GF32, GF343, GF3_20], ids=str)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(st.integers(0, F.order - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.sub(F.add(a, b), b) == a
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is additive
    assert F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1))
    assert F.frobenius(a, F.m) == a


def test_format_and_parse_round_trip():
    for F in (GF32, GF343, GF3_20, prime_field(11)):
        rng = random.Random(1)
        for _ in range(50):
            a = rng.randrange(F.order)
            assert F.parse(F.format(a)) == a
    assert GF32.format(GF32.parse("w^19")) == "w^19"
    assert GF32.parse("0x3") == 3
    assert prime_field(11).format(7) == "7"


def test_field_element_operators():
    w = FieldElement(GF32, GF32.omega)
    assert w ** 31 == GF32.one()
    assert (w * w.inverse()).code == 1
    assert w - w == GF32.zero()
    assert w.frobenius() == w * w
    with pytest.raises(FieldMismatch):
        _ = w + FieldElement(prime_field(2), 1)


def test_random_is_uniform_over_digits():
    rng = random.Random(0)
    counts = [0] * 7
    for _ in range(7000):
        counts[prime_field(7).random(rng)] += 1
    assert min(counts) > 850
