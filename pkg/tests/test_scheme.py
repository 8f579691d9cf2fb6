import itertools
import random
import warnings

import pytest

from rtsss import linalg, scheme
from rtsss.errors import (
    DependentPoints,
    InconsistentShares,
    InsufficientShares,
    MixedSchemes,
    ModeMismatch,
    NotInRepairSet,
    ParamsUnsatisfiable,
    WrongPacketSet,
)
from rtsss.gf import FieldElement, ext_field_new
from rtsss.regcode import paper_example_code, product_matrix_mbr


class CountingRandom(random.Random):
    def __init__(self, seed):
        super().__init__(seed)
        self.calls = 0

    def randrange(self, *args, **kwargs):
        self.calls += 1
        return super().randrange(*args, **kwargs)


def golden_split():
    cfg = scheme.example_config()
    F = cfg.field
    with pytest.warns(scheme.InsecureTestWarning):
        shares = scheme.split(FieldElement(F, F.omega), cfg, insecure_test_coeffs=[1, 1, 1, 1])
    return cfg, shares


def powers(F, share):
    return [F.format(v.code) for v in share.payload]


def test_golden_shares():
    cfg, shares = golden_split()
    F = cfg.field
    assert [powers(F, s) for s in shares] == [
        ["w^1", "w^19", "w^20"],
        ["w^1", "w^25", "w^22"],
        ["w^19", "w^25", "w^2"],
        ["w^20", "w^22", "w^2"],
    ]
    assert scheme.recover(cfg, [shares[1], shares[2]]).code == F.omega
    assert [c.code for c in scheme.recover_polynomial(cfg, shares[:2]).coeffs] == [F.omega, 1, 1, 1, 1]


def test_golden_repair():
    cfg, shares = golden_split()
    F = cfg.field
    T = (1, 2, 3)
    packets = [scheme.repair_contribute(cfg, shares[j - 1], 4, T) for j in T]
    assert [F.format(pk.data[0].code) for pk in packets] == ["w^20", "w^22", "w^2"]
    assert scheme.repair_assemble(cfg, 4, packets) == shares[3]


def test_mbr_params():
    assert scheme.mbr_params(4, 2, 3) == (5, 3, 1)
    assert scheme.mbr_params(2, 1, 1) == (1, 1, 1)
    assert scheme.mbr_params(5, 3, 4) == (9, 4, 1)


def test_round_trip_and_repair_transparency():
    F = ext_field_new(7, 9)
    cfg = scheme.SchemeConfig.create(F, product_matrix_mbr(5, 3, 4, 7), rng=random.Random(0))
    rng = random.Random(1)
    for _ in range(3):
        s = FieldElement(F, rng.randrange(F.order))
        shares = scheme.split(s, cfg, rng)
        for B in itertools.combinations(range(5), 3):
            assert scheme.recover(cfg, [shares[i] for i in B]) == s
        for i in range(1, 6):
            for T in cfg.code.helper_sets(i):
                pk = [scheme.repair_contribute(cfg, shares[j - 1], i, T) for j in T]
                rebuilt = scheme.repair_assemble(cfg, i, pk)
                assert rebuilt == shares[i - 1]


def test_randomness_budget():
    cfg = scheme.example_config()
    F = cfg.field
    rng = CountingRandom(3)
    scheme.split(FieldElement(F, 5), cfg, rng)
    # t - 1 = 4 elements, one draw per base-p digit
    assert rng.calls == 4 * F.m


def test_binding_and_errors():
    cfg = scheme.example_config()
    other = scheme.example_config(scheme_id=b"\x01" * 16)
    F = cfg.field
    s = FieldElement(F, 9)
    a = scheme.split(s, cfg, random.Random(1))
    b = scheme.split(s, other, random.Random(1))
    with pytest.raises(InsufficientShares):
        scheme.recover(cfg, a[:1])
    with pytest.raises(MixedSchemes):
        scheme.recover(cfg, [a[0], b[1]])
    with pytest.raises(MixedSchemes):
        scheme.recover(cfg, b[:2])
    tampered = scheme.Share(3, (a[2].payload[0] + F.one(),) + a[2].payload[1:], cfg.scheme_id)
    with pytest.raises(InconsistentShares):
        scheme.recover(cfg, [a[0], a[1], tampered])
    with pytest.raises(NotInRepairSet):
        scheme.repair_contribute(cfg, a[3], 1, (2, 3, 4)[:2] + (1,))
    packets = [scheme.repair_contribute(cfg, a[j - 1], 4, (1, 2, 3)) for j in (1, 2, 3)]
    with pytest.raises(WrongPacketSet):
        scheme.repair_assemble(cfg, 4, packets[:2])
    with pytest.raises(ModeMismatch):
        scheme.naive_split(s, cfg)


def test_config_validation():
    code = paper_example_code(2)
    with pytest.raises(ParamsUnsatisfiable):
        scheme.SchemeConfig.create(ext_field_new(2, 4), code)
    F = ext_field_new(2, 5, (1, 0, 1, 0, 0, 1))
    pts = tuple(FieldElement(F, c) for c in (1, 2, 3, 4, 8))  # 1 + 2 = 3
    with pytest.raises(DependentPoints):
        scheme.SchemeConfig(F, code, pts, bytes(16))


def test_naive_example_relations():
    """Node 3 of the naive example sees two combinations of the evaluations."""
    cfg = scheme.naive_example_config()
    F = cfg.field
    G3 = cfg.code.block(3)
    # columns as combinations of (y1..y4)
    assert [list(c) for c in zip(*G3)] == [[0, 2, 1, 1], [5, 1, 1, 3]]
    # composed with y = (s, a1, a2, a3) @ Vandermonde
    composed = linalg.matmul(F, cfg.coefficient_matrix(), G3)
    assert [list(c) for c in zip(*composed)] == [[4, 0, 0, 8], [10, 0, 0, 1]]
    # hence 8 * (second) - (first) = 76 s = 10 s: node 3 alone solves for s
    rng = random.Random(0)
    for _ in range(20):
        s = FieldElement(F, rng.randrange(11))
        z1, z2 = (v.code for v in scheme.naive_split(s, cfg, rng)[2].payload)
        assert F.div(F.sub(F.mul(8, z2), z1), 10) == s.code


def test_override_warns():
    cfg = scheme.example_config()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        scheme.split(cfg.field.zero(), cfg, insecure_test_coeffs=[0, 0, 0, 0])
    assert any(issubclass(w.category, scheme.InsecureTestWarning) for w in caught)
