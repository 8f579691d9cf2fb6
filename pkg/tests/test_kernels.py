import random

import numpy as np
import pytest

from rtsss import _kernels_py, kernels
from rtsss.gf import ext_field_new, find_primitive_poly

compiled = pytest.importorskip("rtsss._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("p,m", [(2, 5), (2, 20), (3, 7), (7, 14), (13, 3)])
def test_field_ops_agree(p, m):
    poly = find_primitive_poly(p, m)
    a_ops = compiled.FieldOps(p, m, list(poly[:m]))
    b_ops = _kernels_py.FieldOps(p, m, list(poly[:m]))
    rng = random.Random(p * 100 + m)
    q = p ** m
    for _ in range(300):
        x, y = rng.randrange(q), rng.randrange(q)
        assert a_ops.mul(x, y) == b_ops.mul(x, y)
        assert a_ops.add(x, y) == b_ops.add(x, y)
        assert a_ops.sub(x, y) == b_ops.sub(x, y)
        assert a_ops.neg(x) == b_ops.neg(x)


def test_field_ops_match_tables():
    F = ext_field_new(5, 3)
    ops = compiled.FieldOps(5, 3, list(F.poly[:3]))
    for a in range(0, 125, 7):
        for b in range(125):
            assert ops.mul(a, b) == F.mul(a, b)


def test_enumerate_xor_agree():
    rng = np.random.default_rng(0)
    tables = rng.integers(0, 1 << 40, size=(4, 16), dtype=np.uint64)
    a = np.empty(5000, dtype=np.uint64)
    b = np.empty(5000, dtype=np.uint64)
    compiled.enumerate_keys_xor(tables, 16, 1000, 6000, a)
    _kernels_py.enumerate_keys_xor(tables, 16, 1000, 6000, b)
    assert np.array_equal(a, b)
    # state 0 is the zero vector in every position
    out = np.empty(1, dtype=np.uint64)
    compiled.enumerate_keys_xor(tables, 16, 0, 1, out)
    assert out[0] == np.bitwise_xor.reduce(tables[:, 0])


def test_enumerate_digits_agree():
    rng = np.random.default_rng(1)
    tables = rng.integers(0, 7, size=(3, 49, 6), dtype=np.uint16)
    a = np.empty(49 ** 3, dtype=np.uint64)
    b = np.empty(49 ** 3, dtype=np.uint64)
    compiled.enumerate_keys(tables, 7, 49, 0, 49 ** 3, a)
    _kernels_py.enumerate_keys(tables, 7, 49, 0, 49 ** 3, b)
    assert np.array_equal(a, b)
