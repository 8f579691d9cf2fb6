"""Pure-Python/numpy implementation of the kernels in ``_kernels.pyx``.

Selected automatically when the compiled extension is unavailable.
"""

import numpy as np

BACKEND = "python"


class FieldOps:
    """Arithmetic on integer codes ``sum(d_i * p**i)`` of GF(p^m) elements."""

    __slots__ = ("p", "m", "_red", "_poly_bits")

    def __init__(self, p, m, reduction):
        if len(reduction) != m:
            raise ValueError("reduction must have exactly m coefficients")
        self.p = p
        self.m = m
        self._red = tuple(int(c) % p for c in reduction)
        self._poly_bits = sum(1 << i for i, c in enumerate(self._red) if c)

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def _pack(self, digits):
        r = 0
        p = self.p
        for d in reversed(digits):
            r = r * p + d
        return r

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._pack([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        return self._pack([(x - y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.p == 2:
            return a
        p = self.p
        return self._pack([(-x) % p for x in self._digits(a)])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        m = self.m
        if self.p == 2:
            top = 1 << m
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= top | self._poly_bits
            return r
        p = self.p
        da = self._digits(a)
        db = self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        red = self._red
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(m):
                    prod[k - m + i] = (prod[k - m + i] - c * red[i]) % p
        return self._pack(prod[:m])


def _state_digits(q, t, start, stop):
    states = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((t, stop - start), dtype=np.int64)
    for i in range(t - 1, -1, -1):
        digits[i] = states % q
        states //= q
    return digits


def enumerate_keys_xor(tables, q, start, stop, out):
    digits = _state_digits(q, tables.shape[0], start, stop)
    acc = np.zeros(stop - start, dtype=np.uint64)
    for i in range(tables.shape[0]):
        acc ^= tables[i][digits[i]]
    out[: stop - start] = acc


def enumerate_keys(tables, p, q, start, stop, out):
    t, _, w = tables.shape
    digits = _state_digits(q, t, start, stop)
    acc = np.zeros((stop - start, w), dtype=np.int64)
    for i in range(t):
        acc += tables[i][digits[i]]
    acc %= p
    key = np.zeros(stop - start, dtype=np.uint64)
    for j in range(w - 1, -1, -1):
        key = key * np.uint64(p) + acc[:, j].astype(np.uint64)
    out[: stop - start] = key
