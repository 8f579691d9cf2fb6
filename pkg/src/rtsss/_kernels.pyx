# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: polynomial-basis arithmetic in GF(p^m) and the
state-enumeration kernels used by the exhaustive secrecy audit.

Must stay result-identical to ``_kernels_py``; ``tests/test_kernels.py``
compares both backends.
"""

from libc.stdint cimport int64_t, uint64_t, uint16_t

DEF MAXDEG = 64

BACKEND = "cython"


cdef class FieldOps:
    """Arithmetic on integer codes ``sum(d_i * p**i)`` of GF(p^m) elements.

    ``reduction`` holds the low ``m`` coefficients of the monic defining
    polynomial, lowest degree first.
    """

    cdef readonly int64_t p
    cdef readonly int m
    cdef int64_t red[MAXDEG]
    cdef uint64_t polybits

    def __cinit__(self, int64_t p, int m, reduction):
        cdef int i
        if m < 1 or m >= MAXDEG:
            raise ValueError("extension degree out of kernel range")
        if len(reduction) != m:
            raise ValueError("reduction must have exactly m coefficients")
        self.p = p
        self.m = m
        self.polybits = 0
        for i in range(m):
            self.red[i] = int(reduction[i]) % p
            if self.red[i]:
                self.polybits |= (<uint64_t>1) << i

    cdef inline void _digits(self, int64_t a, int64_t* out) nogil:
        cdef int i
        for i in range(self.m):
            out[i] = a % self.p
            a = a // self.p

    cdef inline int64_t _pack(self, int64_t* d) nogil:
        cdef int i
        cdef int64_t r = 0
        for i in range(self.m - 1, -1, -1):
            r = r * self.p + d[i]
        return r

    cpdef int64_t add(self, int64_t a, int64_t b):
        cdef int64_t da[MAXDEG]
        cdef int64_t db[MAXDEG]
        cdef int i
        if self.p == 2:
            return a ^ b
        self._digits(a, da)
        self._digits(b, db)
        for i in range(self.m):
            da[i] = (da[i] + db[i]) % self.p
        return self._pack(da)

    cpdef int64_t sub(self, int64_t a, int64_t b):
        cdef int64_t da[MAXDEG]
        cdef int64_t db[MAXDEG]
        cdef int i
        if self.p == 2:
            return a ^ b
        self._digits(a, da)
        self._digits(b, db)
        for i in range(self.m):
            da[i] = (da[i] - db[i] + self.p) % self.p
        return self._pack(da)

    cpdef int64_t neg(self, int64_t a):
        cdef int64_t da[MAXDEG]
        cdef int i
        if self.p == 2:
            return a
        self._digits(a, da)
        for i in range(self.m):
            da[i] = (self.p - da[i]) % self.p
        return self._pack(da)

    cpdef int64_t mul(self, int64_t a, int64_t b):
        cdef int64_t da[MAXDEG]
        cdef int64_t db[MAXDEG]
        cdef int64_t prod[2 * MAXDEG]
        cdef int i, j, k, m = self.m
        cdef int64_t c, p = self.p
        cdef uint64_t ua, ub, r, top
        if a == 0 or b == 0:
            return 0
        if p == 2:
            # carry-less multiply with interleaved reduction
            ua = <uint64_t>a
            ub = <uint64_t>b
            r = 0
            top = (<uint64_t>1) << m
            while ub:
                if ub & 1:
                    r ^= ua
                ub >>= 1
                ua <<= 1
                if ua & top:
                    ua ^= top | self.polybits
            return <int64_t>r
        self._digits(a, da)
        self._digits(b, db)
        for i in range(2 * m - 1):
            prod[i] = 0
        for i in range(m):
            if da[i] == 0:
                continue
            for j in range(m):
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
        # x^m = -sum red[i] x^i
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = 0
            for i in range(m):
                prod[k - m + i] = (prod[k - m + i] + (p - c) * self.red[i]) % p
        return self._pack(prod)


def enumerate_keys_xor(const uint64_t[:, ::1] tables, int64_t q,
                       int64_t start, int64_t stop, uint64_t[::1] out):
    """Characteristic-2 path: observation of state ``s`` is the XOR of the
    packed table rows selected by the base-``q`` digits of ``s``."""
    cdef int t = tables.shape[0]
    cdef int64_t state, rest
    cdef uint64_t acc
    cdef int i
    with nogil:
        for state in range(start, stop):
            rest = state
            acc = 0
            for i in range(t - 1, -1, -1):
                acc ^= tables[i, rest % q]
                rest = rest // q
            out[state - start] = acc


def enumerate_keys(const uint16_t[:, :, ::1] tables, int64_t p, int64_t q,
                   int64_t start, int64_t stop, uint64_t[::1] out):
    """General-p path: tables hold base-p digits of each observed symbol;
    digits are summed mod p and packed into one base-p key."""
    cdef int t = tables.shape[0]
    cdef int w = tables.shape[2]
    cdef int64_t state, rest, v
    cdef int64_t acc[512]
    cdef uint64_t key
    cdef int i, j
    if w > 512:
        raise ValueError("observation too wide for the compiled kernel")
    with nogil:
        for state in range(start, stop):
            for j in range(w):
                acc[j] = 0
            rest = state
            for i in range(t - 1, -1, -1):
                v = rest % q
                rest = rest // q
                for j in range(w):
                    acc[j] += tables[i, v, j]
            key = 0
            for j in range(w - 1, -1, -1):
                key = key * <uint64_t>p + <uint64_t>(acc[j] % p)
            out[state - start] = key
