"""Slow, independent reference implementations used to check the library."""

import itertools
from collections import defaultdict


def brute_force_dependent(field, codes):
    """True iff some nontrivial F_p combination of ``codes`` is zero."""
    p = field.p
    for coeffs in itertools.product(range(p), repeat=len(codes)):
        if not any(coeffs):
            continue
        acc = 0
        for c, x in zip(coeffs, codes):
            for _ in range(c):
                acc = field.add(acc, x)
        if acc == 0:
            return True
    return False


def det3(field, A):
    """Cofactor expansion of a 3x3 determinant."""
    mul, add, sub = field.mul, field.add, field.sub

    def minor(r0, r1, c0, c1):
        return sub(mul(A[r0][c0], A[r1][c1]), mul(A[r0][c1], A[r1][c0]))

    out = mul(A[0][0], minor(1, 2, 1, 2))
    out = sub(out, mul(A[0][1], minor(1, 2, 0, 2)))
    return add(out, mul(A[0][2], minor(1, 2, 0, 1)))


def cramer3(field, A, b):
    """Solve a 3x3 system by Cramer's rule; None when singular."""
    det = det3(field, A)
    if det == 0:
        return None
    out = []
    for c in range(3):
        Ac = [list(row) for row in A]
        for r in range(3):
            Ac[r][c] = b[r]
        out.append(field.div(det3(field, Ac), det))
    return out


def inverse_by_search(field, a):
    return next(b for b in range(1, field.order) if field.mul(a, b) == 1)


def poly_mul_schoolbook(field, a, b):
    """Digit-vector product reduced by the defining polynomial, no tables."""
    p, m = field.p, field.m
    da, db = field.digits(a), field.digits(b)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    poly = field.poly
    for deg in range(2 * m - 2, m - 1, -1):
        c = prod[deg]
        if c:
            for i in range(m + 1):
                prod[deg - m + i] = (prod[deg - m + i] - c * poly[i]) % p
    return field.from_digits(tuple(prod[:m]))


def observed_distribution(config, observe):
    """Loop over every coefficient vector with the direct pipeline."""
    q, t = config.field.order, config.params.t
    counts = defaultdict(lambda: [0] * q)
    for coeffs in itertools.product(range(q), repeat=t):
        counts[tuple(observe(list(coeffs)))][coeffs[0]] += 1
    return dict(counts)


def secrecy_by_brute_force(config, subset):
    from rtsss import regcode
    from rtsss.scheme import evaluations

    def observe(coeffs):
        payloads = regcode.encode_codes(config.code, config.field, evaluations(config, coeffs))
        return [v for i in sorted(subset) for v in payloads[i - 1]]

    dist = observed_distribution(config, observe)
    return dist, all(len(set(row)) == 1 for row in dist.values())
