"""Random scheme generators shared by the property and acceptance tests."""

import random

from rtsss import linalg, linpoly, regcode, scheme
from rtsss.gf import FieldElement, ext_field_new, prime_field

SWEEP = [(4, 2, 3), (5, 3, 4), (6, 3, 5), (6, 4, 5)]


def sweep_fields(t):
    """GF(2^5), GF(2^9) and GF(7^m) with the smallest admissible m >= t."""
    out = [ext_field_new(2, m) for m in (5, 9) if m >= t]
    out.append(ext_field_new(7, t))
    return out


def sweep_configs(seed=0):
    """Every (n, k, d) x field combination of the property sweep that exists."""
    rng = random.Random(seed)
    configs = []
    for n, k, d in SWEEP:
        t = regcode.mbr_t(k, d)
        for F in sweep_fields(t):
            try:
                code = regcode.mbr_code(n, k, d, F.p)
            except regcode.FieldTooSmall:
                continue
            configs.append(scheme.SchemeConfig.create(F, code, rng=rng))
    return configs


def mixed_code(code, rng):
    """Equivalent code ``Q @ G`` for a random invertible ``Q`` over F_p.

    Row mixing keeps every repair table valid (the assembly matrices are
    unchanged) but changes how the stored symbols combine the evaluations.
    """
    fp = code.fp
    t = code.params.t
    while True:
        Q = [[rng.randrange(code.p) for _ in range(t)] for _ in range(t)]
        if linalg.rank(fp, Q) == t:
            break
    blocks = [linalg.matmul(fp, Q, b) for b in code.blocks]
    contributions = {key: e.contributions for key, e in code.repair.items()}
    repair = regcode.build_repair_table(code.params, code.p, blocks, contributions)
    return regcode.LinearRegenCode(code.params, code.p, blocks, repair, name="mixed")


# (code factory, field choices) with p^(m t) <= 2^20
_LINEARIZED = [
    (lambda: regcode.repair_by_transfer_mbr(3, 1, 2), [(2, m) for m in range(2, 11)]),
    (lambda: regcode.product_matrix_mbr(3, 1, 2, 3), [(3, 2), (3, 3), (3, 4)]),
    (lambda: regcode.product_matrix_mbr(3, 2, 2, 3), [(3, 3), (3, 4)]),
    (lambda: regcode.product_matrix_mbr(4, 1, 2, 5), [(5, 2), (5, 3), (5, 4)]),
    (lambda: regcode.product_matrix_mbr(4, 1, 3, 5), [(5, 3)]),
    (lambda: regcode.product_matrix_mbr(3, 1, 2, 7), [(7, 2), (7, 3)]),
]
_NAIVE = [
    (lambda: regcode.naive_example_code(), [(11, 1)]),
    (lambda: regcode.product_matrix_mbr(4, 2, 3, 7), [(7, 1)]),
    (lambda: regcode.product_matrix_mbr(4, 2, 2, 5), [(5, 1), (5, 2)]),
    (lambda: regcode.product_matrix_mbr(3, 2, 2, 3), [(3, 2), (3, 3)]),
    (lambda: regcode.product_matrix_mbr(4, 1, 3, 5), [(5, 1), (5, 2)]),
    (lambda: regcode.repair_by_transfer_mbr(4, 2, 2), [(2, 3), (2, 4)]),
    (lambda: regcode.product_matrix_mbr(5, 3, 3, 7), [(7, 1)]),
]


def random_small_scheme(rng, limit=1 << 20):
    """A random scheme whose full coefficient space has at most ``limit`` vectors."""
    while True:
        mode = rng.choice(scheme.MODES)
        factory, fields = rng.choice(_LINEARIZED if mode == scheme.LINEARIZED else _NAIVE)
        code = factory()
        p, m = rng.choice(fields)
        t = code.params.t
        if p ** (m * t) > limit or (mode == scheme.LINEARIZED and m < t):
            continue
        if mode == scheme.NAIVE and t >= p ** m:
            continue
        if rng.random() < 0.5:
            code = mixed_code(code, rng)
        F = ext_field_new(p, m) if m > 1 else prime_field(p)
        points = _random_points(F, t, mode, rng)
        sid = rng.getrandbits(128).to_bytes(16, "big")
        return scheme.SchemeConfig(F, code, points, sid, mode)


def _random_points(F, t, mode, rng):
    while True:
        codes = [rng.randrange(1, F.order) for _ in range(t)]
        pts = tuple(FieldElement(F, c) for c in codes)
        if mode == scheme.NAIVE:
            if len(set(codes)) == t:
                return pts
        elif linpoly.is_fp_independent(pts):
            return pts
