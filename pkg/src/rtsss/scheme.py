"""Repairable threshold secret sharing built from a linearized polynomial
and a linear regenerating code.

``split`` draws ``f(x) = s x + sum a_i x^(p^i)``, evaluates it at ``t``
public F_p-independent points and encodes the evaluations with the code.
Any ``k`` shares recover the evaluations, hence ``f`` and ``s``; any ``d``
helpers rebuild a lost share exactly.

The ``naive`` mode swaps the linearized polynomial for an ordinary
Shamir polynomial ``s + sum a_j x^j``. It keeps recovery and repair but
leaks the secret to fewer than ``k`` participants; it exists only so the
audit can demonstrate that failure.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field as dc_field

from . import linalg, linpoly, regcode
from .errors import (
    DependentPoints,
    FieldMismatch,
    InsufficientShares,
    LengthMismatch,
    MixedSchemes,
    ModeMismatch,
    NotInRepairSet,
    ParamsUnsatisfiable,
    WrongPacketSet,
)
from .gf import ExtensionField, FieldElement

LINEARIZED = "linearized"
NAIVE = "naive"
MODES = (LINEARIZED, NAIVE)


class InsecureTestWarning(UserWarning):
    """Raised when fixed polynomial coefficients replace fresh randomness."""


def mbr_params(n: int, k: int, d: int) -> tuple[int, int, int]:
    """``(t, alpha, beta)`` of an MBR instantiation with ``beta = 1``."""
    regcode.CodeParams(n, k, d, d, 1, regcode.mbr_t(k, d))  # validates
    return regcode.mbr_t(k, d), d, 1


@dataclass(frozen=True)
class Share:
    index: int
    payload: tuple
    scheme_id: bytes


@dataclass(frozen=True)
class RepairPacket:
    helper: int
    failed: int
    helpers: tuple
    data: tuple
    scheme_id: bytes


@dataclass(frozen=True, eq=False)
class SchemeConfig:
    """Public parameters of one split instance."""

    field: ExtensionField
    code: regcode.LinearRegenCode
    points: tuple
    scheme_id: bytes
    mode: str = LINEARIZED
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        t = self.code.params.t
        if self.mode not in MODES:
            raise ModeMismatch(f"unknown mode {self.mode!r}")
        if self.field.p != self.code.p:
            raise FieldMismatch(
                f"code is over F_{self.code.p} but the field has characteristic {self.field.p}")
        if len(self.scheme_id) != 16:
            raise ValueError("scheme_id must be 16 bytes")
        if len(self.points) != t:
            raise LengthMismatch(f"need exactly t={t} evaluation points")
        for x in self.points:
            self.field.check(x)
        if self.mode == LINEARIZED:
            if self.field.m < t:
                raise ParamsUnsatisfiable(f"extension degree m={self.field.m} < t={t}")
            if not linpoly.is_fp_independent(self.points):
                raise DependentPoints("evaluation points are not F_p-independent")
        else:
            codes = [x.code for x in self.points]
            if 0 in codes or len(set(codes)) != t:
                raise DependentPoints("naive mode needs distinct nonzero points")

    @classmethod
    def create(cls, field, code, *, mode=LINEARIZED, points=None, scheme_id=None, rng=None):
        t = code.params.t
        if points is None:
            if mode == LINEARIZED:
                if field.m < t:
                    raise ParamsUnsatisfiable(f"extension degree m={field.m} < t={t}")
                points = linpoly.default_points(field, t)
            else:
                if t >= field.order:
                    raise ParamsUnsatisfiable("field too small for t distinct nonzero points")
                points = tuple(FieldElement(field, i) for i in range(1, t + 1))
        if scheme_id is None:
            rng = rng or random.SystemRandom()
            scheme_id = rng.getrandbits(128).to_bytes(16, "big")
        return cls(field, code, tuple(points), bytes(scheme_id), mode)

    def __eq__(self, other):
        if not isinstance(other, SchemeConfig):
            return NotImplemented
        return (self.field == other.field and self.code == other.code
                and self.points == other.points and self.scheme_id == other.scheme_id
                and self.mode == other.mode)

    def __hash__(self):
        return hash((self.field, self.code, self.points, self.scheme_id, self.mode))

    @property
    def params(self):
        return self.code.params

    def point_codes(self) -> list[int]:
        return [x.code for x in self.points]

    def coefficient_matrix(self) -> list[list[int]]:
        """``E`` with ``evaluations = coefficients @ E`` (Moore or Vandermonde)."""
        if "E" not in self._cache:
            xs = self.point_codes()
            if self.mode == LINEARIZED:
                E = linpoly.moore_codes(self.field, xs)
            else:
                E = [[self.field.pow(x, i) for x in xs] for i in range(len(xs))]
            self._cache["E"] = E
        return self._cache["E"]

    def secret_weights(self) -> list[int]:
        """Column of ``E^-1`` that maps evaluations to the secret coefficient."""
        if "w" not in self._cache:
            inv = linalg.inverse(self.field, self.coefficient_matrix())
            self._cache["w"] = [row[0] for row in inv]
        return self._cache["w"]


# -- dealer side --------------------------------------------------------------

def _draw_coefficients(config, secret, rng, insecure_test_coeffs):
    field = config.field
    t = config.params.t
    if insecure_test_coeffs is not None:
        warnings.warn("using fixed polynomial coefficients; shares are NOT secure",
                      InsecureTestWarning, stacklevel=3)
        rest = [field.element(c).code for c in insecure_test_coeffs]
        if len(rest) != t - 1:
            raise LengthMismatch(f"need t-1={t - 1} override coefficients")
        return [secret.code] + rest
    rng = rng or random.SystemRandom()
    return [secret.code] + [field.random(rng) for _ in range(t - 1)]


def evaluations(config: SchemeConfig, coeffs) -> list[int]:
    """Evaluate the mode's polynomial with coefficient codes at the points."""
    field = config.field
    xs = config.point_codes()
    if config.mode == LINEARIZED:
        return [linpoly.evaluate_codes(field, coeffs, x) for x in xs]
    out = []
    for x in xs:
        acc = 0
        for c in reversed(coeffs):  # Horner
            acc = field.add(field.mul(acc, x), c)
        out.append(acc)
    return out


def shares_from_coefficients(config: SchemeConfig, coeffs) -> list[Share]:
    y = evaluations(config, coeffs)
    payloads = regcode.encode_codes(config.code, config.field, y)
    F = config.field
    return [Share(i + 1, tuple(FieldElement(F, v) for v in pay), config.scheme_id)
            for i, pay in enumerate(payloads)]


def split(secret: FieldElement, config: SchemeConfig, rng=None, *, insecure_test_coeffs=None):
    """Shares of ``secret`` for all ``n`` participants (linearized mode).

    ``rng`` must provide ``randrange``; it defaults to OS entropy. Exactly
    ``t - 1`` field elements are drawn from it.
    """
    if config.mode != LINEARIZED:
        raise ModeMismatch("split needs a linearized-mode config; use naive_split")
    config.field.check(secret)
    coeffs = _draw_coefficients(config, secret, rng, insecure_test_coeffs)
    return shares_from_coefficients(config, coeffs)


def naive_split(secret: FieldElement, config: SchemeConfig, rng=None, *, insecure_test_coeffs=None):
    """Shamir polynomial followed by the regenerating code. Not secure."""
    if config.mode != NAIVE:
        raise ModeMismatch("naive_split needs a naive-mode config")
    config.field.check(secret)
    coeffs = _draw_coefficients(config, secret, rng, insecure_test_coeffs)
    return shares_from_coefficients(config, coeffs)


# -- participants -------------------------------------------------------------

def _check_ids(config, items):
    ids = {it.scheme_id for it in items}
    if len(ids) > 1:
        raise MixedSchemes("items come from different split instances")
    if ids and ids != {config.scheme_id}:
        raise MixedSchemes("items do not belong to this scheme configuration")


def recover(config: SchemeConfig, shares) -> FieldElement:
    """Secret from any ``k`` or more shares of one split."""
    shares = list(shares)
    _check_ids(config, shares)
    idx = [s.index for s in shares]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate share index")
    if len(shares) < config.params.k:
        raise InsufficientShares(f"{len(shares)} shares given, {config.params.k} required")
    F = config.field
    payloads = []
    for s in shares:
        for v in s.payload:
            F.check(v)
        payloads.append([v.code for v in s.payload])
    y = regcode.recover_codes(config.code, F, idx, payloads)
    acc = 0
    for wj, yj in zip(config.secret_weights(), y):
        if wj and yj:
            acc = F.add(acc, F.mul(wj, yj))
    return FieldElement(F, acc)


def recover_polynomial(config: SchemeConfig, shares) -> linpoly.LinearizedPolynomial:
    """Full coefficient vector (linearized mode) via Moore interpolation."""
    if config.mode != LINEARIZED:
        raise ModeMismatch("polynomial recovery is defined for the linearized mode")
    shares = list(shares)
    _check_ids(config, shares)
    if len(shares) < config.params.k:
        raise InsufficientShares(f"{len(shares)} shares given, {config.params.k} required")
    y = regcode.recover_data(config.code, config.field, [s.index for s in shares],
                             [s.payload for s in shares])
    return linpoly.interpolate(config.points, y)


def repair_contribute(config: SchemeConfig, helper_share: Share, failed: int, helpers) -> RepairPacket:
    """The piece of ``helper_share`` sent towards rebuilding share ``failed``."""
    T = tuple(sorted(helpers))
    _check_ids(config, [helper_share])
    if len(T) != config.params.d or len(set(T)) != len(T):
        raise NotInRepairSet(f"repair set must hold {config.params.d} distinct helpers")
    if helper_share.index not in T:
        raise NotInRepairSet(f"helper {helper_share.index} is not in {T}")
    if failed in T:
        raise NotInRepairSet(f"failed participant {failed} cannot be a helper")
    data = regcode.repair_contribution(config.code, config.field, helper_share.index,
                                       helper_share.payload, failed, T)
    return RepairPacket(helper_share.index, failed, T, data, config.scheme_id)


def repair_assemble(config: SchemeConfig, failed: int, packets) -> Share:
    """Rebuild share ``failed`` from one packet per helper of a repair set."""
    packets = sorted(packets, key=lambda pk: pk.helper)
    _check_ids(config, packets)
    if len(packets) != config.params.d:
        raise WrongPacketSet(f"need {config.params.d} packets, got {len(packets)}")
    helpers = tuple(pk.helper for pk in packets)
    if len(set(helpers)) != len(helpers):
        raise WrongPacketSet("duplicate helper packets")
    for pk in packets:
        if pk.failed != failed or tuple(pk.helpers) != helpers:
            raise WrongPacketSet("packets disagree on the failed share or repair set")
    payload = regcode.repair_assemble(config.code, config.field, failed, helpers,
                                      [pk.data for pk in packets])
    return Share(failed, payload, config.scheme_id)


# -- ready-made configurations -------------------------------------------------

def example_config(scheme_id: bytes = bytes(16)) -> SchemeConfig:
    """GF(2^5) with x^5 + x^2 + 1, the (4,2,3) binary MBR code, points 1..w^4."""
    from .gf import ext_field_new

    field = ext_field_new(2, 5, (1, 0, 1, 0, 0, 1))
    return SchemeConfig.create(field, regcode.paper_example_code(2), scheme_id=scheme_id)


def naive_example_config(scheme_id: bytes = bytes(16)) -> SchemeConfig:
    """F_11, the alpha = 2 (4,2,3) code and public points x_i = i."""
    from .gf import prime_field

    return SchemeConfig.create(prime_field(11), regcode.naive_example_code(), mode=NAIVE,
                               scheme_id=scheme_id)
