"""Linearized polynomials ``f(x) = c_0 x + sum_i c_i x^(p^i)`` over GF(p^m).

The secret lives in ``c_0``. Evaluations at F_p-independent points are
related to the coefficients through the Moore matrix ``X[i][j] =
x_j^(p^i)``, which is invertible exactly when the points are independent.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import (
    DegreeTooLarge,
    DependentPoints,
    FieldMismatch,
    LengthMismatch,
    NoSolution,
)
from .gf import ExtensionField, FieldElement


@dataclass(frozen=True)
class LinearizedPolynomial:
    field: ExtensionField
    coeffs: tuple  # FieldElements, secret first

    @property
    def t(self) -> int:
        return len(self.coeffs)

    @property
    def secret(self) -> FieldElement:
        return self.coeffs[0]

    def __call__(self, x: FieldElement) -> FieldElement:
        return evaluate(self, x)


def _codes(field, values):
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            field.check(v)
            out.append(v.code)
        else:
            out.append(field.element(v).code)
    return out


def random_linpoly(field: ExtensionField, t: int, secret: FieldElement, rng) -> LinearizedPolynomial:
    """Secret as ``c_0``; the other ``t - 1`` coefficients uniform from ``rng``."""
    if t < 1:
        raise ValueError("t must be at least 1")
    if t > field.m:
        raise DegreeTooLarge(f"t={t} exceeds extension degree m={field.m}")
    field.check(secret)
    coeffs = [secret] + [FieldElement(field, field.random(rng)) for _ in range(t - 1)]
    return LinearizedPolynomial(field, tuple(coeffs))


def evaluate_codes(field: ExtensionField, coeffs, x: int) -> int:
    acc = 0
    term = x
    for i, c in enumerate(coeffs):
        if i:
            term = field.frobenius(term, 1)
        if c and term:
            acc = field.add(acc, field.mul(c, term))
    return acc


def evaluate(f: LinearizedPolynomial, x: FieldElement) -> FieldElement:
    if x.field != f.field:
        raise FieldMismatch("evaluation point from a different field")
    coeffs = [c.code for c in f.coeffs]
    return FieldElement(f.field, evaluate_codes(f.field, coeffs, x.code))


def default_points(field: ExtensionField, t: int) -> tuple:
    """``(1, w, ..., w^(t-1))``: a prefix of the polynomial basis."""
    if t < 1:
        raise ValueError("need at least one point")
    if t > field.m:
        raise DegreeTooLarge(f"t={t} exceeds extension degree m={field.m}")
    return tuple(FieldElement(field, field.p ** i) for i in range(t))


def moore_codes(field: ExtensionField, xs) -> list[list[int]]:
    t = len(xs)
    rows = [list(xs)]
    for _ in range(1, t):
        rows.append([field.frobenius(v, 1) for v in rows[-1]])
    return rows


def moore_matrix(points) -> list[list[FieldElement]]:
    """t x t matrix with row ``i`` holding the points raised to ``p**i``."""
    if not points:
        raise ValueError("empty point set")
    field = points[0].field
    rows = moore_codes(field, _codes(field, points))
    return [[FieldElement(field, v) for v in row] for row in rows]


def is_fp_independent(points) -> bool:
    """Moore-determinant test for F_p-linear independence."""
    if not points:
        raise ValueError("empty point set")
    field = points[0].field
    xs = _codes(field, points)
    if len(xs) > field.m:
        return False
    return linalg.rank(field, moore_codes(field, xs)) == len(xs)


def interpolate(points, values) -> LinearizedPolynomial:
    """Unique linearized polynomial with ``f(points[j]) == values[j]``.

    Solves ``X^T c = y`` for the Moore matrix ``X`` of the points.
    """
    if len(points) != len(values):
        raise LengthMismatch("points and values differ in length")
    if not points:
        raise ValueError("empty point set")
    field = points[0].field
    xs = _codes(field, points)
    ys = _codes(field, values)
    c = interpolate_codes(field, xs, ys)
    return LinearizedPolynomial(field, tuple(FieldElement(field, v) for v in c))


def interpolate_codes(field, xs, ys) -> list[int]:
    if len(xs) > field.m:
        raise DependentPoints("more than m points are always F_p-dependent")
    X = moore_codes(field, xs)
    try:
        sol = linalg.solve(field, linalg.transpose(X), [[y] for y in ys])
    except (linalg.Underdetermined, NoSolution):
        raise DependentPoints("evaluation points are F_p-dependent") from None
    return [row[0] for row in sol]

