"""Prime fields F_p and extension fields GF(p^m) in polynomial basis.

Elements are handled internally as integer codes ``sum(d_i * p**i)`` where
``d_i`` is the coefficient of ``w**i`` and ``w`` is the residue class of
``x`` modulo the defining polynomial. Constants ``0 .. p-1`` are therefore
the codes of the prime subfield, which lets F_p-valued matrices be used
directly inside GF(p^m) arithmetic.

:class:`FieldElement` wraps a code together with its field for the public
API; the heavy lifting in the rest of the package works on raw codes.
"""

from __future__ import annotations

import functools
import random
import re

from . import kernels
from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
)

# Primitive defining polynomials, lowest degree first. (2, 5) is the field
# used in the worked golden example.
BUILTIN_POLYS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 9): (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    (2, 10): (1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    (2, 11): (1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}

TABLE_LIMIT = 1 << 16  # log/antilog tables are built up to this field order


def is_prime(p: int) -> bool:
    """Trial division; adequate for the supported range p < 2**16."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists lowest degree first -------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, f, p)


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(p: int, poly) -> bool:
    """Rabin's test for a monic polynomial over F_p (lowest degree first)."""
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    f = list(poly)
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p ** m, f, p), x, p):
        return False
    for r in _prime_factors(m):
        h = _poly_sub(_poly_powmod(x, p ** (m // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) > 1:
            return False
    return True


def _x_is_primitive(p, poly):
    m = len(poly) - 1
    order = p ** m - 1
    x = [0, 1]
    for r in _prime_factors(order):
        if _poly_powmod(x, order // r, list(poly), p) == [1]:
            return False
    return _poly_mod(x, list(poly), p) != [] or order == 0


def find_primitive_poly(p: int, m: int) -> tuple:
    """Smallest (by integer code) monic primitive polynomial of degree m."""
    key = (p, m)
    if key in BUILTIN_POLYS:
        return BUILTIN_POLYS[key]
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        poly = tuple(low) + (1,)
        if low[0] == 0:
            continue
        if is_irreducible(p, poly) and _x_is_primitive(p, poly):
            return poly
    raise NotIrreducible(f"no primitive polynomial of degree {m} over F_{p}")


def poly_to_int(p: int, poly) -> int:
    return sum(c * p ** i for i, c in enumerate(poly))


def int_to_poly(p: int, value: int) -> tuple:
    out = []
    while value:
        value, r = divmod(value, p)
        out.append(r)
    return tuple(out)


class ExtensionField:
    """GF(p^m) defined by a monic irreducible polynomial over F_p.

    ``defining_poly`` is given lowest degree first, e.g. ``x^5 + x^2 + 1``
    over F_2 is ``(1, 0, 1, 0, 0, 1)``.
    """

    def __init__(self, p: int, m: int, defining_poly=None):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p >= 1 << 16:
            raise NotPrime(f"prime {p} outside supported range p < 2**16")
        if m < 1:
            raise DegreeMismatch("extension degree must be positive")
        if defining_poly is None:
            defining_poly = find_primitive_poly(p, m)
        poly = tuple(int(c) % p for c in defining_poly)
        if len(poly) != m + 1:
            raise DegreeMismatch(f"defining polynomial must have degree {m}")
        if poly[-1] != 1:
            raise DegreeMismatch("defining polynomial must be monic")
        if not is_irreducible(p, poly):
            raise NotIrreducible(f"{format_poly(poly)} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.poly = poly
        self.order = p ** m
        if self.order >= 1 << 63:
            raise DegreeMismatch("field order must stay below 2**63")
        self._ops = kernels.FieldOps(p, m, list(poly[:m]))
        # residue class of x
        self.omega = poly_to_int(p, _poly_mod([0, 1], list(poly), p))
        self.is_primitive = m > 0 and _x_is_primitive(p, poly)
        self._exp = self._log = None
        if self.order <= TABLE_LIMIT and self.order > 2:
            self._build_tables()

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (self.p, self.m, self.poly) == (
            other.p, other.m, other.poly)

    def __hash__(self):
        return hash((self.p, self.m, self.poly))

    def __repr__(self):
        return f"GF({self.p}^{self.m}, {format_poly(self.poly)})"

    # -- tables ----------------------------------------------------------

    def _build_tables(self):
        q = self.order
        gen = self.omega if self.is_primitive else self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        a = 1
        mul = self._ops.mul
        for e in range(q - 1):
            exp[e] = a
            log[a] = e
            a = mul(a, gen)
        exp[q - 1:] = exp[: q - 1]
        self._exp, self._log = exp, log

    def _find_generator(self):
        q = self.order
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._pow_slow(g, (q - 1) // r) != 1 for r in factors):
                return g
        return 1  # q == 2

    def _pow_slow(self, a, e):
        r = 1
        mul = self._ops.mul
        while e:
            if e & 1:
                r = mul(r, a)
            a = mul(a, a)
            e >>= 1
        return r

    # -- arithmetic on codes ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self._ops.add(a, b)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % self.p
        return self._ops.sub(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        return self._ops.neg(a)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._ops.mul(a, b)

    def mul_poly(self, a: int, b: int) -> int:
        """Multiplication through the polynomial-basis kernel only."""
        if self.m == 1:
            return a * b % self.p
        return self._ops.mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.m == 1:
            return pow(a, e, self.p)
        if self._exp is not None:
            return self._exp[self._log[a] * e % (self.order - 1)]
        return self._pow_slow(a, e % (self.order - 1) or (self.order - 1))

    def frobenius(self, a: int, i: int = 1) -> int:
        """``a ** (p ** i)``; the exponent is reduced modulo m first."""
        if i < 0:
            raise ValueError("Frobenius power must be non-negative")
        i %= self.m
        if i == 0 or a == 0:
            return a
        return self.pow(a, self.p ** i)

    def scale(self, c: int, a: int) -> int:
        """Multiply ``a`` by the prime-field scalar ``c``."""
        c %= self.p
        if c == 0 or a == 0:
            return 0
        if c == 1:
            return a
        return self.mul(c, a)

    def random(self, rng) -> int:
        """Uniform element: each base-p digit by unbiased ``randrange``."""
        code = 0
        for i in range(self.m):
            code += rng.randrange(self.p) * self.p ** i
        return code

    # -- conversions -----------------------------------------------------

    def digits(self, a: int) -> tuple:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_digits(self, digits) -> int:
        if len(digits) != self.m:
            raise DegreeMismatch(f"expected {self.m} digits, got {len(digits)}")
        code = 0
        for d in reversed(digits):
            if not 0 <= d < self.p:
                raise ValueError(f"digit {d} out of range for p={self.p}")
            code = code * self.p + d
        return code

    def log(self, a: int) -> int:
        """Discrete log to base ``w``; requires a primitive defining polynomial."""
        if not self.is_primitive:
            raise ValueError("power notation needs a primitive defining polynomial")
        if a == 0:
            raise DivisionByZero("log of zero")
        if self._log is not None:
            return self._log[a]
        # baby-step giant-step on the multiplicative group
        n = self.order - 1
        step = int(n ** 0.5) + 1
        baby = {}
        e = 1
        for j in range(step):
            baby.setdefault(e, j)
            e = self.mul(e, self.omega)
        giant = self.pow(self.inv(self.omega), step)
        gamma = a
        for i in range(step + 1):
            if gamma in baby:
                return (i * step + baby[gamma]) % n
            gamma = self.mul(gamma, giant)
        raise ArithmeticError("discrete log not found")

    def w(self, e: int) -> int:
        """Code of ``w**e``."""
        return self.pow(self.omega, e)

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        if not 0 <= value < self.order:
            raise ValueError(f"code {value} out of range")
        return FieldElement(self, value)

    def check(self, x: "FieldElement"):
        if x.field != self:
            raise FieldMismatch(f"element of {x.field} used in {self}")

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def format(self, a: int) -> str:
        """Power form ``w^e`` for tabulated fields, digit vector otherwise."""
        if self.m == 1:
            return str(a)
        if a == 0:
            return "0"
        if self.is_primitive and self._log is not None:
            return f"w^{self.log(a)}"
        return "[" + ",".join(str(d) for d in self.digits(a)) + "]"

    def parse(self, text: str) -> int:
        """Inverse of :meth:`format`; also accepts ``w``, ``1`` and ``0x`` codes."""
        s = text.strip().replace(" ", "")
        if self.m == 1 and s.isdigit():
            return self.element(int(s)).code
        if s == "0":
            return 0
        if s == "1":
            return 1
        if s in ("w", "ω"):
            return self.omega
        mt = re.fullmatch(r"(?:w|ω)\^?\(?(-?\d+)\)?", s)
        if mt:
            return self.w(int(mt.group(1)))
        if s.lower().startswith("0x"):
            return self.element(int(s, 16)).code
        mt = re.fullmatch(r"\[([\d,]*)\]", s)
        if mt:
            return self.from_digits(tuple(int(d) for d in mt.group(1).split(",")))
        raise ValueError(f"cannot parse field element {text!r}")


@functools.lru_cache(maxsize=64)
def _cached_field(p, m, poly):
    return ExtensionField(p, m, poly)


def ext_field_new(p: int, m: int, defining_poly=None) -> ExtensionField:
    """Construct (and cache) GF(p^m); verifies primality and irreducibility."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if defining_poly is None:
        defining_poly = find_primitive_poly(p, m)
    return _cached_field(p, m, tuple(int(c) for c in defining_poly))


def prime_field(p: int) -> ExtensionField:
    """F_p as the degree-1 extension with defining polynomial ``x``."""
    return ext_field_new(p, 1, (0, 1))


def format_poly(poly) -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if c != 1 and i:
            mono = f"{c}*{mono}"
        elif c != 1:
            mono = str(c)
        terms.append(mono)
    return " + ".join(terms) or "0"


class FieldElement:
    """Immutable element of an :class:`ExtensionField`."""

    __slots__ = ("field", "code")

    def __init__(self, field: ExtensionField, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", code)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple:
        """Base-p digits, coefficient of ``w**0`` first."""
        return self.field.digits(self.code)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch("operands belong to different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p  # prime-field scalar
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.code, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def frobenius(self, i: int = 1) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.code, i))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.field.poly, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.field.format(self.code)


# -- module-level operation aliases -----------------------------------------

def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, i: int) -> FieldElement:
    return a.frobenius(i)


def random_element(field: ExtensionField, rng=None) -> FieldElement:
    return FieldElement(field, field.random(rng or random.SystemRandom()))
