"""Eisenstein integers Z[w] and the two number fields Q(w), Q(zeta12).

w is a primitive cube root of unity (w^2 + w + 1 = 0). Q(zeta12) is the degree-4
cyclotomic field with defining polynomial x^4 - x^2 + 1; it contains i, w, sqrt(3)
and sqrt(-3), which is everything the quartic surface's lines and the second
fibration's coordinate changes need.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .arith import is_prime


class EisensteinInt:
    """a + b*w with a, b integers, w^2 = -1 - w."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    def __repr__(self):
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+d}w"

    def __eq__(self, other):
        if isinstance(other, int):
            other = EisensteinInt(other)
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        if isinstance(other, int):
            other = EisensteinInt(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, int):
            other = EisensteinInt(other)
        return EisensteinInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.a * other, self.b * other)
        if not isinstance(other, EisensteinInt):
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd(-1 - w)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("EisensteinInt is a ring, not a field")
        out = EisensteinInt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "EisensteinInt":
        """Complex conjugate: a + b*w -> (a - b) - b*w."""
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        """a^2 - ab + b^2 = self * conj(self)."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def trace(self) -> int:
        """self + conj(self) = 2a - b."""
        return 2 * self.a - self.b

    def divides(self, other: "EisensteinInt") -> bool:
        """True iff self divides other in Z[w]."""
        n = self.norm()
        if n == 0:
            return other == EisensteinInt(0)
        w = other * self.conj()
        return w.a % n == 0 and w.b % n == 0

    def associates(self) -> list["EisensteinInt"]:
        """The six unit multiples of self."""
        return [u * self for u in EISENSTEIN_UNITS]


OMEGA = EisensteinInt(0, 1)
SQRT_M3 = EisensteinInt(1, 2)  # 1 + 2w, squares to -3
EISENSTEIN_UNITS = (
    EisensteinInt(1, 0),
    EisensteinInt(0, 1),
    EisensteinInt(-1, -1),
    EisensteinInt(-1, 0),
    EisensteinInt(0, -1),
    EisensteinInt(1, 1),
)


def represent_eisenstein(p: int) -> tuple[int, int]:
    """Write a prime p = 1 mod 3 as m^2 - mn + n^2 by bounded exhaustive search.

    Any representative is acceptable downstream; this scans n then m ascending
    over nonnegative values, which is deterministic.
    """
    if not is_prime(p) or p % 3 != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 3")
    bound = isqrt(4 * p // 3) + 2
    for n in range(bound + 1):
        for m in range(bound + 1):
            if m * m - m * n + n * n == p:
                return m, n
    raise RuntimeError(f"no representation found for {p}")  # pragma: no cover


class NumberField:
    """A fixed number field Q[x]/(f) given by its monic defining polynomial."""

    def __init__(self, name: str, defining: tuple[int, ...]):
        # defining holds the non-leading coefficients of a monic polynomial,
        # lowest degree first: x^d = -(defining[0] + defining[1] x + ...)
        self.name = name
        self.defining = tuple(Fraction(c) for c in defining)
        self.degree = len(defining)
        # reduction table: x^(d+k) as a coordinate vector, for k = 0..d-2
        d = self.degree
        rows = [[-c for c in self.defining]]
        for _ in range(d - 2):
            prev = rows[-1]
            row = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                row = [row[i] - top * self.defining[i] for i in range(d)]
            rows.append(row)
        self._high_powers = [tuple(r) for r in rows]

    def __repr__(self):
        return f"NumberField({self.name})"

    def __call__(self, *coords) -> "NumberFieldElement":
        v = [Fraction(c) for c in coords]
        v += [Fraction(0)] * (self.degree - len(v))
        return NumberFieldElement(self, tuple(v))

    def zero(self) -> "NumberFieldElement":
        return self()

    def one(self) -> "NumberFieldElement":
        return self(1)

    def gen(self) -> "NumberFieldElement":
        return self(0, 1)


class NumberFieldElement:
    """Element of a NumberField in the power basis, coordinates over Q."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def __repr__(self):
        return f"{self.field.name}{list(map(str, self.coords))}"

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field:
                raise TypeError("mixed number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.field.name, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, o.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self.field._high_powers[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return NumberFieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Multiplicative inverse by extended Euclid against the defining poly."""
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        d = self.field.degree
        f = list(self.field.defining) + [Fraction(1)]
        g = list(self.coords)
        # extended euclid over Q[x]: s*f + t*g = gcd; gcd is a nonzero constant
        r0, r1 = f, _trim(g)
        t0, t1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _polysub(t0, _polymul(q, t1))
        c = r1[0]
        inv = [a / c for a in t1]
        inv += [Fraction(0)] * (d - len(inv))
        return NumberFieldElement(self.field, tuple(inv[:d]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coords[0]


def _trim(c: list[Fraction]) -> list[Fraction]:
    while len(c) > 1 and not c[-1]:
        c.pop()
    return c


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _polydivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and any(a):
        if not a[-1]:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, x in enumerate(b):
            a[shift + i] -= c * x
        a.pop()
    return _trim(q), _trim(a if a else [Fraction(0)])


# The two fields the toolkit needs.
QOMEGA = NumberField("Qw", (1, 1))  # x^2 + x + 1
QZETA12 = NumberField("Qz12", (1, 0, -1, 0))  # x^4 - x^2 + 1

W = QOMEGA.gen()  # w in Q(w)
ZETA = QZETA12.gen()  # zeta12
I_Z12 = ZETA**3  # i
W_Z12 = ZETA**2 - 1  # w = zeta^4 = zeta^2 - 1
SQRT3_Z12 = 2 * ZETA - ZETA**3  # zeta + zeta^-1
SQRTM3_Z12 = 2 * ZETA**2 - 1  # i*sqrt(3) = 1 + 2w


def omega_to_zeta12(x: NumberFieldElement) -> NumberFieldElement:
    """Embed Q(w) into Q(zeta12) via w -> zeta^2 - 1."""
    if x.field is not QOMEGA:
        raise TypeError("expected a Q(w) element")
    return QZETA12(x.coords[0]) + QZETA12(x.coords[1]) * W_Z12


def eisenstein_to_field(z: EisensteinInt, field: NumberField = QOMEGA) -> NumberFieldElement:
    if field is QOMEGA:
        return QOMEGA(z.a, z.b)
    if field is QZETA12:
        return QZETA12(z.a) + QZETA12(z.b) * W_Z12
    raise TypeError("unsupported field")
