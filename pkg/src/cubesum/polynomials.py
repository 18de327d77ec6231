"""Dense univariate polynomials and reduced rational functions.

Coefficients are exact scalars: Fraction or NumberFieldElement. A Poly remembers
its scalar zero so empty/constant cases stay well-typed; rational functions are
kept with coprime numerator/denominator and monic denominator so that equality
is plain syntactic comparison.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import NumberFieldElement

INFINITY = "inf"  # marker for the place at infinity on P^1


def _scalar_zero(values):
    for v in values:
        if isinstance(v, NumberFieldElement):
            return v.field.zero()
    return Fraction(0)


class Poly:
    """Polynomial with exact coefficients, lowest degree first."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs=(), zero=None):
        coeffs = list(coeffs)
        if zero is None:
            zero = _scalar_zero(coeffs)
        self.zero = zero
        out = [self._coerce_scalar(c) for c in coeffs]
        while out and not out[-1]:
            out.pop()
        self.coeffs = tuple(out)

    def _coerce_scalar(self, c):
        if isinstance(self.zero, NumberFieldElement):
            if isinstance(c, NumberFieldElement):
                if c.field is not self.zero.field:
                    raise TypeError("mixed number fields in Poly")
                return c
            return self.zero.field(c)
        if isinstance(c, NumberFieldElement):
            raise TypeError("number field scalar in rational Poly")
        return Fraction(c)

    @classmethod
    def x(cls, zero=None):
        z = Fraction(0) if zero is None else zero
        return cls([z + 0, z + 1], zero=z)

    @classmethod
    def const(cls, c, zero=None):
        return cls([c], zero=zero)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.zero + 1

    def leading(self):
        if not self.coeffs:
            return self.zero
        return self.coeffs[-1]

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*t^{i}" if i else f"({c})")
        return "Poly(" + " + ".join(terms) + ")"

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self == Poly([other], zero=self.zero)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _wrap(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], zero=self.zero)

    def __add__(self, other):
        o = self._wrap(other)
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.zero
        out = [z] * n
        for i, c in enumerate(self.coeffs):
            out[i] = out[i] + c
        for i, c in enumerate(o.coeffs):
            out[i] = out[i] + c
        return Poly(out, zero=z)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], zero=self.zero)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if not self.coeffs or not o.coeffs:
            return Poly([], zero=self.zero)
        z = self.zero
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(out, zero=z)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of Poly; use RationalFunction")
        out = Poly([self.zero + 1], zero=self.zero)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        z = self.zero
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], zero=z), self
        quot = [z] * (dq + 1)
        inv_lead = _scalar_inv(other.leading())
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree] * inv_lead
            if c:
                quot[shift] = c
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - c * b
        return Poly(quot, zero=z), Poly(rem[: other.degree], zero=z)

    def __floordiv__(self, other):
        return self.divmod(self._wrap(other))[0]

    def __mod__(self, other):
        return self.divmod(self._wrap(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = _scalar_inv(self.leading())
        return Poly([c * inv for c in self.coeffs], zero=self.zero)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return Poly(
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))], zero=self.zero
        )

    def evaluate(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Substitute `other` (Poly or RationalFunction) for the variable."""
        if isinstance(other, RationalFunction):
            acc = RationalFunction(Poly([self.zero], zero=self.zero), Poly([self.zero + 1], zero=self.zero))
            for c in reversed(self.coeffs):
                acc = acc * other + c
            return acc
        acc = Poly([], zero=self.zero)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly([c], zero=self.zero)
        return acc

    def valuation(self, place) -> int:
        """Multiplicity of the root `place` (a scalar), or -degree at INFINITY."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        if place is INFINITY:
            return -self.degree
        lin = Poly([-(self.zero + place), self.zero + 1], zero=self.zero)
        v, rem = 0, self
        while True:
            q, r = rem.divmod(lin)
            if not r.is_zero():
                return v
            v += 1
            rem = q

    def map_coeffs(self, fn, zero=None):
        return Poly([fn(c) for c in self.coeffs], zero=zero)

    def reverse(self, degree: int | None = None) -> "Poly":
        """Coefficient reversal t -> 1/t, padded to the given degree."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below actual degree")
        out = [self.zero] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return Poly(out, zero=self.zero)


def _scalar_inv(c):
    if isinstance(c, NumberFieldElement):
        return c.inverse()
    return Fraction(1) / c


class RationalFunction:
    """Quotient of two Polys, reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if not isinstance(num, Poly):
            num = Poly([num])
        if den is None:
            den = Poly([num.zero + 1], zero=num.zero)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den)
        if not g.is_one() and not num.is_zero():
            num = num // g
            den = den // g
        if num.is_zero():
            den = Poly([num.zero + 1], zero=num.zero)
        lead_inv = _scalar_inv(den.leading())
        if den.leading() != den.zero + 1:
            num = num * lead_inv
            den = den * lead_inv
        self.num = num
        self.den = den

    @classmethod
    def t(cls, zero=None):
        return cls(Poly.x(zero=zero))

    def __repr__(self):
        if self.den.is_one():
            return f"RF({self.num!r})"
        return f"RF({self.num!r} / {self.den!r})"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    @property
    def zero_scalar(self):
        return self.num.zero

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _wrap(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return RationalFunction(Poly([other], zero=self.num.zero))
        return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction(self.den, self.num)) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if not d:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.evaluate(x) * _scalar_inv_any(d)

    def compose(self, other):
        num = self.num.compose(other)
        den = self.den.compose(other)
        num = num if isinstance(num, RationalFunction) else RationalFunction(num)
        den = den if isinstance(den, RationalFunction) else RationalFunction(den)
        return num / den

    def valuation(self, place) -> int:
        """Order of vanishing at the place; at INFINITY in the parameter 1/t."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        if place is INFINITY:
            return self.den.degree - self.num.degree
        return self.num.valuation(place) - self.den.valuation(place)

    def map_coeffs(self, fn, zero=None):
        return RationalFunction(self.num.map_coeffs(fn, zero=zero), self.den.map_coeffs(fn, zero=zero))


def _scalar_inv_any(c):
    return _scalar_inv(c)


def valuation_at(f: RationalFunction, place) -> int:
    """Order of vanishing of a nonzero rational function at a place of P^1."""
    return f.valuation(place)
