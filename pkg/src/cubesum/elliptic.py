"""Elliptic curves over K(t) and their sections, as exact rational functions.

Curves are short Weierstrass y^2 = x^3 + A(t)x + B(t) over K(t) for K one of
Q, Q(w), Q(zeta12). Sections are points with rational-function coordinates;
the chord-tangent law, the order-3 twist (x,y) -> (wx, y) on j = 0 curves, and
the degree-3 base change t = u^3 are all implemented symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomials import Poly, RationalFunction
from .rings import NumberFieldElement, QOMEGA, W


def _rf(value, zero=None) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Poly):
        return RationalFunction(value)
    return RationalFunction(Poly([value], zero=zero))


class FunctionFieldCurve:
    """y^2 = x^3 + A(t) x + B(t) with nonzero discriminant."""

    def __init__(self, A, B, name: str = ""):
        self.A = _rf(A)
        self.B = _rf(B)
        zero_a = self.A.zero_scalar
        zero_b = self.B.zero_scalar
        if isinstance(zero_a, NumberFieldElement) != isinstance(zero_b, NumberFieldElement):
            # promote the rational side into the number field
            if isinstance(zero_b, NumberFieldElement):
                self.A = self.A.map_coeffs(lambda c: zero_b.field(c), zero=zero_b)
            else:
                self.B = self.B.map_coeffs(lambda c: zero_a.field(c), zero=zero_a)
        self.name = name
        disc = self.A**3 * 4 + self.B**2 * 27
        if disc.is_zero():
            raise ValueError("singular curve: 4A^3 + 27B^2 = 0")

    def discriminant(self) -> RationalFunction:
        return (self.A**3 * 4 + self.B**2 * 27) * (-16)

    def __repr__(self):
        label = self.name or "E"
        return f"{label}: y^2 = x^3 + ({self.A!r})x + ({self.B!r})"

    def __eq__(self, other):
        if not isinstance(other, FunctionFieldCurve):
            return NotImplemented
        return self.A == other.A and self.B == other.B

    def contains(self, point: "RationalFunctionPoint") -> bool:
        if point.is_infinity():
            return True
        x, y = point.x, point.y
        return (y * y - (x * x * x + self.A * x + self.B)).is_zero()

    def point(self, x, y) -> "RationalFunctionPoint":
        p = RationalFunctionPoint(_rf(x), _rf(y))
        if not self.contains(p):
            raise ValueError(f"point not on {self.name or 'curve'}")
        return p

    def infinity(self) -> "RationalFunctionPoint":
        return RationalFunctionPoint(None, None)


@dataclass(frozen=True)
class RationalFunctionPoint:
    """A section: either the point at infinity or an (x(t), y(t)) pair."""

    x: RationalFunction | None
    y: RationalFunction | None

    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        if self.is_infinity():
            return "O"
        return f"({self.x!r}, {self.y!r})"


def negate(P: RationalFunctionPoint) -> RationalFunctionPoint:
    if P.is_infinity():
        return P
    return RationalFunctionPoint(P.x, -P.y)


def add(P: RationalFunctionPoint, Q: RationalFunctionPoint, E: FunctionFieldCurve) -> RationalFunctionPoint:
    """Chord-tangent addition; infinity is the identity."""
    for pt in (P, Q):
        if not E.contains(pt):
            raise ValueError("point not on curve")
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    if P.x == Q.x:
        if (P.y + Q.y).is_zero():
            return E.infinity()
        # tangent
        lam = (P.x * P.x * 3 + E.A) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return RationalFunctionPoint(x3, y3)


def double(P: RationalFunctionPoint, E: FunctionFieldCurve) -> RationalFunctionPoint:
    return add(P, P, E)


def multiply(n: int, P: RationalFunctionPoint, E: FunctionFieldCurve) -> RationalFunctionPoint:
    if n < 0:
        return multiply(-n, negate(P), E)
    R = E.infinity()
    base = P
    while n:
        if n & 1:
            R = add(R, base, E)
        base = add(base, base, E)
        n >>= 1
    return R


def cm_omega(P: RationalFunctionPoint, E: FunctionFieldCurve) -> RationalFunctionPoint:
    """The order-3 automorphism (x, y) -> (w x, y) on a j = 0 curve.

    Requires A = 0 and a coefficient field containing w.
    """
    if not E.A.is_zero():
        raise ValueError("cm_omega needs a curve with A = 0")
    z = E.B.zero_scalar
    if not isinstance(z, NumberFieldElement):
        raise ValueError("coefficient field must contain w (use curve_over_omega)")
    if z.field is QOMEGA:
        w = W
    else:
        from .rings import W_Z12

        w = W_Z12
    if P.is_infinity():
        return P
    return RationalFunctionPoint(P.x * w, P.y)


def curve_over_omega(E: FunctionFieldCurve) -> FunctionFieldCurve:
    """Base-change a curve with rational coefficients to Q(w)(t)."""
    conv = lambda c: QOMEGA(c) if not isinstance(c, NumberFieldElement) else c
    z = QOMEGA.zero()
    return FunctionFieldCurve(
        E.A.map_coeffs(conv, zero=z), E.B.map_coeffs(conv, zero=z), name=E.name + "_w"
    )


def point_over_omega(P: RationalFunctionPoint) -> RationalFunctionPoint:
    if P.is_infinity():
        return P
    conv = lambda c: QOMEGA(c) if not isinstance(c, NumberFieldElement) else c
    z = QOMEGA.zero()
    return RationalFunctionPoint(
        P.x.map_coeffs(conv, zero=z), P.y.map_coeffs(conv, zero=z)
    )


# --- the two standard fibrations -----------------------------------------


def curve_main() -> FunctionFieldCurve:
    """y^2 = x^3 - t^4 (t^2 - 1)^3, the fibration carrying the cube-sum points."""
    t = Poly.x()
    return FunctionFieldCurve(Poly([]), -(t**4) * (t**2 - 1) ** 3, name="E_t")


def curve_sextic_twist() -> FunctionFieldCurve:
    """y^2 = x^3 - (u^6 - 1)^3, the minimal model after the base change t = u^3."""
    u = Poly.x()
    return FunctionFieldCurve(Poly([]), -((u**6 - 1) ** 3), name="E'_u")


def curve_second_fibration() -> FunctionFieldCurve:
    """y^2 = x^3 - 432 t^2 (t-1)^2 (t+1)^2 (t^2+1)^2, the pencil through a line."""
    t = Poly.x()
    return FunctionFieldCurve(
        Poly([]), t**2 * (t - 1) ** 2 * (t + 1) ** 2 * (t**2 + 1) ** 2 * (-432),
        name="eps2",
    )


def section_sigma1() -> RationalFunctionPoint:
    """sigma_1 = (t^2(t^2-1), t^2(t^2-1)^2) on the main fibration."""
    t = Poly.x()
    return RationalFunctionPoint(
        RationalFunction(t**2 * (t**2 - 1)), RationalFunction(t**2 * (t**2 - 1) ** 2)
    )


def section_tau() -> RationalFunctionPoint:
    """The 2-torsion section (u^6 - 1, 0) of the sextic-twist model."""
    u = Poly.x()
    return RationalFunctionPoint(
        RationalFunction(u**6 - 1), RationalFunction(Poly([], zero=Fraction(0)))
    )


def base_change_t_u3(P: RationalFunctionPoint) -> RationalFunctionPoint:
    """Push a section of the main fibration to the sextic-twist model.

    Substitutes t = u^3 and rescales (x, y) -> (x/u^4, y/u^6), which is the
    minimalizing twist.
    """
    if P.is_infinity():
        return P
    z = P.x.zero_scalar
    u = Poly.x(zero=z)
    u3 = RationalFunction(u**3)
    x = P.x.compose(u3) / RationalFunction(u**4)
    y = P.y.compose(u3) / RationalFunction(u**6)
    return RationalFunctionPoint(x, y)


def section_to_xyz(P: RationalFunctionPoint, t=None) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
    """Affine surface solution (x, y, z) carried by a section of the main model.

    Inverts x1 = (t^3 - t) z / x, y1 = (t^3 - t)^2 / x into
    x = (t^3 - t)^2 / y1, y = t, z = x1 (t^3 - t) / y1. `t` may be a rational
    function of another parameter (u^3 for pulled-back sections); by default it
    is the section's own variable. Torsion sections (y1 = 0) have no affine
    image.
    """
    if P.is_infinity():
        raise ValueError("no affine image: infinity section")
    if P.y.is_zero():
        raise ValueError("no affine image: 2-torsion section")
    z = P.x.zero_scalar
    if t is None:
        t = RationalFunction(Poly.x(zero=z))
    t = _rf(t, zero=z)
    t3t = t * t * t - t
    x = t3t * t3t / P.y
    zc = P.x * t3t / P.y
    return x, t, zc


def sextic_section_to_xyz(P: RationalFunctionPoint) -> tuple[RationalFunction, RationalFunction, RationalFunction]:
    """Affine solution for a section of the sextic-twist model, in u.

    Undoes the minimalizing twist (x1 = u^4 x2, y1 = u^6 y2) and applies
    section_to_xyz with t = u^3.
    """
    if P.is_infinity():
        raise ValueError("no affine image: infinity section")
    zc = P.x.zero_scalar
    u = Poly.x(zero=zc)
    x1 = P.x * RationalFunction(u**4)
    y1 = P.y * RationalFunction(u**6)
    return section_to_xyz(
        RationalFunctionPoint(x1, y1), t=RationalFunction(u**3)
    )
