"""Symbolic verification of the quartic surface's geometry.

Everything here reduces a polynomial identity to zero in exact arithmetic:
the cyclic degree-6 quotient map onto the surface, the graph construction that
recovers the parametric solution family, the coordinate changes identifying
the second fibration with the Fermat-like quartic, and the singular points,
lines and line orbits of the quartic itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .multipoly import MultiPoly, normal_form
from .polynomials import Poly, RationalFunction
from .rings import (
    NumberFieldElement,
    QOMEGA,
    QZETA12,
    I_Z12,
    SQRT3_Z12,
    SQRTM3_Z12,
    W,
    W_Z12,
)

# --- quotient map psi ------------------------------------------------------

_QVARS = ("u", "s", "x0", "y0")


def _qvar(name: str) -> MultiPoly:
    return MultiPoly.variable(_QVARS, name)


def quotient_psi_residual(z_has_denominator: bool = True, with_relations: bool = True) -> MultiPoly:
    """Numerator of x*y*(x^2+y^2-1) - z^3 under the degree-6 quotient map.

    The map sends ((u,s), (x0,y0)) to x = s/y0, y = u^3, z = u*s*x0/y0.
    Denominators are cleared by y0^3; the relations s^2 = u^6 - 1 and
    y0^2 = x0^3 - 1 reduce the result. The flags exist for negative controls:
    dropping z's denominator or the relations must break the identity.
    """
    u, s, x0, y0 = map(_qvar, _QVARS)
    # x*y*(x^2 + y^2 - 1) * y0^3  with x = s/y0, y = u^3:
    #   = s*u^3 * (s^2 + (u^6 - 1) * y0^2) * y0^(3-3)
    lhs = s * u**3 * (s**2 + (u**6 - 1) * y0**2)
    if z_has_denominator:
        rhs = (u * s * x0) ** 3  # z^3 * y0^3
    else:
        rhs = (u * s * x0) ** 3 * y0**3
    residual = lhs - rhs
    if not with_relations:
        return residual
    return normal_form(residual, {"s": u**6 - 1, "y0": x0**3 - 1})


def verify_quotient_psi() -> bool:
    """True iff the quotient map lands on the surface identically."""
    return quotient_psi_residual().is_zero()


# --- the graph that recovers the parametric family ------------------------


class QuadExtElem:
    """Element a + b*s of K(u)[s]/(s^2 - D) for a fixed squarefree D."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a: RationalFunction, b: RationalFunction, D: RationalFunction):
        self.a = a
        self.b = b
        self.D = D

    def __repr__(self):
        return f"({self.a!r}) + ({self.b!r})*s"

    def _wrap(self, other):
        if isinstance(other, QuadExtElem):
            return other
        if isinstance(other, (int, Fraction, NumberFieldElement, Poly, RationalFunction)):
            zero = self.a - self.a
            if not isinstance(other, RationalFunction):
                other = self.a * 0 + other
            return QuadExtElem(other, zero, self.D)
        return None

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __add__(self, other):
        o = self._wrap(other)
        return QuadExtElem(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.a, -self.b, self.D)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._wrap(other)
        return QuadExtElem(
            self.a * o.a + self.b * o.b * self.D, self.a * o.b + self.b * o.a, self.D
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.D
        if n.is_zero():
            raise ZeroDivisionError("norm zero in quadratic extension")
        return QuadExtElem(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, n: int):
        out = self._wrap(1)
        base = self
        for _ in range(n):
            out = out * base
        return out


def _hyperelliptic_field():
    """Q(w)(u)[s]/(s^2 - (u^6 - 1)): the function field of the genus-2 curve."""
    z = QOMEGA.zero()
    u = RationalFunction(Poly.x(zero=z))
    D = u**6 - 1
    zero = RationalFunction(Poly([], zero=z))
    one = RationalFunction(Poly([z + 1], zero=z))

    def elem(a, b=None):
        return QuadExtElem(a if isinstance(a, RationalFunction) else one * a,
                           zero if b is None else (b if isinstance(b, RationalFunction) else one * b),
                           D)

    s = QuadExtElem(zero, one, D)
    return u, s, elem


def _chord_tangent(P, Q, a_coef, b_coef):
    """Formal chord-tangent sum on y^2 = x^3 + a x + b over any field elements."""
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2).is_zero():
        raise ZeroDivisionError("sum is the point at infinity")
    if x1 == x2 and y1 == y2:
        lam = (x1 * x1 * 3 + a_coef) / (y1 * 2)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return (x3, y3)


@dataclass(frozen=True)
class PaglianiGraphResult:
    matches: bool
    matched_symmetry: str | None
    image: tuple | None = None


def pagliani_graph_image(sign: int = 1, use_pi1: bool = False):
    """psi applied to the graph of P -> [sign] * projection(P) + (1, 0).

    projection is the degree-2 map (u, s) -> (u^2, s) onto y^2 = x^3 - 1 by
    default; use_pi1 swaps in the other projection (u, s) -> (-1/u^2, s/u^3)
    as a negative control (it lands on the wrong curve, so the image cannot
    be a surface solution).
    """
    u, s, elem = _hyperelliptic_field()
    if use_pi1:
        pt = (elem(-1 / (u * u)), s * elem(1 / u**3))
    else:
        pt = (elem(u * u), s)
    if sign < 0:
        pt = (pt[0], -pt[1])
    torsion = (elem(u * 0 + 1), elem(u * 0))
    x0, y0 = _chord_tangent(pt, torsion, elem(u * 0), elem(u * 0 - 1))
    # psi: (x, y, z) = (s / y0, u^3, u s x0 / y0)
    return (s / y0, elem(u**3), elem(u) * s * x0 / y0)


def _compose_scaling(f, wk):
    def g(x, y, zc):
        xx, yy, zz = f(x, y, zc)
        return (xx, yy, zz * wk)

    return g


def _swap_xy(f):
    def g(x, y, zc):
        return f(y, x, zc)

    return g


def _pagliani_candidates():
    """The parametric solution triple and its 24 symmetry images."""
    z = QOMEGA.zero()
    u = RationalFunction(Poly.x(zero=z))
    xp = (u * u - 1) ** 2 / 3
    yp = u**3
    zp = u * (u * u - 1) * (u * u + 2) / 3
    base = [
        ("id", lambda x, y, zc: (x, y, zc)),
        ("t1", lambda x, y, zc: (-x, y, -zc)),
        ("t2", lambda x, y, zc: (x, -y, -zc)),
        ("t1t2", lambda x, y, zc: (-x, -y, zc)),
    ]
    base += [(n + ".t3", _swap_xy(f)) for n, f in base]
    syms = []
    for name, f in base:
        for k in range(3):
            label = f"{name}.w{k}" if k else name
            syms.append((label, _compose_scaling(f, W**k)))
    return (xp, yp, zp), syms


def verify_pagliani_graph(sign: int = 1, use_pi1: bool = False) -> PaglianiGraphResult:
    """Check that the graph construction reproduces the parametric family.

    Returns whether the psi-image of the graph equals the parametric triple up
    to the 8 integer symmetries combined with the cube-root-of-unity rescaling
    of z, and which symmetry matched.
    """
    img = pagliani_graph_image(sign=sign, use_pi1=use_pi1)
    (xp, yp, zp), syms = _pagliani_candidates()
    _, s, elem = _hyperelliptic_field()
    for name, f in syms:
        cx, cy, cz = f(xp, yp, zp)
        if img == (elem(cx), elem(cy), elem(cz)):
            return PaglianiGraphResult(True, name)
    return PaglianiGraphResult(False, None)


# --- the two coordinate-change identities ----------------------------------

_TXY = ("t", "x", "y")


def _txyvar(name: str, zeta: bool) -> MultiPoly:
    zero = QZETA12.zero() if zeta else Fraction(0)
    return MultiPoly.variable(_TXY, name, zero=zero)


def _second_fibration_rhs(tv: MultiPoly, xv: MultiPoly, coefficient: int = 432) -> MultiPoly:
    return xv**3 - coefficient * tv**2 * (tv - 1) ** 2 * (tv + 1) ** 2 * (tv**2 + 1) ** 2


def inose_substitution_residuals(coefficient: int = 432, flip_wprime_sign: bool = False):
    """Residuals of the two quartic identities modulo the Weierstrass relation.

    (i) the (X,Y,Z,W) substitution satisfies X*Y*(X^2+Y^2-W^2) = Z^3*W over
    Q(zeta12); (ii) the (X',Y',Z',W') substitution satisfies
    X'(X'^3+Y'^3) = Z'(Z'^3+W'^3) over Q. Both are taken modulo
    y^2 = x^3 - 432 t^2(t-1)^2(t+1)^2(t^2+1)^2. The keyword arguments exist
    for negative controls.
    """
    # (i): coefficients involve sqrt3, sqrt(-3), i
    t, x, y = (_txyvar(n, zeta=True) for n in _TXY)
    s3, sm3, i = SQRT3_Z12, SQRTM3_Z12, I_Z12
    X = 72 * s3 * t * (t**2 + 1) ** 2
    Y = 3 * y - 36 * sm3 * t * (t**4 - 1)
    Z = -6 * sm3 * (t**2 + 1) * x
    Wc = -1 * (t * (3 * i * y - 36 * s3 * t * (t**2 + 3) * (t**2 + 1)))
    fi = X * Y * (X**2 + Y**2 - Wc**2) - Z**3 * Wc
    r1 = normal_form(fi, {"y": _second_fibration_rhs(t, x, coefficient)})

    # (ii): rational coefficients
    t, x, y = (_txyvar(n, zeta=False) for n in _TXY)
    Xp = -2 * (t**4 + 1) * y - t * x**2 + 12 * t**3 * x - 72 * t * (t**4 - 1) ** 2
    Yp = -2 * (2 * t**4 - 1) * y + t * x**2 - 12 * t**3 * (t**4 - 1) * x + 72 * t * (t**4 - 1)
    Zp = t * (-2 * (t**4 + 1) * y - t * x**2 + 12 * t**3 * x - 72 * t * (t**4 - 1) ** 2)
    Wp = 2 * t * (t**4 - 2) * y + t**2 * x**2 + 12 * (t**4 - 1) * x - 72 * t**6 * (t**4 - 1)
    if flip_wprime_sign:
        Wp = -Wp
    gii = Xp * (Xp**3 + Yp**3) - Zp * (Zp**3 + Wp**3)
    r2 = normal_form(gii, {"y": _second_fibration_rhs(t, x, coefficient)})
    return r1, r2


def verify_inose_and_eps2(coefficient: int = 432, flip_wprime_sign: bool = False) -> bool:
    r1, r2 = inose_substitution_residuals(coefficient, flip_wprime_sign)
    return r1.is_zero() and r2.is_zero()


# --- singular points, lines, orbits ----------------------------------------

_XYZW = ("X", "Y", "Z", "W")


def quartic_form() -> MultiPoly:
    """X*Y*(X^2 + Y^2 - W^2) - Z^3*W over Q(zeta12)."""
    zero = QZETA12.zero()
    X, Y, Z, Wv = (MultiPoly.variable(_XYZW, n, zero=zero) for n in _XYZW)
    return X * Y * (X**2 + Y**2 - Wv**2) - Z**3 * Wv


SINGULAR_POINTS = (
    (0, 0, 0, 1),
    (1, 0, 0, 1),
    (-1, 0, 0, 1),
    (0, 1, 0, 1),
    (0, -1, 0, 1),
)


def _lines():
    """The 18 lines, each as (two spanning points, two linear forms)."""
    one = QZETA12.one()
    zero = QZETA12.zero()
    i, w = I_Z12, W_Z12
    w2 = w * w

    def pt(*cs):
        return tuple(zero + c for c in cs)

    # linear form: coefficients (cX, cY, cZ, cW); the line is the common zero
    # locus of its two forms
    data = [
        ((pt(0, 1, 0, 0), pt(0, 0, 0, 1)), (pt(1, 0, 0, 0), pt(0, 0, 1, 0))),   # X=0, Z=0
        ((pt(1, 0, 0, 0), pt(0, 0, 0, 1)), (pt(0, 1, 0, 0), pt(0, 0, 1, 0))),   # Y=0, Z=0
        ((pt(0, 1, 0, 0), pt(0, 0, 1, 0)), (pt(1, 0, 0, 0), pt(0, 0, 0, 1))),   # X=0, W=0
        ((pt(1, 0, 0, 0), pt(0, 0, 1, 0)), (pt(0, 1, 0, 0), pt(0, 0, 0, 1))),   # Y=0, W=0
        (((i, one, zero, zero), pt(0, 0, 1, 0)), ((one, -i, zero, zero), pt(0, 0, 0, 1))),  # X=iY, W=0
        (((-i, one, zero, zero), pt(0, 0, 1, 0)), ((one, i, zero, zero), pt(0, 0, 0, 1))),  # X=-iY, W=0
    ]
    # the twelve lines {X = aW, Y = b Z} and {Y = aW, X = b Z} with a = +-1,
    # b in {a, a*w, a*w^2}
    for xfirst in (True, False):
        for a in (one, -one):
            for b in (a, a * w, a * w2):
                if xfirst:
                    points = ((a, zero, zero, one), (zero, b, one, zero))
                    forms = ((one, zero, zero, -a), (zero, one, -b, zero))
                else:
                    points = ((zero, a, zero, one), (b, zero, one, zero))
                    forms = ((zero, one, zero, -a), (one, zero, -b, zero))
                data.append((points, forms))
    return data


def _projective_symmetries():
    """The order-24 group generated by the three sign/swap involutions and the
    cube-root rescaling of Z, acting on (X:Y:Z:W)."""
    one = QZETA12.one()
    w = W_Z12
    gens = [
        ((0, 1, 2, 3), (-one, one, -one, one)),  # t1
        ((0, 1, 2, 3), (one, -one, -one, one)),  # t2
        ((1, 0, 2, 3), (one, one, one, one)),    # t3 (swap X, Y)
        ((0, 1, 2, 3), (one, one, w, one)),      # t4 (Z -> wZ)
    ]

    def compose(g, h):
        gp, gs = g
        hp, hs = h
        return (tuple(hp[gp[i]] for i in range(4)), tuple(gs[i] * hs[gp[i]] for i in range(4)))

    def normalize(g):
        perm, scal = g
        inv = scal[0].inverse()
        return (perm, tuple(c * inv for c in scal))

    group = {}
    frontier = [((0, 1, 2, 3), (one, one, one, one))]
    while frontier:
        g = frontier.pop()
        key = normalize(g)
        if key in group:
            continue
        group[key] = key
        for h in gens:
            frontier.append(compose(h, g))
    return sorted(group, key=lambda g: (g[0], tuple(tuple(map(str, c.coords)) for c in g[1])))


def _apply_sym(g, point):
    perm, scal = g
    return tuple(scal[i] * point[perm[i]] for i in range(4))


@dataclass(frozen=True)
class SurfaceGeometryReport:
    singular_points_ok: bool
    lines_on_surface: tuple[bool, ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits))

    @property
    def all_ok(self) -> bool:
        return (
            self.singular_points_ok
            and all(self.lines_on_surface)
            and self.orbit_sizes == (2, 2, 2, 12)
        )


def verify_lines_and_singular_points() -> SurfaceGeometryReport:
    """Check the five singular points, the 18 lines, and their orbit partition."""
    F = quartic_form()
    partials = [F.derivative(v) for v in _XYZW]
    zero = QZETA12.zero()

    sing_ok = True
    for p in SINGULAR_POINTS:
        vals = {v: zero + c for v, c in zip(_XYZW, p)}
        for poly in [F, *partials]:
            val = poly.substitute(vals)
            if not val.is_zero():
                sing_ok = False

    lines = _lines()
    ab = ("a", "b")
    on_surface = []
    for (p, q), _forms in lines:
        a = MultiPoly.variable(ab, "a", zero=zero)
        b = MultiPoly.variable(ab, "b", zero=zero)
        coords = {v: a * pc + b * qc for v, pc, qc in zip(_XYZW, p, q)}
        val = F.substitute(coords)
        on_surface.append(val.is_zero())

    # orbit partition under the order-24 projective symmetry group
    def line_index_of(points) -> int:
        for j, (_pts, forms) in enumerate(lines):
            if all(
                sum((f[i] * pt[i] for i in range(4)), zero) == zero
                for f in forms
                for pt in points
            ):
                return j
        raise RuntimeError("symmetry image is not one of the listed lines")

    group = _projective_symmetries()
    assert len(group) == 24
    parent = list(range(len(lines)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for idx, (pts, _forms) in enumerate(lines):
        for g in group:
            j = line_index_of(tuple(_apply_sym(g, p) for p in pts))
            ri, rj = find(idx), find(j)
            if ri != rj:
                parent[ri] = rj
    orbits: dict[int, list[int]] = {}
    for i in range(len(lines)):
        orbits.setdefault(find(i), []).append(i)
    orbit_tuple = tuple(tuple(sorted(o)) for o in sorted(orbits.values(), key=lambda o: (len(o), o)))
    return SurfaceGeometryReport(sing_ok, tuple(on_surface), orbit_tuple)
