"""Short Weierstrass curves: group law, division polynomials, torsion points.

Used to produce the base torsion that the covering audits pull back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .ffield import (FqField, all_eth_roots, embed, gpoly_mul, gpoly_sub, gpoly_trim, make_field,
                     roots_in_extension)
from .scurve import INF, Affine, CurveSpec


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a x + b."""

    a: object
    b: object
    field: object

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "a", F(self.a))
        object.__setattr__(self, "b", F(self.b))
        disc = self.a ** 3 * 4 + self.b ** 2 * 27
        if disc.is_zero():
            raise ValueError("singular curve")
        if getattr(F, "characteristic", 0) in (2, 3):
            raise ValueError("short Weierstrass form needs characteristic > 3")

    def rhs(self, x):
        return x ** 3 + self.a * x + self.b

    def on_curve(self, P) -> bool:
        return P is INF or P.y ** 2 == self.rhs(P.x)

    def base_change(self, field) -> "WeierstrassCurve":
        emb = embed(self.field, field) if isinstance(self.field, FqField) else field
        return WeierstrassCurve(emb(self.a), emb(self.b), field)

    # -- group law
    def neg(self, P):
        return INF if P is INF else Affine(P.x, -P.y)

    def add(self, P, Q):
        if P is INF:
            return Q
        if Q is INF:
            return P
        if P.x == Q.x:
            if (P.y + Q.y).is_zero():
                return INF
            lam = (P.x * P.x * 3 + self.a) / (P.y * 2)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        return Affine(x3, lam * (P.x - x3) - P.y)

    def mul(self, k: int, P):
        if k < 0:
            return self.mul(-k, self.neg(P))
        R = INF
        while k:
            if k & 1:
                R = self.add(R, P)
            k >>= 1
            if k:
                P = self.add(P, P)
        return R

    def order_divides(self, P, m: int) -> bool:
        return self.mul(m, P) is INF


@dataclass
class BirationalMap:
    """Mutually inverse maps between a plane model and a Weierstrass curve."""

    source: object
    target: WeierstrassCurve
    forward: Callable
    inverse: Callable
    description: str = ""


def to_weierstrass(curve: CurveSpec) -> BirationalMap:
    """Weierstrass model of a genus-1 curve y^2 = cubic or y^3 = quadratic.

    y^2 = x^3 + a2 x^2 + a1 x + a0: shift x by a2/3.
    y^3 = x^2 + b1 x + b0: with u = 4y, w = 8x + 4 b1 one gets
    w^2 = u^3 + 16 (b1^2 - 4 b0).
    """
    F = curve.field
    f = curve.f
    if curve.n == 2 and curve.d == 3:
        a0, a1, a2 = f[0], f[1], f[2]
        s = a2 / 3
        A = a1 - a2 * a2 / 3
        B = a0 - a1 * a2 / 3 + a2 ** 3 * 2 / 27
        E = WeierstrassCurve(A, B, F)

        def fwd(P):
            return INF if P is INF else Affine(P.x + s, P.y)

        def inv(P):
            return INF if P is INF else Affine(P.x - s, P.y)

        desc = "(x, y) -> (x + a2/3, y)"
    elif curve.n == 3 and curve.d == 2:
        b0, b1 = f[0], f[1]
        E = WeierstrassCurve(F(0), (b1 * b1 - b0 * 4) * 16, F)

        def fwd(P):
            return INF if P is INF else Affine(P.y * 4, P.x * 8 + b1 * 4)

        def inv(P):
            return INF if P is INF else Affine((P.y - b1 * 4) / 8, P.x / 4)

        desc = "(x, y) -> (u, w) = (4y, 8x + 4 b1)"
    else:
        raise ValueError("only y^2 = cubic and y^3 = quadratic are handled")
    m = BirationalMap(curve, E, fwd, inv, desc)
    _check_round_trip(m, curve)
    return m


def _check_round_trip(m: BirationalMap, curve: CurveSpec, samples: int = 8):
    F = curve.field
    if not isinstance(F, FqField):
        return
    found = 0
    for x in F.elements():
        for y in F.nth_roots(curve.f_at(x), curve.n):
            P = Affine(x, y)
            Q = m.forward(P)
            if not m.target.on_curve(Q) or m.inverse(Q) != P:
                raise ArithmeticError("birational map failed the round trip")
            found += 1
        if found >= samples:
            return


# ---------------------------------------------------------------------------
# division polynomials


def _div_polys(E: WeierstrassCurve, m: int) -> list:
    """g_0..g_m with psi_k = g_k (k odd) and psi_k = 2y g_k (k even)."""
    F = E.field
    a, b = E.a, E.b
    z, one = F.zero, F.one
    Fsq = [b * 4, a * 4, z, one * 4]  # (2y)^2 = 4(x^3 + a x + b)
    Fsq2 = gpoly_mul(Fsq, Fsq)
    g = [[], [one], [one],
         gpoly_trim([-a * a, b * 12, a * 6, z, one * 3]),
         gpoly_trim([(b * b * 8 + a ** 3) * -2, a * b * -8, a * a * -10, b * 40, a * 10, z, one * 2])]
    for k in range(5, m + 1):
        h = k // 2
        if k % 2:
            # k = 2h + 1
            t1 = gpoly_mul(g[h + 2], _cube(g[h]))
            t2 = gpoly_mul(g[h - 1], _cube(g[h + 1]))
            if h % 2 == 0:
                g.append(gpoly_sub(gpoly_mul(Fsq2, t1), t2))
            else:
                g.append(gpoly_sub(t1, gpoly_mul(Fsq2, t2)))
        else:
            t1 = gpoly_mul(g[h + 2], gpoly_mul(g[h - 1], g[h - 1]))
            t2 = gpoly_mul(g[h - 2], gpoly_mul(g[h + 1], g[h + 1]))
            g.append(gpoly_mul(g[h], gpoly_sub(t1, t2)))
    return g[: m + 1]


def _cube(p):
    return gpoly_mul(p, gpoly_mul(p, p))


def division_poly(E: WeierstrassCurve, m: int) -> list:
    """Polynomial in x whose roots are the x-coordinates of E[m] minus O.

    psi_m for odd m; for even m, (psi_m / 2y) * (x^3 + a x + b), which adds
    the 2-torsion x-coordinates.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return [E.field.one]
    g = _div_polys(E, max(m, 4))[m]
    if m % 2:
        return g
    return gpoly_mul(g, [E.b, E.a, E.field.zero, E.field.one])


def torsion_points(E: WeierstrassCurve, m: int, ext_degree: int, strict: bool = True) -> list:
    """E[m] with coordinates in the degree-ext_degree extension of the base field.

    Returns O followed by affine points sorted canonically; each point is
    verified to lie on E and to satisfy m P = O.  With strict=True the
    function raises if fewer than m^2 points are found.
    """
    F = E.field
    if not isinstance(F, FqField) or F.k != 1:
        raise ValueError("torsion enumeration expects a prime base field")
    big = make_field(F.p, ext_degree)
    Eb = E.base_change(big)
    psi = division_poly(E, m)
    pts = [INF]
    for x, _mult in roots_in_extension(psi, ext_degree, base=F):
        for y in all_eth_roots(Eb.rhs(x), 2):
            P = Affine(x, y)
            if not Eb.on_curve(P) or not Eb.order_divides(P, m):
                raise ArithmeticError("division polynomial root is not m-torsion")
            pts.append(P)
    if strict and len(pts) != m * m:
        raise ValueError(f"E[{m}] is not contained in F_{F.p}^{ext_degree}: found {len(pts)} of {m * m}")
    return pts


def frobenius_trace(E: WeierstrassCurve) -> int:
    """a = p + 1 - #E(F_p), by counting with Euler's criterion."""
    F = E.field
    p = F.p
    count = 1
    for x in F.elements():
        r = E.rhs(x)
        count += 1 if r.is_zero() else (2 if r ** ((p - 1) // 2) == F.one else 0)
    return p + 1 - count


def torsion_field_degree(E: WeierstrassCurve, m: int, max_degree: int = 64) -> int:
    """Least t with E[m] defined over F_{p^t}.

    Independent of root finding: Frob satisfies x^2 - a x + p on E[m], and
    E[m] is rational over F_{p^t} iff x^t = 1 in (Z/m)[x]/(x^2 - a x + p)
    (for p not dividing m the Tate module action is semisimple enough for
    this to be exact when the polynomial has unit discriminant mod m; the
    value is cross-checked against enumeration in the tests).
    """
    p = E.field.p
    a = frobenius_trace(E)

    def mulmod(u, v):
        c0 = u[0] * v[0]
        c1 = u[0] * v[1] + u[1] * v[0]
        c2 = u[1] * v[1]
        return ((c0 - p * c2) % m, (c1 + a * c2) % m)

    cur = (1 % m, 0)
    for t in range(1, max_degree + 1):
        cur = mulmod(cur, (0, 1))
        if cur == (1 % m, 0):
            return t
    raise ValueError("torsion field degree exceeds the search limit")


__all__ = ["WeierstrassCurve", "BirationalMap", "to_weierstrass", "division_poly",
           "torsion_points", "torsion_field_degree", "frobenius_trace"]
