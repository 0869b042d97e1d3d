"""Superelliptic curves y^n = f(x) and principality of divisors N Q - N infinity.

Functions are represented through the basis x^a y^b (b < n) of L(N inf).
A divisor D = sum m_i Q_i - M inf (m_i > 0) is principal exactly when some
nonzero h in L(M inf) vanishes to order >= m_i at every Q_i; that is a
kernel computation on local power-series coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .exactnum import GroupRingElt
from .ffield import FqField, gpoly_gcd, gpoly_mul, gpoly_sub, gpoly_trim


# ---------------------------------------------------------------------------
# curves and points


@dataclass(frozen=True)
class Affine:
    x: Any
    y: Any

    def key(self):
        return (self.x.sort_key(), self.y.sort_key())


class Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def key(self):
        return (-1,)

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def point_key(P):
    return P.key()


class CurveSpec:
    """y^n = f(x), f monic square-free of degree d, gcd(n, d) = 1."""

    def __init__(self, n: int, f: Sequence, field):
        self.field = field
        self.f = gpoly_trim([field(c) for c in f])
        self.n = n
        self.d = len(self.f) - 1
        if self.d < 1 or n < 2:
            raise ValueError("need n >= 2 and deg f >= 1")
        if math.gcd(n, self.d) != 1:
            raise ValueError("n and deg f must be coprime")
        if self.f[-1] != field.one:
            raise ValueError("f must be monic")
        char = getattr(field, "characteristic", 0)
        if char and n % char == 0:
            raise ValueError("characteristic divides n")
        deriv = [c * i for i, c in enumerate(self.f)][1:]
        if len(gpoly_gcd(self.f, gpoly_trim(deriv))) > 1:
            raise ValueError("f is not square-free")

    @property
    def genus(self) -> int:
        return genus(self.n, self.d)

    def f_at(self, x):
        acc = self.field.zero
        for c in reversed(self.f):
            acc = acc * x + c
        return acc

    def on_curve(self, P) -> bool:
        if P is INF:
            return True
        return P.y ** self.n == self.f_at(P.x)

    def point(self, x, y) -> Affine:
        P = Affine(self.field(x), self.field(y))
        if not self.on_curve(P):
            raise ValueError(f"{P} is not on the curve")
        return P

    def x_symmetry_order(self) -> int:
        """Largest e with f(x) = g(x^e)."""
        e = 0
        for i, c in enumerate(self.f):
            if i and not c.is_zero():
                e = math.gcd(e, i)
        return e

    def is_cyclic_model(self) -> bool:
        """f = x^d + c0 (so (x, y) -> (zeta_d x, zeta_n y) are automorphisms)."""
        return all(c.is_zero() for c in self.f[1:-1])

    def __repr__(self):
        return f"CurveSpec(y^{self.n} = f(x), deg f = {self.d}, over {self.field})"


def superelliptic(n: int, d: int, field, const=1) -> CurveSpec:
    """y^n = x^d + const."""
    return CurveSpec(n, [field(const)] + [field.zero] * (d - 1) + [field.one], field)


def genus(n: int, d: int) -> int:
    return (n - 1) * (d - 1) // 2


def ln_infty_basis(n: int, d: int, N: int) -> list[tuple[int, int]]:
    """Exponents (a, b), b <= n-1, with pole order a*n + b*d <= N, sorted by pole order."""
    out = []
    for b in range(n):
        a = 0
        while a * n + b * d <= N:
            out.append((a, b))
            a += 1
    return sorted(out, key=lambda ab: (ab[0] * n + ab[1] * d, ab[1]))


# ---------------------------------------------------------------------------
# truncated power series over a field (lists of elements)


def ser_mul(a, b, prec):
    zero = a[0] * 0
    out = [zero] * prec
    for i in range(min(len(a), prec)):
        ai = a[i]
        if ai.is_zero():
            continue
        for j in range(min(len(b), prec - i)):
            out[i + j] = out[i + j] + ai * b[j]
    return out


def ser_inv(a, prec):
    b0 = a[0].inv()
    out = [b0]
    for k in range(1, prec):
        acc = a[0] * 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = acc + a[j] * out[k - j]
        out.append(-acc * b0)
    return out


def ser_pow(a, k, prec):
    one = a[0] * 0 + 1
    out = [one] + [a[0] * 0] * (prec - 1)
    base = a
    while k:
        if k & 1:
            out = ser_mul(out, base, prec)
        k >>= 1
        if k:
            base = ser_mul(base, base, prec)
    return out


def _pad(a, prec, zero):
    a = list(a[:prec])
    return a + [zero] * (prec - len(a))


def _nth_root_series(G, n, y0, prec):
    """Y with Y^n = G, Y(0) = y0, by Newton iteration with doubling precision."""
    zero = y0 * 0
    Y = [y0] + [zero] * (prec - 1)
    inv_n = (y0 * 0 + n).inv()
    m = 1
    while m < prec:
        m = min(2 * m, prec)
        Yn1 = ser_pow(Y[:m], n - 1, m)
        Yn = ser_mul(Yn1, Y[:m], m)
        corr = ser_mul([g - h for g, h in zip(G[:m], Yn)], ser_inv(Yn1, m), m)
        Y = [Y[i] + corr[i] * inv_n for i in range(m)] + Y[m:]
    return Y[:prec]


class LocalParameters:
    """x(t), y(t) at an affine point P, to precision prec.

    t = x - x_P when y_P != 0 and t = y when y_P = 0 (P is then a branch
    point and x - x_P vanishes to order n).
    """

    def __init__(self, curve: CurveSpec, P: Affine, prec: int):
        if P is INF:
            raise ValueError("expansions are taken at affine points")
        if not curve.on_curve(P):
            raise ValueError("point is not on the curve")
        F = curve.field
        self.curve, self.P, self.prec = curve, P, prec
        zero, one = F.zero, F.one
        guard = prec + 2
        if not P.y.is_zero():
            self.ramified = False
            # G(t) = f(x_P + t) by Horner with the linear series x_P + t
            G = [zero] * guard
            for c in reversed(curve.f):
                G = _mul_linear(G, P.x, one, guard)
                G[0] = G[0] + c
            self.x = _pad([P.x, one], guard, zero)
            self.y = _nth_root_series(G, curve.n, P.y, guard)
        else:
            self.ramified = True
            # F(s) = f(x_P + s) = c1 s + c2 s^2 + ...; solve F(s) = t^n
            shifted = [zero] * (curve.d + 1)
            for c in reversed(curve.f):
                shifted = _mul_linear(shifted, P.x, one, curve.d + 1)
                shifted[0] = shifted[0] + c
            c1 = shifted[1]
            if c1.is_zero():
                raise ValueError("f has a repeated root at x_P")
            c1inv = c1.inv()
            tn = [zero] * guard
            if curve.n < guard:
                tn[curve.n] = one
            s = [zero] * guard
            for _ in range(guard // curve.n + 2):
                # higher part: sum_{k>=2} c_k s^k, via Horner on c_2 + c_3 s + ...
                acc = [zero] * guard
                for c in reversed(shifted[2:]):
                    acc = ser_mul(acc, s, guard)
                    acc[0] = acc[0] + c
                high = ser_mul(ser_mul(acc, s, guard), s, guard)
                new = [(a - b) * c1inv for a, b in zip(tn, high)]
                if new == s:
                    break
                s = new
            self.x = [P.x + s[0]] + s[1:]
            self.y = _pad([zero, one], guard, zero)
        self._xpow = [_pad([one], guard, zero)]
        self._ypow = [_pad([one], guard, zero)]

    def x_power(self, a):
        while len(self._xpow) <= a:
            last = self._xpow[-1]
            if self.ramified:
                self._xpow.append(ser_mul(last, self.x, len(last)))
            else:
                self._xpow.append(_mul_linear(last, self.P.x, self.x[1], len(last)))
        return self._xpow[a]

    def y_power(self, b):
        while len(self._ypow) <= b:
            last = self._ypow[-1]
            self._ypow.append(ser_mul(last, self.y, len(last)))
        return self._ypow[b]

    def monomial(self, a, b, prec=None):
        prec = self.prec if prec is None else prec
        xa, yb = self.x_power(a), self.y_power(b)
        if b == 0:
            return xa[:prec]
        if a == 0:
            return yb[:prec]
        return ser_mul(xa, yb, prec)


def _mul_linear(s, c0, c1, prec):
    """s * (c0 + c1 t), truncated."""
    out = [s[0] * c0]
    for i in range(1, prec):
        out.append(s[i] * c0 + s[i - 1] * c1 if i < len(s) else s[i - 1] * c1)
    return out


def _as_poly_dict(h) -> dict[tuple[int, int], Any]:
    if isinstance(h, tuple) and len(h) == 2 and all(isinstance(v, int) for v in h):
        return {h: 1}
    return dict(h)


def local_expansion(curve: CurveSpec, h, P: Affine, order: int) -> list:
    """First `order` coefficients of h(x(t), y(t)) at P.

    h is a monomial (a, b) or a dict {(a, b): coefficient}; b may exceed n - 1.
    """
    lp = LocalParameters(curve, P, order)
    F = curve.field
    acc = [F.zero] * order
    for (a, b), coef in _as_poly_dict(h).items():
        coef = F(coef)
        if coef.is_zero():
            continue
        mono = lp.monomial(a, b, order)
        acc = [u + coef * v for u, v in zip(acc, mono)]
    return acc


def vanishing_order(curve: CurveSpec, h, P: Affine, max_order: int) -> int:
    """Order of vanishing of h at P, capped at max_order."""
    ser = local_expansion(curve, h, P, max_order)
    for i, c in enumerate(ser):
        if not c.is_zero():
            return i
    return max_order


# ---------------------------------------------------------------------------
# principality


@dataclass
class DivisorSpec:
    """sum m_i Q_i + inf_mult * infinity."""

    support: list
    inf_mult: int

    @classmethod
    def n_times_point(cls, P, N):
        return cls([(P, N)], -N)

    def degree(self) -> int:
        return sum(m for _, m in self.support) + self.inf_mult

    def merged(self) -> list:
        acc: dict = {}
        order = []
        for P, m in self.support:
            if P not in acc:
                acc[P] = 0
                order.append(P)
            acc[P] += m
        return [(P, acc[P]) for P in order if acc[P]]


def _kernel_vector_generic(rows, ncols):
    """A nonzero kernel vector of the matrix (list of rows), or None."""
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = m[rank][col].inv()
        m[rank] = [v * inv for v in m[rank]]
        for i in range(len(m)):
            if i != rank and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    if rank == ncols:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    one = m[0][0] * 0 + 1 if m else None
    vec = [one * 0] * ncols
    vec[free] = one
    for r, col in enumerate(pivots):
        vec[col] = -m[r][free]
    return vec


def _kernel_vector_prime(rows, ncols, p):
    """Same as above over F_p using vectorized integer elimination."""
    A = np.array([[int(v.raw) for v in r] for r in rows], dtype=np.int64).reshape(len(rows), ncols)
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == A.shape[0]:
            break
        nz = np.flatnonzero(A[rank:, col])
        if not nz.size:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        A[rank] = A[rank] * pow(int(A[rank, col]), p - 2, p) % p
        f = A[:, col].copy()
        f[rank] = 0
        A = (A - np.outer(f, A[rank])) % p
        pivots.append(col)
        rank += 1
    if rank == ncols:
        return None
    free = next(c for c in range(ncols) if c not in pivots)
    vec = [0] * ncols
    vec[free] = 1
    for r, col in enumerate(pivots):
        vec[col] = int(-A[r, free] % p)
    return vec


def is_principal(curve: CurveSpec, D: DivisorSpec):
    """(True, witness) if D = sum m_i Q_i - M inf is principal, else (False, None).

    The witness is {(a, b): coefficient}, a function h in L(M inf) with
    div(h) = D.
    """
    support = D.merged()
    if D.degree() != 0:
        raise ValueError("divisor must have degree zero")
    if any(P is INF for P, _ in support):
        raise ValueError("put the infinite part in inf_mult")
    if any(m < 0 for _, m in support):
        raise ValueError("affine multiplicities must be positive")
    M = -D.inf_mult
    F = curve.field
    if M == 0:
        return True, {(0, 0): F.one}
    basis = ln_infty_basis(curve.n, curve.d, M)
    rows = []
    for P, m in support:
        lp = LocalParameters(curve, P, m)
        cols = [lp.monomial(a, b, m) for a, b in basis]
        for j in range(m):
            rows.append([c[j] for c in cols])
    if isinstance(F, FqField) and F.k == 1:
        vec = _kernel_vector_prime(rows, len(basis), F.p)
        if vec is None:
            return False, None
        return True, {ab: F(v) for ab, v in zip(basis, vec) if v}
    vec = _kernel_vector_generic(rows, len(basis))
    if vec is None:
        return False, None
    return True, {ab: v for ab, v in zip(basis, vec) if not v.is_zero()}


# ---------------------------------------------------------------------------
# automorphisms and the group ring action


def apply_auto(curve: CurveSpec, P, a: int):
    """zeta^a P for zeta = zeta_{nd} acting as (x, y) -> (zeta_d x, zeta_n y),
    zeta_d = zeta^n and zeta_n = zeta^d."""
    if P is INF:
        return INF
    if not curve.is_cyclic_model():
        raise ValueError("the Z/nd action needs f = x^d + c")
    n, d = curve.n, curve.d
    z = curve.field.root_of_unity(n * d)
    zd, zn = z ** n, z ** d
    return Affine(P.x * zd ** (a % d), P.y * zn ** (a % n))


def z_orbit(curve: CurveSpec, P) -> list:
    seen: dict = {}
    for a in range(curve.n * curve.d):
        Q = apply_auto(curve, P, a)
        seen.setdefault(Q, None)
    return list(seen)


def scale_point(curve: CurveSpec, P, i: int, j: int, ex: int | None = None):
    """(zeta_ex^i x, zeta_n^j y) with ex = curve.x_symmetry_order() by default."""
    if P is INF:
        return INF
    F = curve.field
    ex = curve.x_symmetry_order() if ex is None else ex
    sx = F.root_of_unity(ex) ** i if ex > 1 else F.one
    sy = F.root_of_unity(curve.n) ** j
    return Affine(P.x * sx, P.y * sy)


_ANNIHILATOR_CACHE: dict = {}


def annihilated_by(curve: CurveSpec, P, N: int) -> bool:
    """N (P - inf) = 0 in the Jacobian."""
    if P is INF:
        return True
    key = (curve.n, tuple(curve.f), curve.field, P, N)
    if key not in _ANNIHILATOR_CACHE:
        _ANNIHILATOR_CACHE[key] = is_principal(curve, DivisorSpec.n_times_point(P, N))[0]
    return _ANNIHILATOR_CACHE[key]


def kills(curve: CurveSpec, r: GroupRingElt, P, N: int) -> bool:
    """Whether r [P - inf] = 0, for a point with N [P - inf] = 0.

    The coefficients of r are reduced mod N, the orbit points are merged,
    and the resulting effective divisor is tested for principality.
    """
    if (r.n, r.d) != (curve.n, curve.d):
        raise ValueError("group ring does not match the curve")
    if not annihilated_by(curve, P, N):
        raise ValueError(f"{N} [P - inf] is not principal, so reduction mod {N} is invalid")
    if P is INF:
        return True
    support = []
    for a, c in enumerate(r.coeffs):
        c %= N
        if c:
            support.append((apply_auto(curve, P, a), c))
    M = sum(m for _, m in support)
    if M == 0:
        return True
    return is_principal(curve, DivisorSpec(support, -M))[0]


# ---------------------------------------------------------------------------
# the residual n-th power test


def residual_nth_power(n: int, d: int, f: Sequence, c, field):
    """v with deg v < d/n and v^n = f - (x - c)^d, or None.

    The leading coefficient of v is an n-th root of the leading coefficient of
    the residual; the other coefficients follow top-down, and the candidate
    is verified exactly.
    """
    f = gpoly_trim([field(a) for a in f])
    if len(f) - 1 != d:
        raise ValueError("f must have degree d")
    c = field(c)
    lin = [-c, field.one]
    power = [field.one]
    for _ in range(d):
        power = gpoly_mul(power, lin)
    L = gpoly_sub(f, power)
    if not L:
        return []
    D = len(L) - 1
    if D % n:
        return None
    e = D // n
    if n * e >= d:
        return None
    for lead in field.nth_roots(L[-1], n):
        v = [field.zero] * e + [lead]
        denom = lead ** (n - 1) * n
        for k in range(1, e + 1):
            # only v[e-k] * n * lead^(n-1) reaches x^(ne-k) among the unknown terms
            idx = n * e - k
            partial = _gpow(v, n)
            cur = partial[idx] if idx < len(partial) else field.zero
            v[e - k] = (L[idx] - cur) / denom
        if _gpow(v, n) == L:
            return v
    return None


def _gpow(v, n):
    out = [v[0] * 0 + 1]
    for _ in range(n):
        out = gpoly_mul(out, v)
    return out


def residual_elimination(n: int, d: int, f_coeffs: Sequence[int]):
    """Exact characteristic-0 condition on c for residual_nth_power.

    Sets up v = sum a_i x^i (deg v < d/n) with unknown coefficients, equates
    v^n with f - (x - c)^d and eliminates the a_i by a lex Groebner basis.
    Returns the basis elements involving only c (a list of sympy expressions;
    [1] means no c works, [c] means c = 0 is forced).
    """
    import sympy as sp
    x, c = sp.symbols("x c")
    e = -(-d // n) - 1
    a = sp.symbols(f"a0:{e + 1}")
    v = sum(a[i] * x ** i for i in range(e + 1))
    f = sum(sp.Integer(k) * x ** i for i, k in enumerate(f_coeffs))
    eqs = sp.Poly(sp.expand(v ** n - (f - (x - c) ** d)), x).all_coeffs()
    G = sp.groebner(eqs, *a, c, order="lex")
    return [g for g in G.exprs if g.free_symbols <= {c}]


def residual_scan(n: int, d: int, f_coeffs: Sequence[int], primes: Sequence[int]) -> dict:
    """Admissible c (those with a residual n-th root v) over each F_p, by trying every c."""
    from .ffield import make_field
    out = {}
    for p in primes:
        F = make_field(p)
        out[p] = [c for c in range(p) if residual_nth_power(n, d, f_coeffs, c, F) is not None]
    return out


def default_scan_primes(n: int, d: int, count: int = 3) -> list[int]:
    """The first `count` primes above n + d that do not divide nd."""
    import sympy
    out, p = [], n + d
    while len(out) < count:
        p = int(sympy.nextprime(p))
        if (n * d) % p:
            out.append(p)
    return out


def points_over(curve: CurveSpec) -> list:
    """All affine points over a (small) finite field, by enumeration of x."""
    F = curve.field
    out = []
    for x in F.elements():
        rhs = curve.f_at(x)
        for y in F.nth_roots(rhs, curve.n):
            out.append(Affine(x, y))
    return out


__all__ = [
    "Affine", "Infinity", "INF", "CurveSpec", "DivisorSpec", "superelliptic", "genus",
    "ln_infty_basis", "local_expansion", "vanishing_order", "is_principal", "apply_auto",
    "z_orbit", "scale_point", "kills", "annihilated_by", "residual_nth_power",
    "residual_elimination", "residual_scan", "default_scan_primes", "points_over", "LocalParameters",
]
