"""Exact arithmetic in cyclotomic fields and in the ring Z[T]/(phi_{n,d}).

Elements of Q(zeta_m) are stored as an integer numerator vector on the power
basis 1, zeta, ..., zeta^(phi(m)-1) together with one positive denominator.
Keeping a single denominator makes products cheap and makes integrality a
one-line check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# integer polynomials (lists of ints, low degree first)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divexact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Quotient a/b for integer polynomials with b monic; raises if inexact."""
    a = list(a)
    b = _trim(list(b))
    if b[-1] != 1:
        raise ValueError("divisor must be monic")
    db = len(b) - 1
    if len(a) - 1 < db:
        if any(a):
            raise ValueError("inexact polynomial division")
        return []
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        coef = a[i]
        if coef:
            q[i - db] = coef
            for j in range(db + 1):
                a[i - db + j] -= coef * b[j]
    if any(a[:db]):
        raise ValueError("inexact polynomial division")
    return _trim(q)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m as coefficient tuple, from T^m - 1 divided by Phi_k for k | m, k < m."""
    if m < 1:
        raise ValueError("m must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for k in range(1, m):
        if m % k == 0:
            num = poly_divexact(num, cyclotomic_poly(k))
    return tuple(num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def build_phi(n: int, d: int) -> tuple[int, ...]:
    """phi_{n,d} = (T^{nd}-1)(T-1) / ((T^n-1)(T^d-1)), the product of Phi_k
    over k | nd with k dividing neither n nor d."""
    if n < 2 or d < 2 or math.gcd(n, d) != 1:
        raise ValueError("need coprime n, d >= 2")
    num = poly_mul([-1] + [0] * (n * d - 1) + [1], [-1, 1])
    num = poly_divexact(num, [-1] + [0] * (n - 1) + [1])
    num = poly_divexact(num, [-1] + [0] * (d - 1) + [1])
    return tuple(num)


# ---------------------------------------------------------------------------
# the quotient ring Z[T]/(phi_{n,d}) and the group ring Z[Z/nd]


class QuotientRing:
    """Z[T]/(phi) for a monic integer phi; elements are coefficient tuples."""

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.phi = build_phi(n, d)
        self.rank = len(self.phi) - 1

    def reduce(self, poly: Sequence[int]) -> tuple[int, ...]:
        c = list(poly)
        r = self.rank
        for i in range(len(c) - 1, r - 1, -1):
            coef = c[i]
            if coef:
                for j in range(r + 1):
                    c[i - r + j] -= coef * self.phi[j]
        c = c[:r] + [0] * max(0, r - len(c))
        return tuple(c)

    def mul(self, a, b) -> tuple[int, ...]:
        return self.reduce(poly_mul(list(a), list(b)))

    def monomial_basis_exponents(self) -> list[int]:
        """Exponents d*a + n*b with a in [0, n-2], b in [0, d-2]; as T-powers
        they form a Z-basis of the ring (checked by basis_change_det)."""
        return sorted(self.d * a + self.n * b
                      for a in range(self.n - 1) for b in range(self.d - 1))

    def basis_change_det(self) -> int:
        exps = self.monomial_basis_exponents()
        rows = [[Fraction(v) for v in self.reduce([0] * e + [1])] for e in exps]
        return int(_det(rows))


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in rows]
    size = len(m)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, size):
            f = m[r][col] * inv
            if f:
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return det


def crt_exponent(n: int, d: int, to_n: int, to_d: int) -> int:
    """The a mod nd with a = to_n mod n and a = to_d mod d."""
    for a in range(n * d):
        if a % n == to_n % n and a % d == to_d % d:
            return a
    raise ValueError("n, d not coprime")


class GroupRingElt:
    """Element sum_a c_a [zeta^a] of Z[Z/nd] with zeta a generator.

    zeta_n corresponds to the generator power a = 1 mod n, 0 mod d, and
    zeta_d to a = 0 mod n, 1 mod d.  The image in Z[T]/(phi_{n,d}) sends
    [zeta^a] to T^a.
    """

    __slots__ = ("n", "d", "coeffs")

    def __init__(self, n: int, d: int, coeffs: Iterable[int] | None = None):
        self.n, self.d = n, d
        c = [0] * (n * d)
        if coeffs is not None:
            for i, v in enumerate(coeffs):
                c[i % (n * d)] += v
        self.coeffs = tuple(c)

    @classmethod
    def one(cls, n, d):
        return cls(n, d, [1])

    @classmethod
    def integer(cls, n, d, k: int):
        return cls(n, d, [k])

    @classmethod
    def zeta_power(cls, n, d, a: int):
        c = [0] * (n * d)
        c[a % (n * d)] = 1
        return cls(n, d, c)

    @classmethod
    def zeta_n(cls, n, d):
        return cls.zeta_power(n, d, crt_exponent(n, d, 1, 0))

    @classmethod
    def zeta_d(cls, n, d):
        return cls.zeta_power(n, d, crt_exponent(n, d, 0, 1))

    def _check(self, other):
        if isinstance(other, int):
            return GroupRingElt.integer(self.n, self.d, other)
        if (other.n, other.d) != (self.n, self.d):
            raise ValueError("group ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return GroupRingElt(self.n, self.d, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElt(self.n, self.d, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        m = self.n * self.d
        out = [0] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % m] += a * b
        return GroupRingElt(self.n, self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = GroupRingElt.one(self.n, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and (self.n, self.d, self.coeffs) == (other.n, other.d, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.d, self.coeffs))

    def reduced_mod(self, N: int) -> "GroupRingElt":
        return GroupRingElt(self.n, self.d, [a % N for a in self.coeffs])

    def to_ring(self, ring: QuotientRing | None = None) -> tuple[int, ...]:
        ring = ring or QuotientRing(self.n, self.d)
        return ring.reduce(list(self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{a}" for a, c in enumerate(self.coeffs) if c]
        return "GroupRingElt(%d,%d: %s)" % (self.n, self.d, " + ".join(terms) or "0")


# ---------------------------------------------------------------------------
# cyclotomic fields


class CycField:
    """Q(zeta_m) with the power basis modulo Phi_m."""

    _cache: dict[int, "CycField"] = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        self = super().__new__(cls)
        self.m = m
        self.phi = cyclotomic_poly(m)
        self.deg = len(self.phi) - 1
        # reduction table: T^e mod Phi_m for 0 <= e < 2m
        tab = []
        cur = [1] + [0] * (self.deg - 1)
        for e in range(2 * m):
            tab.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [cur[i] - top * self.phi[i] for i in range(self.deg)]
        self._pow_table = tab
        cls._cache[m] = self
        return self

    def __reduce__(self):
        return (CycField, (self.m,))

    def __repr__(self):
        return f"CycField({self.m})"

    @property
    def characteristic(self) -> int:
        return 0

    @property
    def zero(self) -> "CycElt":
        return CycElt(self, (0,) * self.deg, 1)

    @property
    def one(self) -> "CycElt":
        return self(1)

    def __call__(self, value) -> "CycElt":
        if isinstance(value, CycElt):
            if value.field is not self:
                raise ValueError("field mismatch")
            return value
        fr = Fraction(value)
        return CycElt(self, (fr.numerator,) + (0,) * (self.deg - 1), fr.denominator)

    def zeta(self, k: int = 1) -> "CycElt":
        return CycElt(self, self._pow_table[k % self.m], 1)

    def root_of_unity(self, e: int) -> "CycElt":
        if self.m % e:
            raise ValueError(f"mu_{e} not in Q(zeta_{self.m})")
        return self.zeta(self.m // e)

    def from_exponent_counts(self, counts: Sequence[int]) -> "CycElt":
        """sum_e counts[e] * zeta^e with e read modulo m."""
        acc = [0] * self.deg
        for e, c in enumerate(counts):
            if c:
                row = self._pow_table[e % self.m]
                for i in range(self.deg):
                    if row[i]:
                        acc[i] += c * row[i]
        return CycElt(self, tuple(acc), 1)

    def from_coeffs(self, coeffs: Sequence, den: int = 1) -> "CycElt":
        """Element from (possibly longer than phi(m)) rational power-basis coefficients."""
        fr = [Fraction(c) for c in coeffs]
        common = 1
        for f in fr:
            common = common * f.denominator // math.gcd(common, f.denominator)
        nums = [int(f * common) for f in fr]
        return CycElt(self, self._fold(nums), common * den)

    def _fold(self, nums: Sequence[int]) -> tuple[int, ...]:
        acc = list(nums[: self.deg]) + [0] * max(0, self.deg - len(nums))
        for e in range(self.deg, len(nums)):
            c = nums[e]
            if c:
                row = self._pow_table[e % self.m]
                for i in range(self.deg):
                    if row[i]:
                        acc[i] += c * row[i]
        return tuple(acc)

    def embed_from(self, x: "CycElt") -> "CycElt":
        """Image of x in Q(zeta_m) under zeta_k -> zeta_m^(m/k)."""
        src = x.field
        if self.m % src.m:
            raise ValueError("no embedding")
        step = self.m // src.m
        big = [0] * self.m
        for i, c in enumerate(x.num):
            big[(i * step) % self.m] += c
        return CycElt(self, self._fold(big), x.den)

    def galois_group(self) -> list[int]:
        return [a for a in range(1, self.m) if math.gcd(a, self.m) == 1] if self.m > 1 else [1]

    def nth_roots(self, a: "CycElt", n: int) -> list["CycElt"]:
        """n-th roots of a rational a inside this field: a rational root of |a|
        times each root of unity the field contains, filtered exactly."""
        a = self(a)
        if not a.is_rational():
            raise NotImplementedError("n-th roots only for rational elements")
        q = a.to_fraction()
        if q == 0:
            return [self.zero]
        base = _rational_root(abs(q), n)
        if base is None:
            return []
        order = self.m if self.m % 2 == 0 else 2 * self.m
        zeta = self.zeta(1) if self.m % 2 == 0 else -self.zeta(1)
        out = set()
        w = self.one
        for _ in range(order):
            cand = w * base
            if cand ** n == a:
                out.add(cand)
            w = w * zeta
        return sorted(out, key=lambda e: e.sort_key())


def _rational_root(q: Fraction, n: int):
    if q < 0:
        if n % 2 == 0:
            return None
        r = _rational_root(-q, n)
        return None if r is None else -r

    def iroot(v):
        r = round(v ** (1.0 / n)) if v < 2 ** 50 else int(math.isqrt(v)) if n == 2 else None
        if r is None:
            lo, hi = 0, 1
            while hi ** n <= v:
                hi *= 2
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if mid ** n <= v:
                    lo = mid
                else:
                    hi = mid - 1
            r = lo
        for s in (r - 1, r, r + 1):
            if s >= 0 and s ** n == v:
                return s
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


class CycElt:
    """Element of Q(zeta_m): num/den on the power basis."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: CycField, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError
        num = tuple(num)
        if den < 0:
            num, den = tuple(-c for c in num), -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g > 1:
            num, den = tuple(c // g for c in num), den // g
        self.field, self.num, self.den = field, num, den

    # -- conversion
    def _coerce(self, other) -> "CycElt":
        if isinstance(other, CycElt):
            if other.field is not self.field:
                raise ValueError("field mismatch")
            return other
        return self.field(other)

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def sort_key(self):
        return (self.den, self.num)

    # -- arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o.den == self.den:
            return CycElt(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycElt(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycElt(self.field, [a * other for a in self.num], self.den)
        o = self._coerce(other)
        prod = [0] * (2 * self.field.deg - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(o.num):
                    if b:
                        prod[i + j] += a * b
        return CycElt(self.field, self.field._fold(prod), self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def galois(self, a: int) -> "CycElt":
        """sigma_a: zeta -> zeta^a, a a unit mod m."""
        m = self.field.m
        if math.gcd(a, m) != 1:
            raise ValueError("sigma_a needs gcd(a, m) = 1")
        big = [0] * m
        for i, c in enumerate(self.num):
            if c:
                big[(a * i) % m] += c
        return CycElt(self.field, self.field._fold(big), self.den)

    def norm(self) -> Fraction:
        """Absolute norm to Q."""
        prod = self.field.one
        for a in self.field.galois_group():
            prod = prod * self.galois(a)
        return prod.to_fraction()

    def inv(self) -> "CycElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return self.field(Fraction(self.den, self.num[0]))
        others = self.field.one
        for a in self.field.galois_group():
            if a != 1:
                others = others * self.galois(a)
        nrm = (others * self).to_fraction()
        return CycElt(self.field, [c * nrm.denominator for c in others.num],
                      others.den * nrm.numerator)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.field is other.field and self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.field.m, self.num, self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) or "0"
        return f"({body})" + (f"/{self.den}" if self.den != 1 else "")


def galois_apply(x: CycElt, a: int) -> CycElt:
    return x.galois(a)


# ---------------------------------------------------------------------------
# relative norms and (1 - zeta_p)-adic valuation


def rel_norm_to_subcyclotomic(x: CycElt, p: int) -> CycElt:
    """N_{Q(zeta_m)/Q(zeta_p)}(x) expressed in Q(zeta_p), for p | m.

    The product runs over sigma_a with a = 1 mod p.  The result is fixed by
    those automorphisms, and we read it off in the basis of Q(zeta_p) via
    zeta_p = zeta_m^(m/p) and an exact linear solve.
    """
    big = x.field
    m = big.m
    if m % p:
        raise ValueError("p must divide the conductor")
    prod = big.one
    for a in big.galois_group():
        if a % p == 1 % p:
            prod = prod * x.galois(a)
    small = CycField(p)
    return _express_in_subfield(prod, small)


def _express_in_subfield(y: CycElt, small: CycField) -> CycElt:
    big = y.field
    step = big.m // small.m
    # columns: images of zeta_p^i, i < deg(small)
    cols = []
    for i in range(small.deg):
        cols.append([Fraction(c) for c in big.zeta(i * step).num])
    target = [Fraction(c, y.den) for c in y.num]
    sol = _solve(cols, target)
    if sol is None:
        raise ArithmeticError("element does not lie in the subfield")
    return small.from_coeffs(sol)


def _solve(cols: list[list[Fraction]], target: list[Fraction]):
    """Solve sum_i s_i cols[i] = target exactly (overdetermined, consistent)."""
    nrows, ncols = len(target), len(cols)
    aug = [[cols[j][r] for j in range(ncols)] + [target[r]] for r in range(nrows)]
    row = 0
    pivots = []
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    for r in range(row, nrows):
        if aug[r][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        sol[col] = aug[r][-1]
    return sol


class _Infinite:
    """Valuation of zero."""

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __hash__(self):
        return hash("INFINITE")

    def __gt__(self, other):
        return not isinstance(other, _Infinite)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinite)


INFINITE = _Infinite()


def one_minus_zeta_divisions(x: CycElt, p: int, cap: int | None = None):
    """Largest k (up to cap) with x in (1 - zeta_p)^k O, zeta_p = zeta_m^(m/p).

    x must be integral.  Repeatedly divides by 1 - zeta_p and stops at the
    first non-integral quotient.  Zero returns INFINITE (or cap if given).
    """
    field = x.field
    if field.m % p:
        raise ValueError("p must divide the conductor")
    if not x.is_integral():
        raise ValueError("element is not integral")
    if x.is_zero():
        return INFINITE if cap is None else cap
    pi_inv = _cached_inverse(field.m, p)
    k = 0
    cur = x
    while cap is None or k < cap:
        nxt = cur * pi_inv
        if not nxt.is_integral():
            break
        cur = nxt
        k += 1
    return k


@lru_cache(maxsize=None)
def _cached_inverse(m: int, p: int) -> CycElt:
    field = CycField(m)
    return (field.one - field.zeta(m // p)).inv()
