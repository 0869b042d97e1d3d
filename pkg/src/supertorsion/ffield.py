"""Finite fields F_{p^k} with canonical choices.

The field F_p[X]/(f) uses the lex-least monic irreducible f of degree k
(coefficients c_{k-1}, ..., c_0 read as a base-p integer).  Elements are
ordered by the same base-p value and the canonical generator is the least
element of full multiplicative order, so every derived choice (roots of
unity, root lists, embeddings) is reproducible.

Prime-field elements are plain ints; for k > 1 an element is a read-only
int64 coefficient vector and products go through numpy convolution plus a
precomputed reduction matrix.
"""

from __future__ import annotations

import math
import random
from contextlib import contextmanager
from functools import lru_cache
from typing import Iterator

import numpy as np
import sympy

from .exactnum import cyclotomic_poly

DEFAULT_SEED = 20240917
_SEED = [DEFAULT_SEED]


@contextmanager
def seeded(seed: int):
    """Use `seed` for the randomized root finding inside the block."""
    old = _SEED[0]
    _SEED[0] = seed
    try:
        yield
    finally:
        _SEED[0] = old


# ---------------------------------------------------------------------------
# polynomials over F_p as int64 arrays, low degree first, no trailing zeros


def _arr(c) -> np.ndarray:
    return np.asarray(c, dtype=np.int64)


def fp_trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def fp_norm(c, p: int) -> np.ndarray:
    return fp_trim(_arr(c) % p)


def fp_deg(a: np.ndarray) -> int:
    return len(a) - 1


def fp_add(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] += b
    return fp_trim(out % p)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return fp_trim(out % p)


def fp_mul(a, b, p):
    if not len(a) or not len(b):
        return a[:0]
    if min(len(a), len(b)) * (p - 1) ** 2 >= 2 ** 62:
        raise OverflowError("prime too large for int64 convolution")
    return fp_trim(np.convolve(a, b) % p)


def fp_divmod(a, b, p):
    if not len(b):
        raise ZeroDivisionError("polynomial division by zero")
    a = a.copy()
    db = len(b) - 1
    if len(a) - 1 < db:
        return a[:0], fp_trim(a)
    inv = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            c = c * inv % p
            q[i - db] = c
            a[i - db: i + 1] = (a[i - db: i + 1] - c * b) % p
    return fp_trim(q), fp_trim(a[:db] % p)


def fp_mod(a, b, p):
    return fp_divmod(a, b, p)[1]


def fp_monic(a, p):
    if not len(a):
        return a
    inv = pow(int(a[-1]), p - 2, p)
    return a * inv % p


def fp_gcd(a, b, p):
    while len(b):
        a, b = b, fp_mod(a, b, p)
    return fp_monic(a, p)


def fp_powmod(base, e: int, mod, p):
    result = _arr([1])
    base = fp_mod(base, mod, p)
    while e:
        if e & 1:
            result = fp_mod(fp_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = fp_mod(fp_mul(base, base, p), mod, p)
    return result


def fp_deriv(a, p):
    if len(a) <= 1:
        return a[:0]
    return fp_trim(a[1:] * np.arange(1, len(a), dtype=np.int64) % p)


def fp_frobenius_matrix(mod, p) -> np.ndarray:
    """Rows are X^(p*i) mod `mod`, so h(X)^p = h @ M for h over F_p."""
    n = len(mod) - 1
    xp = fp_powmod(_arr([0, 1]), p, mod, p)
    rows = np.zeros((n, n), dtype=np.int64)
    cur = _arr([1])
    for i in range(n):
        rows[i, : len(cur)] = cur
        cur = fp_mod(fp_mul(cur, xp, p), mod, p)
    return rows


def _frob_apply(h, M, p):
    v = np.zeros(M.shape[0], dtype=np.int64)
    v[: len(h)] = h
    return fp_trim(v @ M % p)


def fp_squarefree(f, p) -> list[tuple[np.ndarray, int]]:
    """Square-free decomposition f = prod g_i^(m_i) over F_p (f monic)."""
    out: list[tuple[np.ndarray, int]] = []
    if len(f) <= 1:
        return out
    c = fp_gcd(f, fp_deriv(f, p), p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((fp_monic(z, p), i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if len(c) > 1:
        root = fp_trim(c[::p].copy())
        for g, m in fp_squarefree(root, p):
            out.append((g, m * p))
    return out


def fp_ddf(f, p, max_degree: int) -> list[tuple[np.ndarray, int]]:
    """Distinct-degree factorization of square-free monic f, degrees <= max_degree."""
    out = []
    if len(f) <= 1:
        return out
    M = fp_frobenius_matrix(f, p)
    x = _arr([0, 1])
    h = fp_mod(x, f, p)
    rest = f
    for i in range(1, max_degree + 1):
        if len(rest) - 1 < i:
            break
        h = _frob_apply(h, M, p)
        g = fp_gcd(rest, fp_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            rest = fp_divmod(rest, g, p)[0]
            h = fp_mod(h, rest, p) if len(rest) > 1 else h
    return out


def fp_edf(g, s: int, p: int, rng: random.Random) -> list[np.ndarray]:
    """Split a product of distinct irreducibles of degree s (Cantor-Zassenhaus)."""
    g = fp_monic(g, p)
    if len(g) - 1 == s:
        return [g]
    n = len(g) - 1
    M = fp_frobenius_matrix(g, p)
    while True:
        a = fp_trim(_arr([rng.randrange(p) for _ in range(n)]))
        if len(a) <= 1:
            continue
        if p == 2:
            # trace over F_2 of the degree-s residue: a + a^2 + ... + a^(2^(s-1))
            b = a.copy()
            t = a.copy()
            for _ in range(s - 1):
                t = _frob_apply(t, M, p)
                b = fp_add(b, t, p)
            cand = fp_gcd(g, b, p)
        else:
            norm = a.copy()
            t = a.copy()
            for _ in range(s - 1):
                t = _frob_apply(t, M, p)
                norm = fp_mod(fp_mul(norm, t, p), g, p)
            b = fp_powmod(norm, (p - 1) // 2, g, p)
            cand = fp_gcd(g, fp_sub(b, _arr([1]), p), p)
        if 1 < len(cand) < len(g):
            return fp_edf(cand, s, p, rng) + fp_edf(fp_divmod(g, cand, p)[0], s, p, rng)


def is_irreducible_fp(f, p) -> bool:
    """Rabin's test for monic f over F_p."""
    f = fp_norm(f, p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    M = fp_frobenius_matrix(f, p)
    x = _arr([0, 1])
    powers = [fp_mod(x, f, p)]
    for _ in range(n):
        powers.append(_frob_apply(powers[-1], M, p))
    if not np.array_equal(fp_sub(powers[n], x, p), x[:0]):
        return False
    for r in sympy.primefactors(n):
        g = fp_gcd(f, fp_sub(powers[n // r], x, p), p)
        if len(g) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# the field


class FqField:
    """F_{p^k} with canonical defining polynomial and generator."""

    def __init__(self, p: int, k: int):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        self.p, self.k = p, k
        self.order = p ** k
        if k * k * p ** 3 >= 2 ** 62 and k > 1:
            raise ValueError("field too large for the int64 element kernel")
        self.defining = self._lex_least_irreducible()
        if k > 1:
            f = _arr(self.defining)
            red = np.zeros((k - 1, k), dtype=np.int64)
            cur = fp_mod(_arr([0] * k + [1]), f, p)
            for i in range(k - 1):
                red[i, : len(cur)] = cur
                cur = fp_mod(fp_mul(cur, _arr([0, 1]), p), f, p)
            self._red = red
            self._frob = fp_frobenius_matrix(f, p)
            self._digits = np.array([p ** i for i in range(k)], dtype=object)
        self._qm1_primes = _order_minus_one_primes(p, k)
        self.generator = self._canonical_generator()

    def __repr__(self):
        return f"FqField({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # -- canonical choices
    def _lex_least_irreducible(self) -> tuple[int, ...]:
        p, k = self.p, self.k
        if k == 1:
            return (0, 1)
        for v in range(p ** k):
            coeffs = [(v // p ** i) % p for i in range(k)]  # c_0 .. c_{k-1}
            if coeffs[0] == 0:
                continue
            cand = coeffs + [1]
            if is_irreducible_fp(cand, p):
                return tuple(cand)
        raise RuntimeError("no irreducible polynomial found")

    def _canonical_generator(self) -> "FqElt":
        q = self.order
        if q == 2:
            return self.one
        for v in range(1, q):
            g = self.from_key(v)
            if all(g ** ((q - 1) // r) != self.one for r in self._qm1_primes):
                return g
        raise RuntimeError("no generator found")

    # -- constructors
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> "FqElt":
        return FqElt(self, 0 if self.k == 1 else _ro(np.zeros(self.k, dtype=np.int64)))

    @property
    def one(self) -> "FqElt":
        if self.k == 1:
            return FqElt(self, 1)
        v = np.zeros(self.k, dtype=np.int64)
        v[0] = 1
        return FqElt(self, _ro(v))

    def __call__(self, value) -> "FqElt":
        if isinstance(value, FqElt):
            if value.field is self:
                return value
            if value.field.p == self.p and value.field.k == 1:
                return self(value.raw)
            raise ValueError("field mismatch")
        if isinstance(value, (int, np.integer)):
            v = int(value) % self.p
            if self.k == 1:
                return FqElt(self, v)
            a = np.zeros(self.k, dtype=np.int64)
            a[0] = v
            return FqElt(self, _ro(a))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError("too many coefficients")
        if self.k == 1:
            return FqElt(self, coeffs[0] if coeffs else 0)
        a = np.zeros(self.k, dtype=np.int64)
        a[: len(coeffs)] = coeffs
        return FqElt(self, _ro(a))

    def from_key(self, v: int) -> "FqElt":
        """Element whose coefficient vector is the base-p expansion of v."""
        if self.k == 1:
            return FqElt(self, v % self.p)
        return self([(v // self.p ** i) % self.p for i in range(self.k)])

    def gen_poly(self) -> "FqElt":
        """The class of X."""
        return self([0, 1]) if self.k > 1 else self(0)

    def elements(self) -> Iterator["FqElt"]:
        for v in range(self.order):
            yield self.from_key(v)

    def random_element(self, rng: random.Random) -> "FqElt":
        return self.from_key(rng.randrange(self.order))

    def root_of_unity(self, e: int) -> "FqElt":
        """zeta_e = g^((q-1)/e) for the canonical generator g."""
        if (self.order - 1) % e:
            raise ValueError(f"mu_{e} not contained in F_{self.order}")
        return self.generator ** ((self.order - 1) // e)

    def nth_roots(self, a, n: int) -> list["FqElt"]:
        return all_eth_roots(self(a), n)

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "order": self.order,
                "defining_polynomial": list(self.defining),
                "generator": self.generator.coeffs()}

    # -- raw kernels
    def _mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        c = np.convolve(a, b)
        k = self.k
        out = (c[:k] + c[k:] @ self._red) % self.p
        return out

    def _inv(self, a):
        """Inverse by the extended Euclidean algorithm on F_p[X]."""
        p = self.p
        r0 = [int(c) for c in self.defining]
        r1 = [int(c) for c in a]
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [1]
        while len(r1) > 1:
            # one division step r0 = q r1 + r
            inv_lead = pow(r1[-1], p - 2, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = r0[:]
            for i in range(len(r) - len(r1), -1, -1):
                c = r[i + len(r1) - 1] * inv_lead % p
                q[i] = c
                if c:
                    for j, v in enumerate(r1):
                        r[i + j] = (r[i + j] - c * v) % p
            while r and r[-1] == 0:
                r.pop()
            qs = [0] * (len(q) + len(s1) - 1) if s1 else []
            for i, u in enumerate(q):
                if u:
                    for j, v in enumerate(s1):
                        qs[i + j] += u * v
            n = max(len(s0), len(qs))
            s_new = [((s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)) % p
                     for i in range(n)]
            while s_new and s_new[-1] == 0:
                s_new.pop()
            r0, r1 = r1, r
            s0, s1 = s1, s_new
        c = pow(r1[0], p - 2, p)
        out = np.zeros(self.k, dtype=np.int64)
        for i, v in enumerate(s1):
            out[i] = v * c % p
        return out

    def _frobenius(self, a):
        if self.k == 1:
            return a
        return (a @ self._frob) % self.p


def _ro(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def _order_minus_one_primes(p: int, k: int) -> tuple[int, ...]:
    primes: set[int] = set()
    for dd in range(1, k + 1):
        if k % dd == 0:
            val = sum(c * p ** i for i, c in enumerate(cyclotomic_poly(dd)))
            primes.update(sympy.factorint(abs(val)).keys())
    return tuple(sorted(primes))


def make_field(p: int, k: int = 1) -> FqField:
    """Canonical F_{p^k} (cached, so equal arguments give the same object)."""
    return _make_field(int(p), int(k))


@lru_cache(maxsize=None)
def _make_field(p: int, k: int) -> FqField:
    return FqField(p, k)


class FqElt:
    __slots__ = ("field", "raw")

    def __init__(self, field: FqField, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other) -> "FqElt":
        if isinstance(other, FqElt):
            if other.field is not self.field:
                return self.field(other)
            return other
        return self.field(other)

    def coeffs(self) -> list[int]:
        if self.field.k == 1:
            return [int(self.raw)]
        return [int(c) for c in self.raw]

    def key(self) -> int:
        if self.field.k == 1:
            return int(self.raw)
        return int(sum(int(c) * w for c, w in zip(self.raw, self.field._digits)))

    sort_key = key

    def is_zero(self) -> bool:
        if self.field.k == 1:
            return self.raw == 0
        return not self.raw.any()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        o = self._coerce(other)
        F = self.field
        if F.k == 1:
            return FqElt(F, (self.raw + o.raw) % F.p)
        return FqElt(F, _ro((self.raw + o.raw) % F.p))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        F = self.field
        if F.k == 1:
            return FqElt(F, (self.raw - o.raw) % F.p)
        return FqElt(F, _ro((self.raw - o.raw) % F.p))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        F = self.field
        if F.k == 1:
            return FqElt(F, (-self.raw) % F.p)
        return FqElt(F, _ro((-self.raw) % F.p))

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            if F.k == 1:
                return FqElt(F, self.raw * other % F.p)
            return FqElt(F, _ro(self.raw * (other % F.p) % F.p))
        o = self._coerce(other)
        if F.k == 1:
            return FqElt(F, self.raw * o.raw % F.p)
        return FqElt(F, _ro(F._mul(self.raw, o.raw)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        F = self.field
        if e < 0:
            return self.inv() ** (-e)
        if F.k == 1:
            return FqElt(F, pow(self.raw, e, F.p))
        if self.is_zero():
            return F.one if e == 0 else F.zero
        e %= F.order - 1
        result = None
        base = self.raw
        while e:
            if e & 1:
                result = base if result is None else F._mul(result, base)
            e >>= 1
            if e:
                base = F._mul(base, base)
        return F.one if result is None else FqElt(F, _ro(result))

    def inv(self) -> "FqElt":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        F = self.field
        if F.k == 1:
            return FqElt(F, pow(self.raw, F.p - 2, F.p))
        return FqElt(F, _ro(F._inv(self.raw)))

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def frobenius(self, times: int = 1) -> "FqElt":
        F = self.field
        raw = self.raw
        for _ in range(times % F.k if F.k > 1 else 0):
            raw = F._frobenius(raw)
        return FqElt(F, _ro(raw) if F.k > 1 else raw)

    def degree(self) -> int:
        """Degree over F_p of the subfield generated by this element."""
        F = self.field
        cur = self
        for t in range(1, F.k + 1):
            cur = cur.frobenius()
            if cur == self and F.k % t == 0:
                return t
        return F.k

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElt):
            return NotImplemented
        if other.field is not self.field:
            return False
        if self.field.k == 1:
            return self.raw == other.raw
        return np.array_equal(self.raw, other.raw)

    def __hash__(self):
        if self.field.k == 1:
            return hash(int(self.raw))
        return hash(self.raw.tobytes())

    def __repr__(self):
        if self.field.k == 1:
            return str(int(self.raw))
        return "[" + ",".join(str(int(c)) for c in self.raw) + "]"


# ---------------------------------------------------------------------------
# power residues and roots


def is_eth_power(x: FqElt, e: int) -> bool:
    """True when x = y^e for some y; needs x != 0 and e | q - 1."""
    F = x.field
    if x.is_zero():
        raise ValueError("zero has no class modulo e-th powers")
    if (F.order - 1) % e:
        raise ValueError(f"{e} does not divide q - 1 = {F.order - 1}")
    return x ** ((F.order - 1) // e) == F.one


def _prime_roots(z: FqElt, r: int) -> list[FqElt]:
    F = z.field
    q1 = F.order - 1
    if q1 % r:
        return [z ** pow(r, -1, q1)]
    if z ** (q1 // r) != F.one:
        return []
    x = _amm_root(z, r)
    omega = F.root_of_unity(r)
    out = []
    cur = x
    for _ in range(r):
        out.append(cur)
        cur = cur * omega
    return out


def _amm_root(z: FqElt, r: int) -> FqElt:
    """One r-th root of an r-th power z, r prime dividing q - 1.

    Splits z into its prime-to-r part (where r is invertible) and its Sylow-r
    part, whose logarithm to the base g^t is recovered digit by digit.
    """
    F = z.field
    q1 = F.order - 1
    s, t = 0, q1
    while t % r == 0:
        s += 1
        t //= r
    rs = r ** s
    e1 = rs * pow(rs, -1, t) % q1 if t > 1 else 0  # 1 mod t, 0 mod r^s
    e2 = (1 - e1) % q1
    z_t, z_r = z ** e1, z ** e2
    root_t = z_t ** pow(r, -1, t) if t > 1 else F.one
    c = F.generator ** t
    gamma = c ** (r ** (s - 1))
    table = {}
    cur = F.one
    for dgt in range(r):
        table[cur] = dgt
        cur = cur * gamma
    c_inv = c.inv()
    L = 0
    for i in range(s):
        h = (z_r * c_inv ** L) ** (r ** (s - 1 - i))
        L += table[h] * r ** i
    if L % r:
        raise ArithmeticError("element is not an r-th power")
    x = root_t * c ** (L // r)
    if x ** r != z:
        raise ArithmeticError("root extraction failed")
    return x


def all_eth_roots(a: FqElt, e: int) -> list[FqElt]:
    """All y with y^e = a, sorted canonically.  Size is 0 or gcd(e, q-1) for a != 0."""
    F = a.field
    if e < 1:
        raise ValueError("exponent must be positive")
    if a.is_zero():
        return [F.zero]
    roots = [a]
    for r, mult in sympy.factorint(e).items():
        for _ in range(mult):
            nxt: dict[FqElt, None] = {}
            for z in roots:
                for y in _prime_roots(z, r):
                    nxt[y] = None
            roots = list(nxt)
            if not roots:
                return []
    return sorted(roots, key=FqElt.key)


# ---------------------------------------------------------------------------
# polynomials with coefficients in a field (lists of elements, low first)


def gpoly_trim(a: list) -> list:
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def gpoly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i < len(a) and i < len(b):
            out.append(a[i] + b[i])
        else:
            out.append(a[i] if i < len(a) else b[i])
    return gpoly_trim(out)


def gpoly_sub(a, b):
    return gpoly_add(a, [-c for c in b])


def gpoly_mul(a, b):
    if not a or not b:
        return []
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return gpoly_trim(out)


def gpoly_divmod(a, b):
    b = gpoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], gpoly_trim(a)
    inv = b[-1].inv()
    zero = b[0] * 0
    q = [zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c.is_zero():
            c = c * inv
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - c * b[j]
    return gpoly_trim(q), gpoly_trim(a[:db])


def gpoly_monic(a):
    if not a:
        return a
    inv = a[-1].inv()
    return [c * inv for c in a]


def gpoly_gcd(a, b):
    a, b = gpoly_trim(a), gpoly_trim(b)
    while b:
        a, b = b, gpoly_divmod(a, b)[1]
    return gpoly_monic(a)


def gpoly_powmod(base, e, mod):
    one = mod[0] * 0 + 1
    result = [one]
    base = gpoly_divmod(base, mod)[1]
    while e:
        if e & 1:
            result = gpoly_divmod(gpoly_mul(result, base), mod)[1]
        e >>= 1
        if e:
            base = gpoly_divmod(gpoly_mul(base, base), mod)[1]
    return result


def gpoly_eval(a, x):
    acc = x * 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _split_linear(h: list, F: FqField, rng: random.Random) -> list[FqElt]:
    """Roots of a monic square-free h over F that splits into linear factors."""
    h = gpoly_monic(h)
    n = len(h) - 1
    if n == 0:
        return []
    if n == 1:
        return [-h[0]]
    if n == 2 and F.p != 2:
        b, c = h[1], h[0]
        disc = b * b - c * 4
        r = all_eth_roots(disc, 2)
        if not r:
            raise ArithmeticError("quadratic does not split")
        half = F(2).inv()
        return [(-b + r[0]) * half, (-b - r[0]) * half]
    q = F.order
    while True:
        a = gpoly_trim([F.random_element(rng) for _ in range(n)])
        if len(a) <= 1:
            continue
        if F.p == 2:
            t = a
            acc = a
            for _ in range(F.k - 1):
                t = gpoly_divmod(gpoly_mul(t, t), h)[1]
                acc = gpoly_add(acc, t)
            g = gpoly_gcd(h, acc)
        else:
            b = gpoly_powmod(a, (q - 1) // 2, h)
            g = gpoly_gcd(h, gpoly_sub(b, [F.one]))
        if 1 < len(g) < len(h):
            return _split_linear(g, F, rng) + _split_linear(gpoly_divmod(h, g)[0], F, rng)


def roots_in_extension(f, target_degree: int, base: FqField | None = None,
                       seed: int | None = None) -> list[tuple[FqElt, int]]:
    """Roots of f (with multiplicity) lying in the degree-`target_degree`
    extension of f's coefficient field.

    f is a coefficient list (low first) of ints or elements of `base`.
    Over a prime base the work is: square-free decomposition, distinct-degree
    factorization up to the target degree, equal-degree splitting over F_p,
    then one root of each irreducible factor in the extension, whose
    Frobenius conjugates give the rest.  The output is sorted canonically and
    does not depend on the seed (default: the one set by `seeded`).
    """
    if base is None:
        base = next((c.field for c in f if isinstance(c, FqElt)), None)
        if base is None:
            raise ValueError("need a base field for integer coefficients")
    p = base.p
    rng = random.Random(_SEED[0] if seed is None else seed)
    target = make_field(p, base.k * target_degree)
    if base.k == 1:
        fi = fp_norm([c.raw if isinstance(c, FqElt) else c for c in f], p)
        if len(fi) == 0:
            raise ValueError("zero polynomial has every element as a root")
        fi = fp_monic(fi, p)
        roots: dict[FqElt, int] = {}
        for g, mult in fp_squarefree(fi, p):
            for prod, s in fp_ddf(g, p, target.k):
                if target.k % s:
                    continue
                for h in fp_edf(prod, s, p, rng):
                    for r in _irreducible_roots(h, s, target, rng):
                        roots[r] = roots.get(r, 0) + mult
        return sorted(roots.items(), key=lambda kv: kv[0].key())
    # extension base: embed coefficients and split generically
    emb = embed(base, target)
    fe = gpoly_monic(gpoly_trim([emb(base(c)) for c in f]))
    if not fe:
        raise ValueError("zero polynomial has every element as a root")
    x = [target.zero, target.one]
    xq = gpoly_powmod(x, target.order, fe)
    g = gpoly_gcd(fe, gpoly_sub(xq, x))
    out = []
    for r in _split_linear(g, target, rng):
        mult = 0
        cur = fe
        lin = [-r, target.one]
        while True:
            qt, rem = gpoly_divmod(cur, lin)
            if rem:
                break
            mult += 1
            cur = qt
        out.append((r, mult))
    return sorted(out, key=lambda kv: kv[0].key())


def _irreducible_roots(h, s: int, target: FqField, rng) -> list[FqElt]:
    """All s roots in `target` of an irreducible h of degree s over F_p."""
    coeffs = [target(int(c)) for c in h]
    if s == 1:
        return [-coeffs[0] / coeffs[1]]
    r = _split_linear(coeffs, target, rng)[0]
    conj = [r]
    for _ in range(s - 1):
        conj.append(conj[-1].frobenius())
    return conj


@lru_cache(maxsize=None)
def _embedding_image(p: int, a: int, b: int) -> FqElt:
    small, big = make_field(p, a), make_field(p, b)
    roots = roots_in_extension(list(small.defining), b, base=make_field(p, 1))
    return min((r for r, _ in roots), key=FqElt.key)


def embed(small: FqField, big: FqField):
    """Canonical embedding F_{p^a} -> F_{p^b}: X maps to the least root of the
    small field's defining polynomial in the big field."""
    if small.p != big.p or big.k % small.k:
        raise ValueError("no embedding between these fields")
    if small is big:
        return lambda x: x
    if small.k == 1:
        return lambda x: big(int(small(x).raw))
    img = _embedding_image(small.p, small.k, big.k)
    powers = [big.one]
    for _ in range(small.k - 1):
        powers.append(powers[-1] * img)

    def phi(x):
        x = small(x)
        acc = big.zero
        for c, w in zip(x.coeffs(), powers):
            if c:
                acc = acc + w * c
        return acc

    return phi


# ---------------------------------------------------------------------------
# discrete logarithms


class DlogTable:
    """Log/antilog tables for the canonical generator (fields up to 10^6)."""

    LIMIT = 10 ** 6

    def __init__(self, field: FqField):
        q = field.order
        if q > self.LIMIT:
            raise ValueError("field too large for a dense logarithm table")
        self.field = field
        log = np.full(q, -1, dtype=np.int64)
        exp = np.zeros(q - 1, dtype=np.int64)
        g = field.generator
        cur = field.one
        for j in range(q - 1):
            key = cur.key()
            log[key] = j
            exp[j] = key
            cur = cur * g
        self.log = log
        self.exp = exp

    def __call__(self, x: FqElt) -> int:
        if x.is_zero():
            raise ValueError("log of zero")
        return int(self.log[x.key()])


@lru_cache(maxsize=None)
def dlog_table(field: FqField) -> DlogTable:
    return DlogTable(field)


def class_mod(x: FqElt, n: int) -> int:
    """The class of x in F^x / F^{x n} as an exponent mod n (needs n | q-1):
    the k with x^((q-1)/n) = zeta_n^k."""
    F = x.field
    if (F.order - 1) % n:
        raise ValueError("mu_n must lie in the field")
    if x.is_zero():
        raise ValueError("class of zero")
    val = x ** ((F.order - 1) // n)
    zeta = F.root_of_unity(n)
    cur = F.one
    for k in range(n):
        if cur == val:
            return k
        cur = cur * zeta
    raise ArithmeticError("unreachable: power is not an n-th root of unity")


def prime_powers_up_to(bound: int) -> list[tuple[int, int, int]]:
    """(q, p, k) for prime powers q = p^k <= bound, increasing in q."""
    out = []
    for p in sympy.primerange(2, bound + 1):
        q, k = p, 1
        while q <= bound:
            out.append((q, p, k))
            q *= p
            k += 1
    return sorted(out)


