"""Multiplicative characters, Jacobi sums and the split level of
(1 - zeta_p)^k-torsion on y^p = x^q + 1.

The split level of a field F_Q (Q = 1 mod pq) is the largest k <= p - 1 for
which the (1 - zeta_p)^k-torsion is rational.  It is computed two ways:

* jacobi route: the (1 - zeta_p)-adic valuation of Frob - 1, where Frob acts
  as -chi_q(-1) J(chi_p, chi_q) on the relevant eigenspace;
* eta route: p-th power tests on the products
  eta_{i,j} = prod_s (1 - zeta_q^j zeta_p^s)^binom(s, i).

The two routes share nothing beyond the field itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .exactnum import CycElt, CycField, one_minus_zeta_divisions, rel_norm_to_subcyclotomic
from .ffield import (FqElt, FqField, dlog_table, embed, is_eth_power, make_field,
                     prime_powers_up_to)


@dataclass(frozen=True)
class CharacterSpec:
    """chi(g^k) = zeta_order^(index*k) for the canonical generator g."""

    field: FqField
    order: int
    index: int = 1

    def __post_init__(self):
        if (self.field.order - 1) % self.order:
            raise ValueError("character order must divide q - 1")

    def value_exponent(self, log: int) -> int:
        """Exponent e with chi(g^log) = zeta_order^e."""
        return (self.index * log) % self.order

    def power(self, a: int) -> "CharacterSpec":
        return CharacterSpec(self.field, self.order, (self.index * a) % self.order)

    def is_trivial(self) -> bool:
        return self.index % self.order == 0


def _one_minus_keys(field: FqField, keys: np.ndarray) -> np.ndarray:
    """Keys of 1 - a for the elements a with the given keys."""
    p, k = field.p, field.k
    out = np.zeros_like(keys)
    weight = 1
    for i in range(k):
        digit = (keys // weight) % p
        new = ((1 if i == 0 else 0) - digit) % p
        out += new * weight
        weight *= p
    return out


def jacobi_sum(chi1: CharacterSpec, chi2: CharacterSpec, k: int = 1) -> CycElt:
    """J_k(chi1, chi2) = sum over a in F_{Q^k} of chi1(N a) chi2(N(1 - a)),
    N the norm to F_Q, as an element of Q(zeta_M), M = lcm of the orders."""
    if chi1.field is not chi2.field:
        raise ValueError("characters on different fields")
    F = chi1.field
    M = chi1.order * chi2.order // math.gcd(chi1.order, chi2.order)
    cyc = CycField(M)
    s1, s2 = M // chi1.order, M // chi2.order
    if k == 1:
        tab = dlog_table(F)
        keys = np.arange(2, F.order, dtype=np.int64)
        other = _one_minus_keys(F, keys)
        mask = other != 0
        keys, other = keys[mask], other[mask]
        la, lb = tab.log[keys], tab.log[other]
        ex = (s1 * chi1.index * la + s2 * chi2.index * lb) % M
        counts = np.bincount(ex, minlength=M)
        return cyc.from_exponent_counts([int(c) for c in counts])
    # J_k: sum over the degree-k extension, characters composed with the norm
    big = make_field(F.p, F.k * k)
    emb = embed(F, big)
    tab_small = dlog_table(F)
    back = {}
    for v in range(1, F.order):
        e = F.from_key(v)
        back[emb(e).key()] = tab_small(e)
    expo = (big.order - 1) // (F.order - 1)
    counts = [0] * M
    for v in range(2, big.order):
        a = big.from_key(v)
        b = big.one - a
        if b.is_zero():
            continue
        la = back[(a ** expo).key()]
        lb = back[(b ** expo).key()]
        counts[(s1 * chi1.index * la + s2 * chi2.index * lb) % M] += 1
    return cyc.from_exponent_counts(counts)


def character_at_minus_one(chi: CharacterSpec) -> int:
    """chi(-1) as +1 or -1 (it is a square root of unity)."""
    F = chi.field
    if F.p == 2:
        return 1
    log = (F.order - 1) // 2
    e = chi.value_exponent(log)
    if e == 0:
        return 1
    if 2 * e == chi.order:
        return -1
    raise ArithmeticError("chi(-1) is not +-1")


# ---------------------------------------------------------------------------
# eta products


def eta_values(p: int, q: int, field: FqField, i_max: int, use_eta_prime: bool = False,
               j_range=None) -> dict[tuple[int, int], FqElt]:
    """eta_{i,j} (binomial exponents) or eta'_{i,j} (exponents s^i, 0^0 = 1)
    for 0 <= i <= i_max, using the canonical roots of unity of the field."""
    Q = field.order
    if (Q - 1) % (p * q):
        raise ValueError("need Q = 1 mod pq")
    zp, zq = field.root_of_unity(p), field.root_of_unity(q)
    js = list(j_range) if j_range is not None else list(range(1, q))
    zp_pows = [zp ** s for s in range(p)]
    out = {}
    for j in js:
        zqj = zq ** j
        us = [field.one - zqj * zp_pows[s] for s in range(p)]
        for i in range(i_max + 1):
            acc = field.one
            for s in range(p):
                e = s ** i if use_eta_prime else comb(s, i)  # 0 ** 0 == 1
                if e:
                    acc = acc * us[s] ** e
            out[(i, j)] = acc
    return out


# ---------------------------------------------------------------------------
# split level


@dataclass
class SplitLevelReport:
    p: int
    q: int
    field_order: int
    level_jacobi: int | None = None
    level_eta: int | None = None
    level_eta_full_range: int | None = None
    eta_witness: tuple[int, int] | None = None
    jacobi_sum: CycElt | None = dc_field(default=None, repr=False)

    @property
    def level(self) -> int | None:
        if self.level_jacobi is not None and self.level_eta is not None:
            if self.level_jacobi != self.level_eta:
                raise ArithmeticError(f"routes disagree: {self.level_jacobi} vs {self.level_eta}")
        return self.level_jacobi if self.level_jacobi is not None else self.level_eta

    def as_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "Q": self.field_order, "level": self.level,
                "level_jacobi": self.level_jacobi, "level_eta": self.level_eta,
                "eta_witness_i": None if self.eta_witness is None else self.eta_witness[0],
                "eta_witness_j": None if self.eta_witness is None else self.eta_witness[1]}


def frobenius_value(p: int, q: int, field: FqField) -> CycElt:
    """-chi_q(-1) J_1(chi_p, chi_q)."""
    chi_p, chi_q = CharacterSpec(field, p), CharacterSpec(field, q)
    J = jacobi_sum(chi_p, chi_q)
    return J * (-character_at_minus_one(chi_q))


def _level_jacobi(p, q, field, cap):
    frob = frobenius_value(p, q, field)
    return int(one_minus_zeta_divisions(frob - 1, p, cap)), frob


def _level_eta(p, q, field, cap, j_values):
    """Largest k <= cap such that eta_{i,j} is a p-th power for all i <= k-2,
    j in j_values; also the first failing (i, j)."""
    etas = eta_values(p, q, field, max(cap - 2, 0), j_range=j_values)
    for i in range(0, cap - 1):
        for j in j_values:
            if not is_eth_power(etas[(i, j)], p):
                return i + 1, (i, j)
    return cap, None


def split_level(p: int, q: int, field: FqField, route: str = "both", cap: int | None = None,
                check_full_range: bool = False) -> SplitLevelReport:
    """Split level of (1 - zeta_p)^k-torsion over `field` for y^p = x^q + 1."""
    if route not in ("jacobi", "eta", "both"):
        raise ValueError("route must be jacobi, eta or both")
    Q = field.order
    if (Q - 1) % (p * q):
        raise ValueError("need Q = 1 mod pq")
    if field.p in (p, q):
        raise ValueError("characteristic must not divide pq")
    cap = p - 1 if cap is None else cap
    rep = SplitLevelReport(p, q, Q)
    if route in ("jacobi", "both"):
        rep.level_jacobi, rep.jacobi_sum = _level_jacobi(p, q, field, cap)
    if route in ("eta", "both"):
        half = list(range(1, (q - 1) // 2 + 1))
        rep.level_eta, rep.eta_witness = _level_eta(p, q, field, cap, half)
        if check_full_range:
            rep.level_eta_full_range, _ = _level_eta(p, q, field, cap, list(range(1, q)))
    return rep


def admissible_field_orders(p: int, q: int, bound: int) -> list[int]:
    return [Q for Q, r, _ in prime_powers_up_to(bound)
            if (Q - 1) % (p * q) == 0 and r not in (p, q)]


def find_split_witness(p: int, q: int, target_level: int, search_bound: int,
                       route: str = "eta"):
    """First prime power Q = 1 mod pq (Q <= bound) with split level exactly
    target_level, as (Q, report); None if there is none."""
    for Q in admissible_field_orders(p, q, search_bound):
        r = sympy_factor_prime_power(Q)
        rep = split_level(p, q, make_field(*r), route=route)
        if rep.level == target_level:
            return Q, rep
    return None


def sympy_factor_prime_power(Q: int) -> tuple[int, int]:
    import sympy
    f = sympy.factorint(Q)
    if len(f) != 1:
        raise ValueError(f"{Q} is not a prime power")
    (p, k), = f.items()
    return p, k


# ---------------------------------------------------------------------------
# point count identity


@dataclass
class PointCountCheck:
    n: int
    d: int
    field_order: int
    brute_count: int
    jacobi_count: int
    norms_ok: bool

    @property
    def ok(self) -> bool:
        return self.brute_count == self.jacobi_count and self.norms_ok


def brute_point_count(n: int, d: int, field: FqField) -> int:
    """#{y^n = x^d + 1} over the field plus the points at infinity
    (one when gcd(n, d) = 1)."""
    tab = dlog_table(field)
    Q = field.order
    # number of y with y^n = c, indexed by key of c
    logs = np.arange(Q - 1, dtype=np.int64)
    ykeys = tab.exp[(logs * n) % (Q - 1)]
    ycount = np.bincount(ykeys, minlength=Q)
    ycount[0] += 1  # y = 0
    xkeys = np.concatenate([[0], tab.exp[(logs * d) % (Q - 1)]])  # x^d for x = 0 and x = g^l
    rhs = _add_one_keys(field, xkeys)
    affine = int(ycount[rhs].sum())
    infinity = math.gcd(n, d)
    return affine + infinity


def _add_one_keys(field: FqField, keys: np.ndarray) -> np.ndarray:
    p = field.p
    low = keys % p
    return keys - low + (low + 1) % p


def point_count_identity_check(n: int, d: int, field: FqField) -> PointCountCheck:
    """Compare the exhaustive count of y^n = x^d + 1 with
    Q + 1 + sum chi_d(-1) J(chi_n^a, chi_d^b) over nontrivial pairs, and check
    J * sigma_{-1}(J) = Q for every pair."""
    if math.gcd(n, d) != 1:
        raise ValueError("n, d must be coprime")
    Q = field.order
    if (Q - 1) % (n * d):
        raise ValueError("need Q = 1 mod nd")
    chi_n, chi_d = CharacterSpec(field, n), CharacterSpec(field, d)
    M = n * d
    cyc = CycField(M)
    total = cyc.zero
    norms_ok = True
    for a in range(1, n):
        for b in range(1, d):
            J = jacobi_sum(chi_n.power(a), chi_d.power(b))
            if J * J.galois(M - 1) != cyc(Q):
                norms_ok = False
            total = total + J * character_at_minus_one(chi_d.power(b))
    if not total.is_rational():
        raise ArithmeticError("trace sum is not rational")
    jac = Q + 1 + int(total.to_fraction())
    return PointCountCheck(n, d, Q, brute_point_count(n, d, field), jac, norms_ok)


# ---------------------------------------------------------------------------
# cyclotomic units


def cyclotomic_unit_U(i: int, b: int, p: int, simplified: bool | None = None) -> CycElt:
    """U_i(b) = prod_{s=1}^{p-1} (zeta^((p+1)(1-b)s/2) (1 - zeta^(bs))/(1 - zeta^s))^(s^i)
    in Q(zeta_p), for i >= 1 and b prime to p.

    When b^i != 1 mod p the root-of-unity factor contributes trivially and
    the simplified product (without it) is returned after a cross-check
    against the full definition.  The exponents reach (p-1)^i, so this is
    exact but only practical for small p and i.
    """
    if i < 1:
        raise ValueError("U_i is defined here for i >= 1")
    if b % p == 0:
        raise ValueError("b must be prime to p")
    K = CycField(p)
    z = K.zeta

    def product(with_zeta: bool) -> CycElt:
        acc = K.one
        for s in range(1, p):
            base = (K.one - z(b * s)) / (K.one - z(s))
            if with_zeta:
                base = base * z(((p + 1) * (1 - b) * s // 2) % p)
            acc = acc * base ** (s ** i)
        return acc

    full = product(True)
    if pow(b, i, p) != 1:
        simple = product(False)
        if simple != full:
            raise ArithmeticError("root-of-unity factor did not cancel")
        return simple
    return full


def cyclotomic_unit_U_nu(i: int, p: int) -> CycElt:
    """U_i = U_i(nu) for nu the least primitive root mod p."""
    return cyclotomic_unit_U(i, least_primitive_root(p), p)


def least_primitive_root(p: int) -> int:
    import sympy
    return int(sympy.primitive_root(p))


def probable_global_pth_power(x: CycElt, p: int, trials: int = 20, start: int = 2) -> bool:
    """Heuristic: x is a p-th power modulo `trials` split primes r = 1 mod lcm(p, m).

    A False answer is a proof that x is not a p-th power in Q(zeta_m); True
    only means every probe agreed.  Primes dividing the norm of x are
    skipped.
    """
    import sympy
    K = x.field
    m = K.m
    L = p * m // math.gcd(p, m)
    if not x.is_integral():
        raise ValueError("element must be integral")
    if x.is_zero():
        raise ValueError("zero has no p-th power class")
    done = 0
    r = start
    while done < trials:
        r = int(sympy.nextprime(r))
        if (r - 1) % L:
            continue
        F = make_field(r)
        w = F.root_of_unity(m)
        acc = F.zero
        wp = F.one
        for c in x.num:
            acc = acc + wp * c
            wp = wp * w
        if acc.is_zero():
            continue
        if not is_eth_power(acc, p):
            return False
        done += 1
    return True


def eta_prime_norm(i: int, j: int, p: int, q: int) -> CycElt:
    """N_{Q(zeta_pq)/Q(zeta_p)}(eta'_{i,j}) computed in characteristic 0."""
    K = CycField(p * q)
    zq, zp = K.zeta(p), K.zeta(q)
    acc = K.one
    for s in range(p):
        e = s ** i
        if e:
            acc = acc * (K.one - zq ** j * zp ** s) ** e
    return rel_norm_to_subcyclotomic(acc, p)


__all__ = [
    "CharacterSpec", "jacobi_sum", "character_at_minus_one", "eta_values", "SplitLevelReport",
    "split_level", "find_split_witness", "frobenius_value", "point_count_identity_check",
    "brute_point_count", "cyclotomic_unit_U", "cyclotomic_unit_U_nu", "probable_global_pth_power",
    "eta_prime_norm", "admissible_field_orders", "least_primitive_root",
]
