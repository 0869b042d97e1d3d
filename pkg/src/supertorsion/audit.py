"""Covering audits: pull back base torsion through a cover and test every
candidate point Q for N [Q - inf] = 0.

A plan fixes the cover y^n = f(x), the base curve, the map
phi(x, y) = (x^ex, y^ey), the prime ell, the extension degree that must
contain all candidates, N, and the known torsion S0 on the base that is
excluded.  An offender is a candidate that turns out to be N-torsion.

Candidates are grouped into orbits of the automorphisms (x, y) ->
(zeta x, zeta' y) that preserve the cover and of Frobenius.  Both preserve
principality of N Q - N inf, so one representative per orbit decides the
orbit; a deterministic sample of non-representatives is also tested
directly.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .ecell import WeierstrassCurve, to_weierstrass, torsion_points
from .exactnum import CycField, GroupRingElt
from .ffield import DEFAULT_SEED, FqField, all_eth_roots, make_field, roots_in_extension, seeded
from .scurve import (INF, Affine, CurveSpec, DivisorSpec, is_principal, kills, superelliptic,
                     vanishing_order, z_orbit)


@dataclass
class AuditPlan:
    name: str
    n: int
    d: int
    f: tuple                    # cover polynomial, integer coefficients low first
    ell: int
    N: int
    ext_degree: int
    base_n: int
    base_f: tuple               # base curve y^base_n = base_f(x)
    ex: int                     # phi(x, y) = (x^ex, y^ey)
    ey: int
    base_points: str            # "torsion" (base E[N] minus S0) or "t25"
    s0: tuple = ()              # generators of S0 on the base, as ("orbit", x, y) / ("fixed",)
    expected_offenders: int = 0
    note: str = ""
    confirm_torsion: tuple = ()  # base points (x, y) whose orbit preimages must BE N-torsion


def _cnd(n, d, const=1):
    return tuple([const] + [0] * (d - 1) + [1])


PLANS: dict[str, AuditPlan] = {
    "C29": AuditPlan("C29", 2, 9, _cnd(2, 9), 71, 18, 24, 2, (1, 0, 0, 1), 3, 1, "torsion",
                     (("orbit", 0, 1), ("orbit", -1, 0))),
    "C83": AuditPlan("C83", 8, 3, _cnd(8, 3), 71, 24, 24, 2, (1, 0, 0, 1), 1, 4, "torsion",
                     (("orbit", 0, 1), ("orbit", -1, 0))),
    "C43": AuditPlan("C43", 4, 3, _cnd(4, 3), 71, 12, 24, 2, (1, 0, 0, 1), 1, 2, "torsion",
                     (("orbit", 0, 1), ("orbit", -1, 0), ("orbit", 2, 3)),
                     confirm_torsion=((2, 3),)),
    "C43-control": AuditPlan("C43-control", 4, 3, _cnd(4, 3), 71, 12, 24, 2, (1, 0, 0, 1), 1, 2,
                             "torsion", (("orbit", 0, 1), ("orbit", -1, 0)),
                             expected_offenders=12,
                             note="S0 without the orbit of (2, 3): the exceptional 12 points must reappear"),
    "C2_15": AuditPlan("C2_15", 2, 15, _cnd(2, 15), 54001, 30, 1, 2, _cnd(2, 5), 3, 1, "t25"),
    "C2_25": AuditPlan("C2_25", 2, 25, _cnd(2, 25), 54001, 50, 1, 2, _cnd(2, 5), 5, 1, "t25"),
    "C45": AuditPlan("C45", 4, 5, _cnd(4, 5), 54001, 60, 1, 2, _cnd(2, 5), 1, 2, "t25"),
    "G34": AuditPlan("G34", 3, 4, (1, 0, 1, 0, 1), 47, 12, 4, 3, (1, 1, 1), 2, 1, "torsion",
                     (("fixed",),), note="y^3 = x^4 + x^2 + 1 over y^3 = x^2 + x + 1"),
    "G43a": AuditPlan("G43a", 4, 3, (1, 1, 0, 1), 47, 12, 4, 2, (1, 1, 0, 1), 1, 2, "torsion",
                      (("fixed",),), note="y^4 = x^3 + x + 1 over y^2 = x^3 + x + 1"),
    "G43b": AuditPlan("G43b", 4, 3, (1, 0, 1, 1), 47, 12, 4, 2, (1, 0, 1, 1), 1, 2, "torsion",
                      (("fixed",),), note="y^4 = x^3 + x^2 + 1 over y^2 = x^3 + x^2 + 1"),
    "G43b-deg16": AuditPlan("G43b-deg16", 4, 3, (1, 0, 1, 1), 47, 12, 16, 2, (1, 0, 1, 1), 1, 2,
                            "torsion", (("fixed",),),
                            note="as G43b, in the degree-16 field that holds all candidates"),
}

PLAN_BY_ND = {(2, 9): "C29", (8, 3): "C83", (4, 3): "C43", (2, 15): "C2_15", (2, 25): "C2_25",
              (4, 5): "C45"}


def get_plan(name: str, **overrides) -> AuditPlan:
    if name not in PLANS:
        raise KeyError(f"unknown plan {name!r}; known: {', '.join(PLANS)}")
    plan = PLANS[name]
    if overrides:
        plan = AuditPlan(**{**plan.__dict__, **{k: v for k, v in overrides.items() if v is not None}})
    return plan


class CandidateConstructionError(ValueError):
    """A required root or torsion point is missing from the chosen field."""


# ---------------------------------------------------------------------------
# base points


def _t25_points(field) -> list:
    """The Z-orbit of (4^(1/5), 5^(1/2)) on y^2 = x^5 + 1 (the exceptional torsion)."""
    base = superelliptic(2, 5, field)
    xs = all_eth_roots(field(4), 5)
    ys = all_eth_roots(field(5), 2)
    if not xs or not ys:
        raise CandidateConstructionError("4^(1/5) or 5^(1/2) is not in the field")
    P = base.point(xs[0], ys[0])
    return base, z_orbit(base, P)


def _s0_points(plan: AuditPlan, base: CurveSpec) -> set:
    out = {INF}
    F = base.field
    for item in plan.s0:
        if item[0] == "fixed":
            # fixed points of y -> zeta y on the base: y = 0 and infinity
            continue
        _, x, y = item
        P = base.point(F(x), F(y))
        out.update(z_orbit(base, P) if base.is_cyclic_model() else [P])
    if any(item[0] == "fixed" for item in plan.s0):
        out.update(Affine(x, F.zero) for x in _roots_of(base))
    return out


def _roots_of(curve: CurveSpec) -> list:
    """Roots of the base polynomial in the working field."""
    F = curve.field
    found = roots_in_extension(_prime_coeffs(curve.f), F.k, base=make_field(F.p))
    return [r for r, _ in found]


def _prime_coeffs(f) -> list[int]:
    out = []
    for c in f:
        co = c.coeffs()
        if any(co[1:]):
            raise ValueError("base curve must be defined over the prime field")
        out.append(co[0])
    return out


def base_torsion(plan: AuditPlan, field: FqField):
    """(base curve over `field`, base points to pull back).

    For genus-1 bases the N-torsion is enumerated on the Weierstrass model
    over F_ell, with coordinates in `field`, and carried back to the plane
    model; S0 is removed.
    """
    if plan.base_points == "t25":
        return _t25_points(field)
    base = CurveSpec(plan.base_n, [field(c) for c in plan.base_f], field)
    wmap = to_weierstrass(base)
    F0 = make_field(plan.ell)
    E0 = WeierstrassCurve(F0(_prime_coeffs([wmap.target.a])[0]),
                          F0(_prime_coeffs([wmap.target.b])[0]), F0)
    try:
        pts = torsion_points(E0, plan.N, field.k)
    except ValueError as exc:
        raise CandidateConstructionError(str(exc)) from exc
    s0 = _s0_points(plan, base)
    out = []
    for P in pts:
        Q = wmap.inverse(P)
        if not base.on_curve(Q):
            raise ArithmeticError("Weierstrass map sent a torsion point off the base curve")
        if Q not in s0:
            out.append(Q)
    return base, out


# ---------------------------------------------------------------------------
# candidates and orbits


def candidates(plan: AuditPlan, field: FqField | None = None):
    """(cover curve, base points used, candidate points) for the plan."""
    field = field or make_field(plan.ell, plan.ext_degree)
    cover = CurveSpec(plan.n, [field(c) for c in plan.f], field)
    base, pts = base_torsion(plan, field)
    out: dict = {}
    for P in pts:
        if P is INF:
            continue
        xs = all_eth_roots(P.x, plan.ex) if not P.x.is_zero() else [field.zero]
        ys = all_eth_roots(P.y, plan.ey) if not P.y.is_zero() else [field.zero]
        if (not P.x.is_zero() and len(xs) != plan.ex) or (not P.y.is_zero() and len(ys) != plan.ey):
            raise CandidateConstructionError(
                f"preimages of {P} are not all in F_{field.p}^{field.k}")
        for x in xs:
            for y in ys:
                Q = Affine(x, y)
                if not cover.on_curve(Q):
                    raise ArithmeticError("preimage is not on the cover")
                out[Q] = None
    cands = sorted(out, key=lambda Q: Q.key())
    return cover, pts, cands


def _orbit_generators(cover: CurveSpec) -> list[Callable]:
    F = cover.field
    gens = []
    q1 = F.order - 1
    if q1 % cover.n == 0:
        zn = F.root_of_unity(cover.n)
        gens.append(lambda P, z=zn: Affine(P.x, P.y * z))
    ex = cover.x_symmetry_order()
    if ex > 1 and q1 % ex == 0:
        zx = F.root_of_unity(ex)
        gens.append(lambda P, z=zx: Affine(P.x * z, P.y))
    if F.k > 1:
        gens.append(lambda P: Affine(P.x.frobenius(), P.y.frobenius()))
    return gens


def orbit_partition(cover: CurveSpec, cands: list) -> tuple[list[list], bool]:
    """Orbits of the candidate set under scalings and Frobenius.

    Returns (orbits, closed).  If some generator leaves the candidate set
    the partition falls back to singletons and closed is False.
    """
    index = {Q: i for i, Q in enumerate(cands)}
    gens = _orbit_generators(cover)
    seen = [False] * len(cands)
    orbits = []
    for i, Q in enumerate(cands):
        if seen[i]:
            continue
        orb = [Q]
        seen[i] = True
        stack = [Q]
        while stack:
            R = stack.pop()
            for g in gens:
                S = g(R)
                j = index.get(S)
                if j is None:
                    return [[Q] for Q in cands], False
                if not seen[j]:
                    seen[j] = True
                    orb.append(S)
                    stack.append(S)
        orbits.append(sorted(orb, key=lambda P: P.key()))
    return orbits, True


# ---------------------------------------------------------------------------
# the audit


@dataclass
class AuditReport:
    plan: AuditPlan
    field: FqField
    candidates: list
    verdicts: dict
    offenders: list
    orbits: int
    closed: bool
    tested: int
    spot_checks: int
    spot_checks_agree: bool
    degrees: dict
    seed: int
    runtime_ms: int
    base_points: int = 0
    extra: dict = dc_field(default_factory=dict)

    @property
    def matches_expectation(self) -> bool:
        confirmed = self.extra.get("confirmed_torsion")
        return (len(self.offenders) == self.plan.expected_offenders and self.spot_checks_agree
                and (confirmed is None or confirmed["all_torsion"]))

    def to_json(self) -> dict:
        from .report import point_json
        return {
            "plan": self.plan.name,
            "n": self.plan.n,
            "d": self.plan.d,
            "ell": self.plan.ell,
            "N": self.plan.N,
            "candidates": len(self.candidates),
            "offenders": [point_json(P) for P in self.offenders],
            "degrees": {str(k): v for k, v in sorted(self.degrees.items())},
            "seed": self.seed,
            "runtime_ms": self.runtime_ms,
            "field": self.field.describe(),
            "base_points": self.base_points,
            "orbits": self.orbits,
            "orbit_closed": self.closed,
            "tested_directly": self.tested,
            "spot_checks": self.spot_checks,
            "spot_checks_agree": self.spot_checks_agree,
            "expected_offenders": self.plan.expected_offenders,
            "match": self.matches_expectation,
            **self.extra,
        }


EXHAUSTIVE_BELOW = 100


def run_audit(plan: AuditPlan, seed: int = DEFAULT_SEED, exhaustive: bool | None = None,
              spot_checks: int = 4) -> AuditReport:
    """Run the plan; every candidate gets a verdict (N-torsion or not).

    exhaustive=None tests every candidate directly when there are at most
    EXHAUSTIVE_BELOW of them and uses orbit representatives otherwise.
    """
    t0 = time.perf_counter()
    field = make_field(plan.ell, plan.ext_degree)
    with seeded(seed):
        cover, base_pts, cands = candidates(plan, field)
    if exhaustive is None:
        exhaustive = len(cands) <= EXHAUSTIVE_BELOW
    if exhaustive:
        orbits, closed = [[Q] for Q in cands], True
    else:
        orbits, closed = orbit_partition(cover, cands)

    def test(Q):
        return is_principal(cover, DivisorSpec.n_times_point(Q, plan.N))[0]

    verdicts = {}
    tested = 0
    for orb in orbits:
        v = test(orb[0])
        tested += 1
        for Q in orb:
            verdicts[Q] = v
    # direct checks of non-representatives, chosen without randomness
    agree = True
    done = 0
    for orb in orbits:
        if done >= spot_checks:
            break
        if len(orb) > 1:
            Q = orb[len(orb) // 2]
            if test(Q) != verdicts[Q]:
                agree = False
            done += 1
    offenders = [Q for Q in cands if verdicts[Q]]
    degrees = Counter(max(Q.x.degree(), Q.y.degree()) if field.k > 1 else 1 for Q in cands)
    extra = {}
    if plan.confirm_torsion:
        pre = excluded_preimages(plan, cover)
        extra["confirmed_torsion"] = {"points": len(pre),
                                      "all_torsion": bool(pre) and all(test(Q) for Q in pre)}
    return AuditReport(plan, field, cands, verdicts, offenders, len(orbits), closed, tested, done,
                       agree, dict(degrees), seed, int((time.perf_counter() - t0) * 1000),
                       base_points=len(base_pts), extra=extra)


def excluded_preimages(plan: AuditPlan, cover: CurveSpec) -> list:
    """Cover preimages of the Z-orbits of plan.confirm_torsion on the base."""
    F = cover.field
    base = CurveSpec(plan.base_n, [F(c) for c in plan.base_f], F)
    out = set()
    for x, y in plan.confirm_torsion:
        for P in z_orbit(base, base.point(F(x), F(y))):
            for qx in all_eth_roots(P.x, plan.ex):
                for qy in all_eth_roots(P.y, plan.ey):
                    out.add(Affine(qx, qy))
    return sorted(out, key=lambda Q: Q.key())


# ---------------------------------------------------------------------------
# certificates


@dataclass
class CertificateReport:
    name: str
    checks: dict
    details: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def c43_function():
    """The function F on y^4 = x^3 + 1 over Q(zeta_12) with div F = 12 (2, sqrt3) - 12 inf.

    sqrt3 = zeta_12 + zeta_12^-1.
    """
    K = CycField(12)
    z = K.zeta()
    s3 = z + z ** 11
    F = {(2, 0): K(12), (2, 1): -4 * s3, (1, 2): K(18), (1, 1): -8 * s3, (1, 0): K(-6),
         (0, 4): K(1), (0, 3): -12 * s3, (0, 2): K(18), (0, 1): -4 * s3, (0, 0): K(9)}
    return K, s3, F


def certify_c43_exception(probe_primes=(13, 37)) -> CertificateReport:
    """Exact certificate and finite-field probes for the (2, sqrt3) orbit on y^4 = x^3 + 1."""
    K, s3, Fn = c43_function()
    curve = superelliptic(4, 3, K)
    P = curve.point(K(2), s3)
    checks = {}
    details = {}
    checks["sqrt3_squared"] = s3 * s3 == K(3)
    pole = max(4 * a + 3 * b for (a, b) in Fn)
    checks["F_in_L(12inf)"] = pole == 12
    order = vanishing_order(curve, Fn, P, 14)
    details["vanishing_order"] = order
    checks["F_vanishes_to_order_12"] = order == 12
    checks["12P_principal_exact"] = is_principal(curve, DivisorSpec.n_times_point(P, 12))[0]
    zn, zd = GroupRingElt.zeta_n(4, 3), GroupRingElt.zeta_d(4, 3)
    probes = {"(1-z4)(1-z3)^2": ((1 - zn) * (1 - zd) ** 2, True),
              "(1-z3)^2": ((1 - zd) ** 2, False),
              "(1-z4)(1-z3)": ((1 - zn) * (1 - zd), False)}
    for ell in probe_primes:
        Fl = make_field(ell)
        cl = superelliptic(4, 3, Fl)
        roots = all_eth_roots(Fl(3), 2)
        if not roots or (ell - 1) % 12:
            raise ValueError(f"{ell} does not contain sqrt3 and mu_12")
        Pl = cl.point(Fl(2), roots[0])
        for label, (r, want) in probes.items():
            got = kills(cl, r, Pl, 12)
            details[f"F_{ell}:{label}"] = got
            checks[f"F_{ell}:{label}=={want}"] = got == want
    return CertificateReport("C43", checks, details)


def find_c25_prime(start: int = 11, limit: int = 10 ** 6) -> int:
    """Least prime ell >= start with mu_10, 4^(1/5) and 5^(1/2) in F_ell."""
    import sympy
    ell = start - 1
    while ell < limit:
        ell = int(sympy.nextprime(ell))
        if (ell - 1) % 10:
            continue
        F = make_field(ell)
        if all_eth_roots(F(4), 5) and all_eth_roots(F(5), 2):
            return ell
    raise ValueError("no prime found")


def certify_c25_exception(ell: int | None = None) -> CertificateReport:
    """Kernel probes for the exceptional orbit on y^2 = x^5 + 1 at a split prime."""
    ell = ell or find_c25_prime()
    F = make_field(ell)
    base, orbit = _t25_points(F)
    P = orbit[0]
    checks = {"orbit_size_10": len(orbit) == 10, "10P_principal": is_principal(
        base, DivisorSpec.n_times_point(P, 10))[0]}
    zd = GroupRingElt.zeta_d(2, 5)
    probes = {"(1-z5)^3": ((1 - zd) ** 3, True), "(1-z5)^2": ((1 - zd) ** 2, False),
              "5": (GroupRingElt.integer(2, 5, 5), True)}
    details = {"ell": ell}
    for label, (r, want) in probes.items():
        got = kills(base, r, P, 10)
        details[label] = got
        checks[f"{label}=={want}"] = got == want
    return CertificateReport("C25", checks, details)


# ---------------------------------------------------------------------------
# the generic degree-2 family


@dataclass
class D2Point:
    point: Affine
    family: str
    order: int | None


def generic_d2_points(n: int, a1, a2, field, max_order: int | None = None) -> list[D2Point]:
    """Listed torsion points of y^n = (x - a1)(x - a2), n odd, with their
    orders found by kills-style principality probes in the given field."""
    if n % 2 == 0:
        raise ValueError("n must be odd")
    F = field
    a1, a2 = F(a1), F(a2)
    curve = CurveSpec(n, _monic_quadratic(a1, a2, F), F)
    half = F(2).inv()
    pts = []
    mid = (a1 + a2) * half
    base = ((a1 - a2) * half) ** 2
    radicals = all_eth_roots(base, n)
    if not radicals:
        raise CandidateConstructionError("the n-th root of ((a1 - a2)/2)^2 is missing")
    zeta = F.root_of_unity(n)
    for i in range(n):
        pts.append((Affine(mid, -(zeta ** i) * radicals[0]), "midpoint"))
    if n == 5:
        r5 = all_eth_roots(F(5), 2)
        rad = all_eth_roots((a2 - a1) ** 2, 5)
        if not r5 or not rad:
            raise CandidateConstructionError("sqrt5 or the fifth root is missing")
        for sign in (1, -1):
            x = ((a2 - a1) * r5[0] * sign + a1 + a2) * half
            for i in range(5):
                pts.append((Affine(x, zeta ** i * rad[0]), "n=5"))
    bound = max_order or 4 * n
    out = []
    for P, fam in pts:
        if not curve.on_curve(P):
            raise ArithmeticError("listed point is not on the curve")
        order = None
        for M in range(1, bound + 1):
            if is_principal(curve, DivisorSpec.n_times_point(P, M))[0]:
                order = M
                break
        out.append(D2Point(P, fam, order))
    return out


def _monic_quadratic(a1, a2, F):
    return [a1 * a2, -(a1 + a2), F.one]


__all__ = ["AuditPlan", "PLANS", "PLAN_BY_ND", "get_plan", "candidates", "orbit_partition",
           "run_audit", "AuditReport", "certify_c43_exception", "certify_c25_exception",
           "find_c25_prime", "generic_d2_points", "CandidateConstructionError", "c43_function",
           "base_torsion"]
