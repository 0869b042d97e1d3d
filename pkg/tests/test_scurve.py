import random
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from supertorsion.ecell import WeierstrassCurve
from supertorsion.exactnum import CycField, GroupRingElt
from supertorsion.ffield import make_field, prime_powers_up_to
from supertorsion.scurve import (INF, Affine, CurveSpec, DivisorSpec, apply_auto, default_scan_primes,
                                 genus, is_principal, kills, ln_infty_basis, local_expansion,
                                 points_over, residual_elimination, residual_nth_power, residual_scan,
                                 superelliptic, vanishing_order, z_orbit)


def test_curve_validation():
    F = make_field(13)
    with pytest.raises(ValueError):
        CurveSpec(2, [1, 0, 0, 0, 1], F)  # gcd(2, 4) != 1
    with pytest.raises(ValueError):
        CurveSpec(2, [0, 0, 0, 1], F)  # x^3 is not squarefree
    with pytest.raises(ValueError):
        CurveSpec(2, [1, 0, 0, 2], F)  # not monic
    with pytest.raises(ValueError):
        superelliptic(13, 2, make_field(13))  # characteristic divides n
    assert superelliptic(4, 3, F).genus == 3


def test_ln_infty_basis_examples():
    assert ln_infty_basis(2, 5, 0) == [(0, 0)]
    assert ln_infty_basis(2, 5, 5) == [(0, 0), (1, 0), (2, 0), (0, 1)]


PAIRS = [(n, d) for n in range(2, 11) for d in range(2, 11) if n + d <= 12 and gcd(n, d) == 1]


@pytest.mark.parametrize("n,d", PAIRS)
def test_riemann_roch_and_gaps(n, d):
    g = genus(n, d)
    for N in range(0, 2 * g + 8):
        basis = ln_infty_basis(n, d, N)
        poles = [a * n + b * d for a, b in basis]
        assert len(set(poles)) == len(poles)
        if N >= 2 * g - 1:
            assert len(basis) == N - g + 1
    poles = {a * n + b * d for a, b in ln_infty_basis(n, d, 2 * g)}
    gaps = [k for k in range(1, 2 * g) if k not in poles]
    assert len(gaps) == g


def test_local_expansion_uniformizers():
    F = make_field(13)
    C = superelliptic(2, 3, F)
    P = Affine(F(2), F(3))
    ser = local_expansion(C, {(1, 0): 1, (0, 0): -2}, P, 4)
    assert ser == [F(0), F(1), F(0), F(0)]
    W = Affine(F(-1), F(0))
    assert vanishing_order(C, (0, 1), W, 6) == 1
    assert vanishing_order(C, {(1, 0): 1, (0, 0): 1}, W, 6) == 2


@pytest.mark.parametrize("n,d,p", [(3, 4, 13), (4, 3, 13), (2, 5, 11), (5, 2, 11), (3, 5, 31)])
def test_valuations_at_branch_points(n, d, p):
    F = make_field(p)
    C = superelliptic(n, d, F)
    for x in F.elements():
        if C.f_at(x).is_zero():
            W = Affine(x, F.zero)
            assert vanishing_order(C, (0, 1), W, n + 3) == 1
            assert vanishing_order(C, {(1, 0): 1, (0, 0): -x}, W, n + 3) == n


def test_local_expansion_series_satisfies_equation():
    F = make_field(31)
    C = superelliptic(3, 5, F)
    P = next(Q for Q in points_over(C) if not Q.y.is_zero())
    prec = 8
    ys = local_expansion(C, (0, 3), P, prec)
    fx = local_expansion(C, {(5, 0): 1, (0, 0): 1}, P, prec)
    assert ys == fx


def elliptic_points(p):
    F = make_field(p)
    C = superelliptic(2, 3, F)
    E = WeierstrassCurve(0, 1, F)
    return F, C, E, points_over(C)


@pytest.mark.parametrize("p", [7, 13, 19, 31])
def test_is_principal_matches_group_law(p):
    F, C, E, pts = elliptic_points(p)
    for P in pts:
        for N in range(1, 13):
            assert is_principal(C, DivisorSpec.n_times_point(P, N))[0] == E.order_divides(P, N)


def test_is_principal_witness_and_examples():
    F = make_field(13)
    C = superelliptic(4, 3, F)
    W = Affine(F(-1), F(0))
    ok, h = is_principal(C, DivisorSpec.n_times_point(W, 4))
    assert ok and set(h) == {(0, 0), (1, 0)}
    assert h[(0, 0)] == h[(1, 0)]  # a multiple of x + 1
    P = Affine(F(2), F(4))
    assert C.on_curve(P)
    assert not is_principal(C, DivisorSpec.n_times_point(P, 1))[0]
    assert is_principal(C, DivisorSpec.n_times_point(P, 12))[0]
    with pytest.raises(ValueError):
        is_principal(C, DivisorSpec([(P, 2)], -1))
    with pytest.raises(ValueError):
        is_principal(C, DivisorSpec([(INF, 1)], -1))


def test_witness_vanishes_to_stated_order():
    F = make_field(13)
    C = superelliptic(4, 3, F)
    P = Affine(F(2), F(4))
    ok, h = is_principal(C, DivisorSpec.n_times_point(P, 12))
    assert vanishing_order(C, h, P, 14) == 12


@pytest.mark.parametrize("p", [13, 37])
def test_principality_invariant_under_automorphisms(p):
    F = make_field(p)
    C = superelliptic(4, 3, F)
    rng = random.Random(p)
    pts = points_over(C)
    for P in rng.sample(pts, 6):
        for N in (3, 4, 6, 12):
            v = is_principal(C, DivisorSpec.n_times_point(P, N))[0]
            for a in range(12):
                Q = apply_auto(C, P, a)
                assert C.on_curve(Q)
                assert is_principal(C, DivisorSpec.n_times_point(Q, N))[0] == v


def test_merged_principal_divisors():
    F = make_field(13)
    C = superelliptic(4, 3, F)
    W = [Affine(x, F.zero) for x in F.elements() if C.f_at(x).is_zero()]
    D = DivisorSpec([(W[0], 4), (W[1], 4)], -8)
    assert is_principal(C, D)[0]


@pytest.mark.parametrize("p", [11, 13, 31])
def test_annihilators_form_a_group(p):
    F = make_field(p)
    C = superelliptic(2, 5, F) if (p - 1) % 10 == 0 else superelliptic(3, 4, F)
    rng = random.Random(7 * p)
    pts = points_over(C)
    for P in rng.sample(pts, min(4, len(pts))):
        kmin = next((k for k in range(1, 41) if is_principal(C, DivisorSpec.n_times_point(P, k))[0]), None)
        if kmin is None:
            continue
        for m in range(1, 6):
            assert is_principal(C, DivisorSpec.n_times_point(P, m * kmin))[0]
        for k in range(1, kmin):
            assert not is_principal(C, DivisorSpec.n_times_point(P, k))[0]


def test_orbits():
    F = make_field(13)
    C = superelliptic(4, 3, F)
    P = Affine(F(2), F(4))
    assert apply_auto(C, P, 0) == P
    assert len(z_orbit(C, P)) == 12
    W = Affine(F(-1), F(0))
    assert len(z_orbit(C, W)) == 3
    with pytest.raises(ValueError):
        apply_auto(superelliptic(4, 3, make_field(7)), Affine(make_field(7)(0), make_field(7)(1)), 1)


def test_kills_c43_probe():
    F = make_field(13)
    C = superelliptic(4, 3, F)
    P = Affine(F(2), F(4))
    zn, zd = GroupRingElt.zeta_n(4, 3), GroupRingElt.zeta_d(4, 3)
    assert kills(C, GroupRingElt.integer(4, 3, 12), P, 12)
    assert kills(C, (1 - zn) * (1 - zd) ** 2, P, 12)
    assert not kills(C, (1 - zd) ** 2, P, 12)
    assert not kills(C, (1 - zn) * (1 - zd), P, 12)
    with pytest.raises(ValueError):
        kills(C, 1 - zn, P, 5)


@given(st.lists(st.integers(-3, 3), min_size=12, max_size=12),
       st.lists(st.integers(-3, 3), min_size=12, max_size=12))
def test_kills_is_an_ideal(c1, c2):
    F = make_field(13)
    C = superelliptic(4, 3, F)
    P = Affine(F(2), F(4))
    r = (1 - GroupRingElt.zeta_n(4, 3)) * (1 - GroupRingElt.zeta_d(4, 3)) ** 2
    a, b = r * GroupRingElt(4, 3, c1), r * GroupRingElt(4, 3, c2)
    assert kills(C, a + b, P, 12)
    assert kills(C, a * GroupRingElt.zeta_power(4, 3, 5), P, 12)


def test_residual_examples():
    Q = CycField(1)
    assert residual_nth_power(3, 5, [1, 0, 0, 0, 0, 1], 0, Q) == [Q.one]
    for c in (1, 2, -3):
        assert residual_nth_power(3, 5, [1, 0, 0, 0, 0, 1], c, Q) is None
    assert residual_nth_power(2, 3, [0, 1, 0, 1], 1, Q) is None


def test_residual_quartic_root_admits_linear_v():
    # 3c^4 + 6c^2 - 1 has a root mod 11 (c = 5); then v has degree 1
    F = make_field(11)
    assert (3 * 5 ** 4 + 6 * 5 ** 2 - 1) % 11 == 0
    v = residual_nth_power(2, 3, [0, 1, 0, 1], 5, F)
    assert v is not None and len(v) == 2


@pytest.mark.parametrize("n,d", [(3, 5), (5, 3), (2, 7)])
def test_residual_elimination_forces_c_zero(n, d):
    c = sympy.Symbol("c")
    assert residual_elimination(n, d, [1] + [0] * (d - 1) + [1]) == [c]


def test_residual_elimination_quartic_and_empty():
    c = sympy.Symbol("c")
    (g,) = residual_elimination(2, 3, [0, 1, 0, 1])
    assert sympy.Poly(g, c).monic() == sympy.Poly(3 * c ** 4 + 6 * c ** 2 - 1, c).monic()
    assert residual_elimination(3, 4, [0, 1, 0, 0, 1]) == [1]


@pytest.mark.parametrize("n,d", [(3, 4), (2, 5)])
def test_residual_scans_find_nothing(n, d):
    f = [0, 1] + [0] * (d - 2) + [1]
    scan = residual_scan(n, d, f, default_scan_primes(n, d))
    assert len(scan) == 3 and not any(scan.values())


def test_points_over_brute_force():
    F = make_field(7)
    C = superelliptic(3, 2, F)
    want = {(x, y) for x in range(7) for y in range(7) if (y ** 3 - x ** 2 - 1) % 7 == 0}
    assert {(P.x.key(), P.y.key()) for P in points_over(C)} == want
