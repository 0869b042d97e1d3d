import random
from math import gcd

import pytest
import sympy
from hypothesis import given, strategies as st

from supertorsion.ffield import (FqField, all_eth_roots, class_mod, dlog_table, embed,
                                 is_eth_power, make_field, prime_powers_up_to, roots_in_extension,
                                 seeded)

FIELDS = [(2, 1), (2, 4), (3, 2), (5, 3), (13, 1), (71, 1), (7, 2), (47, 2), (2, 8)]


def test_f71_generator_is_least_primitive_root():
    F = make_field(71)
    assert F.generator == F(7)
    assert sympy.primitive_root(71) == 7


@pytest.mark.parametrize("p,k", FIELDS)
def test_canonical_construction(p, k):
    F = make_field(p, k)
    assert F.order == p ** k
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(F.defining)), x, modulus=p)
    assert poly.is_irreducible
    g = F.generator
    for r in sympy.factorint(F.order - 1):
        assert g ** ((F.order - 1) // r) != F.one
    assert g ** (F.order - 1) == F.one


def test_make_field_rejects_composite():
    with pytest.raises(ValueError):
        make_field(15)


def test_big_extension_builds():
    F = make_field(71, 24)
    assert F.order == 71 ** 24
    a = F.gen_poly()
    assert a ** (F.order - 1) == F.one


def test_eth_power_examples():
    F = make_field(2, 4)
    fifth = {(y ** 5).key() for y in F.elements() if not y.is_zero()}
    for x in F.elements():
        if x.is_zero():
            continue
        assert is_eth_power(x, 5) == (x.key() in fifth) == (x ** 3 == F.one)
    assert is_eth_power(F.one, 3)
    assert not is_eth_power(F.generator, 3)
    with pytest.raises(ValueError):
        is_eth_power(F.zero, 5)


def test_eth_roots_examples():
    F = make_field(13)
    assert sorted(r.key() for r in all_eth_roots(F(3), 2)) == [4, 9]
    assert F(4) in all_eth_roots(F(9), 4)
    assert len(all_eth_roots(F.one, 6)) == 6
    assert all_eth_roots(F(2), 2) == []


@pytest.mark.parametrize("p,k", [(13, 1), (2, 4), (3, 3), (31, 1), (5, 2)])
@pytest.mark.parametrize("e", [1, 2, 3, 4, 5, 6, 7, 8, 12, 15])
def test_eth_roots_against_brute_force(p, k, e):
    F = make_field(p, k)
    for a in list(F.elements())[1:25]:
        want = sorted(y.key() for y in F.elements() if y ** e == a)
        got = all_eth_roots(a, e)
        assert sorted(y.key() for y in got) == want
        assert len(got) in (0, gcd(e, F.order - 1))


def test_roots_in_extension_examples():
    F13 = make_field(13)
    roots = roots_in_extension([-3, 0, 1], 1, base=F13)
    assert sorted(r.key() for r, _ in roots) == [4, 9]
    F2 = make_field(2)
    roots = roots_in_extension([1, 1, 1, 1, 1], 4, base=F2)
    assert len(roots) == 4 and all(r.field.order == 16 for r, _ in roots)
    assert roots_in_extension([1, 0, 1], 1, base=make_field(7)) == []


def test_roots_multiplicity():
    F = make_field(7)
    roots = roots_in_extension([-1, 3, -3, 1], 1, base=F)  # (x - 1)^3
    assert roots == [(F(1), 3)]


@pytest.mark.parametrize("p,t", [(2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2), (13, 1), (17, 1)])
@pytest.mark.parametrize("trial", range(3))
def test_roots_in_extension_exhaustive(p, t, trial):
    rng = random.Random(1000 * p + 10 * t + trial)
    F = make_field(p)
    deg = rng.randint(1, 6)
    f = [rng.randrange(p) for _ in range(deg)] + [1]
    big = make_field(p, t)
    emb = embed(F, big)
    want = {}
    for x in big.elements():
        v = big.zero
        for c in reversed(f):
            v = v * x + emb(F(c))
        if v.is_zero():
            want[x] = True
    got = roots_in_extension(f, t, base=F)
    assert {r for r, _ in got} == set(want)


def test_roots_independent_of_seed():
    F = make_field(71)
    f = [1, 0, 0, 1, 0, 0, 1]
    with seeded(1):
        a = roots_in_extension(f, 6, base=F)
    with seeded(99):
        b = roots_in_extension(f, 6, base=F)
    assert a == b


@pytest.mark.parametrize("p,k", [(2, 4), (3, 3), (7, 2), (47, 4)])
def test_frobenius_is_automorphism(p, k):
    F = make_field(p, k)
    rng = random.Random(p * k)
    for _ in range(20):
        a, b = F.random_element(rng), F.random_element(rng)
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()
        assert a.frobenius(k) == a


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_field_arithmetic_consistency(i, j):
    F = make_field(3, 5)
    a, b = F.from_key(i % F.order), F.from_key(j % F.order)
    assert a * b == b * a
    assert (a - b) + b == a
    if not b.is_zero():
        assert (a / b) * b == a


def test_embedding_is_homomorphism():
    small, big = make_field(5, 2), make_field(5, 6)
    phi = embed(small, big)
    rng = random.Random(5)
    for _ in range(20):
        a, b = small.random_element(rng), small.random_element(rng)
        assert phi(a * b) == phi(a) * phi(b)
        assert phi(a + b) == phi(a) + phi(b)


def test_dlog_and_class_mod():
    F = make_field(3, 4)
    tab = dlog_table(F)
    g = F.generator
    for k in (0, 1, 17, 79):
        assert tab(g ** k) == k
    assert class_mod(g ** 7, 4) == 3
    with pytest.raises(ValueError):
        class_mod(g, 7)


def test_prime_powers():
    got = [q for q, _, _ in prime_powers_up_to(30)]
    assert got == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]


def test_field_pickles_to_same_instance():
    import pickle
    F = make_field(7, 2)
    assert pickle.loads(pickle.dumps(F)) is F
    assert isinstance(F, FqField)
