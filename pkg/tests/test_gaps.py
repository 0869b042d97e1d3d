from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from supertorsion.gaps import (MAX_ENUM_GENUS, cs_bound, cs_check, gap_weight, gap_weight_by_deficits,
                               hyperelliptic_total_weight, is_semigroup_complement,
                               min_weight_containing, semigroup_from_generators)


def test_semigroup_examples():
    S = semigroup_from_generators([2, 5])
    assert S.gaps == (1, 3) and S.genus == 2 and S.weight == 1
    S = semigroup_from_generators([1])
    assert S.gaps == () and S.weight == 0
    with pytest.raises(ValueError):
        semigroup_from_generators([4, 6])
    with pytest.raises(ValueError):
        semigroup_from_generators([0, 3])


PAIRS = [(n, d) for n in range(2, 15) for d in range(2, 15) if n + d <= 16 and gcd(n, d) == 1]


@pytest.mark.parametrize("n,d", PAIRS)
def test_two_generator_semigroups(n, d):
    S = semigroup_from_generators([n, d])
    g = (n - 1) * (d - 1) // 2
    assert S.genus == g
    if g:
        assert max(S.gaps) <= 2 * g - 1
        assert S.frobenius_number == n * d - n - d
    assert S.weight == gap_weight_by_deficits(S.gaps)


@given(st.lists(st.integers(2, 20), min_size=1, max_size=4).filter(lambda v: gcd(*v) == 1 if len(v) > 1 else v == [1]))
def test_sieve_against_brute_force(gens):
    S = semigroup_from_generators(gens)
    limit = max(S.gaps, default=0) + max(gens) + 1
    reach = {0}
    for k in range(1, limit + 1):
        if any(k - g in reach for g in gens):
            reach.add(k)
    assert S.gaps == tuple(k for k in range(1, limit + 1) if k not in reach)
    assert S.weight == gap_weight_by_deficits(S.gaps)
    assert is_semigroup_complement(S.gaps, limit)


def test_hyperelliptic_total_weight_genus_2():
    # six ramification points of y^2 = x^5 + 1, each with gap set {1, 3}
    w = semigroup_from_generators([2, 5]).weight
    assert 6 * w == hyperelliptic_total_weight(2) == 6


def test_weight_convention():
    assert gap_weight([1, 2, 3]) == 0  # ordinary point
    assert gap_weight([1, 3, 5]) == 3


def brute_min_weight(pair, g):
    best = None
    for gaps in combinations(range(1, 2 * g), g):
        if set(pair) & set(gaps):
            continue
        if is_semigroup_complement(gaps, 2 * g):
            w = gap_weight(gaps)
            best = w if best is None else min(best, w)
    return best


def test_min_weight_examples():
    assert min_weight_containing((4, 5), 4) >= 2
    assert min_weight_containing((4, 5), 4) == brute_min_weight((4, 5), 4) == 2
    assert min_weight_containing((2, 3), 2) is None  # no genus-2 semigroup contains 2 and 3
    with pytest.raises(ValueError):
        min_weight_containing((4, 5), MAX_ENUM_GENUS + 1)


@pytest.mark.parametrize("p", [5, 7])
def test_min_weight_lower_bound(p):
    # genus (p - 1)(q - 1)/2 with q = 3 is p - 1; the bound for q = 3 is 2
    assert min_weight_containing((p - 1, p), p - 1) >= 2


@pytest.mark.parametrize("pair,g", [((3, 4), 3), ((4, 5), 5), ((5, 6), 6), ((6, 7), 7)])
def test_min_weight_matches_brute(pair, g):
    assert min_weight_containing(pair, g) == brute_min_weight(pair, g)


def test_cs_check_examples():
    for d in range(2, 9):
        if gcd(3, d) == 1:
            assert cs_check(3, d, 2, 3) == (d <= 3)
    assert cs_check(3, 5, 2, 3) is False
    with pytest.raises(ValueError):
        cs_check(2, 5, 2, 2)


def test_cs_bound():
    assert cs_bound(0, 0, 2, 3) == 2
    assert cs_bound(1, 0, 2, 3) == 4
