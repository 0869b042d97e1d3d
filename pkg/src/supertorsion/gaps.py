"""Numerical semigroups, Weierstrass gap weights and the Castelnuovo-Severi bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from itertools import combinations


@dataclass(frozen=True)
class Semigroup:
    generators: tuple[int, ...]
    gaps: tuple[int, ...]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    @property
    def weight(self) -> int:
        return gap_weight(self.gaps)

    @property
    def frobenius_number(self) -> int:
        return max(self.gaps) if self.gaps else -1

    def contains(self, k: int) -> bool:
        return k >= 0 and k not in self.gaps


def semigroup_from_generators(gens) -> Semigroup:
    gens = tuple(sorted(set(int(g) for g in gens)))
    if not gens or min(gens) < 1:
        raise ValueError("generators must be positive")
    if reduce(math.gcd, gens) != 1:
        raise ValueError("generators must be coprime (finite complement)")
    limit = gens[0] * gens[-1] + gens[-1]
    reach = [False] * (limit + 1)
    reach[0] = True
    for k in range(1, limit + 1):
        reach[k] = any(k >= g and reach[k - g] for g in gens)
    return Semigroup(gens, tuple(k for k in range(1, limit + 1) if not reach[k]))


def gap_weight(gaps) -> int:
    """sum_i (k_i - i) over the gaps k_1 < ... < k_g."""
    return sum(k - i for i, k in enumerate(sorted(gaps), start=1))


def gap_weight_by_deficits(gaps) -> int:
    """Same weight, counted as the number of positive non-gaps below each gap."""
    gs = set(gaps)
    return sum(sum(1 for s in range(1, k) if s not in gs) for k in gaps)


def is_semigroup_complement(gaps, bound: int) -> bool:
    """Whether the non-gaps (all of N outside `gaps`) are closed under addition."""
    gs = set(gaps)
    non = [s for s in range(1, bound + 1) if s not in gs]
    for i, a in enumerate(non):
        for b in non[i:]:
            if a + b in gs:
                return False
    return True


MAX_ENUM_GENUS = 8


def min_weight_containing(pair, g: int):
    """Least weight of a numerical semigroup of genus g containing both
    entries of `pair`, by enumerating gap sets inside [1, 2g - 1].

    Returns None when no semigroup of genus g contains the pair.
    """
    if g > MAX_ENUM_GENUS:
        raise ValueError(f"genus {g} is above the enumeration limit {MAX_ENUM_GENUS}")
    if g == 0:
        return 0
    a, b = pair
    pool = [k for k in range(1, 2 * g) if k != a and k != b]
    best = None
    for gaps in combinations(pool, g):
        if not is_semigroup_complement(gaps, 2 * g):
            continue
        # a, b must be non-gaps, which also forces all their sums to be non-gaps
        w = gap_weight(gaps)
        if best is None or w < best:
            best = w
    return best


def cs_check(n: int, d: int, d1: int, d2: int) -> bool:
    """Castelnuovo-Severi with genus-0 quotients of degrees d1, d2:
    g(C_{n,d}) = (n-1)(d-1)/2 <= (d1 - 1)(d2 - 1)."""
    if math.gcd(d1, d2) != 1:
        raise ValueError("the two map degrees must be coprime")
    return (n - 1) * (d - 1) // 2 <= (d1 - 1) * (d2 - 1)


def cs_bound(g1: int, g2: int, d1: int, d2: int) -> int:
    """The general bound d1 g1 + d2 g2 + (d1 - 1)(d2 - 1)."""
    return d1 * g1 + d2 * g2 + (d1 - 1) * (d2 - 1)


def hyperelliptic_total_weight(g: int) -> int:
    """g^3 - g, the total Weierstrass weight on a genus-g curve."""
    return g ** 3 - g
