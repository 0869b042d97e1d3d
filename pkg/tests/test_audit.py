import pytest

from supertorsion.audit import (PLANS, CandidateConstructionError, candidates, certify_c25_exception,
                                c43_function, find_c25_prime, generic_d2_points, get_plan,
                                orbit_partition, run_audit)
from supertorsion.ffield import all_eth_roots, make_field
from supertorsion.scurve import DivisorSpec, is_principal, superelliptic, vanishing_order


def test_plans_are_well_formed():
    for plan in PLANS.values():
        assert plan.ell % plan.n and plan.ell % plan.d
        assert plan.N % 2 == 0
    assert get_plan("C45").N == 3 * 4 * 5
    assert get_plan("C29", ell=73).ell == 73
    with pytest.raises(KeyError):
        get_plan("nope")


@pytest.mark.parametrize("name,size", [("C2_25", 50), ("C2_15", 30), ("C45", 20)])
def test_case_b_candidates(name, size):
    plan = get_plan(name)
    cover, base, cands = candidates(plan)
    assert len(base) == 10
    assert len(cands) <= size
    assert all(cover.on_curve(Q) for Q in cands)
    assert all(Q.x.field.k == 1 for Q in cands)


@pytest.mark.parametrize("name", ["C2_25", "C2_15", "C45"])
def test_case_b_audits(name):
    rep = run_audit(get_plan(name))
    assert rep.offenders == [] and rep.matches_expectation
    assert rep.tested == len(rep.candidates)  # small sets are tested one by one


def test_missing_radicals_fail_loudly():
    with pytest.raises(CandidateConstructionError):
        candidates(get_plan("C2_25", ell=61))


def test_orbit_partition_covers_candidates():
    plan = get_plan("G34")
    cover, _, cands = candidates(plan)
    orbits, closed = orbit_partition(cover, cands)
    assert closed
    flat = [Q for orb in orbits for Q in orb]
    assert sorted(flat, key=lambda Q: Q.key()) == cands


def test_orbit_verdicts_constant():
    # every member of an orbit gets the same verdict as its representative
    plan = get_plan("G34")
    cover, _, cands = candidates(plan)
    orbits, _ = orbit_partition(cover, cands)
    for orb in orbits[:6]:
        vs = {is_principal(cover, DivisorSpec.n_times_point(Q, plan.N))[0] for Q in orb}
        assert len(vs) == 1


def test_report_json_schema():
    rep = run_audit(get_plan("C45"), seed=5)
    j = rep.to_json()
    for key in ("plan", "n", "d", "ell", "N", "candidates", "offenders", "degrees", "seed", "runtime_ms"):
        assert key in j
    assert j["seed"] == 5 and j["field"]["p"] == 54001


def test_c43_function_shape():
    K, s3, F = c43_function()
    assert s3 * s3 == K(3)
    assert max(4 * a + 3 * b for a, b in F) == 12
    C = superelliptic(4, 3, K)
    assert vanishing_order(C, F, C.point(K(2), s3), 14) == 12


def test_c25_prime_search():
    ell = find_c25_prime()
    F = make_field(ell)
    assert (ell - 1) % 10 == 0 and all_eth_roots(F(4), 5) and all_eth_roots(F(5), 2)
    assert find_c25_prime(start=ell + 1) > ell
    assert certify_c25_exception(54001).ok


def test_generic_d2_points():
    F = make_field(431)  # mu_5, sqrt5 and the fifth roots of 9 and 9/4
    pts = generic_d2_points(5, 1, 4, F)
    assert len(pts) == 15
    assert all(P.order is not None for P in pts)
    mids = [P for P in pts if P.family == "midpoint"]
    assert len(mids) == 5
    # y - y_P has a double zero at a midpoint point; the sqrt5 family has order 5
    assert {P.order for P in mids} == {2}
    assert {P.order for P in pts if P.family == "n=5"} == {5}
    with pytest.raises(ValueError):
        generic_d2_points(4, 1, 4, F)
