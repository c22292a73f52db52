import pytest

from ncdq.derived_quotient import build_model, dq_cohomology_ring
from ncdq.dg import algebra_as_dga, cohomology
from ncdq.examples import a1_hypersurface_spec, dual_numbers_spec
from ncdq.periodicity import (PeriodicityError, adjoin_central, centrality_check, find_eta, localize_at_eta,
                              scan_periods, stable_ext_crosscheck, uniqueness_report)
from ncdq.quiver import build_algebra


@pytest.fixture(scope="module")
def a1():
    spec = a1_hypersurface_spec()
    A = build_algebra(spec)
    H = dq_cohomology_ring(build_model(A, spec.marked_vertices, 6), reps=False)
    return spec, A, H


def test_a1_eta(a1):
    spec, A, H = a1
    cands = find_eta(H, 1)
    assert [c.cell for c in cands] == [(-1, 2)]
    eta = cands[0]
    assert centrality_check(eta, H)["central"]
    loc = localize_at_eta(H, eta)
    assert set(loc.degree_dims(-6, 6).values()) == {1}
    assert loc.flatness()["ok"] and loc.check_periodic()["ok"]
    assert uniqueness_report(H, 1, cands)["verdict"].startswith("unique")


def test_a1_stable_ext_crosscheck(a1):
    spec, A, H = a1
    eta = find_eta(H, 1)[0]
    cc = stable_ext_crosscheck(A, spec.marked_vertices, H, eta, 5)
    assert cc["ok"]
    assert set(cc["ext"]) == {2, 3, 4, 5}
    assert all(r["ext"] == 1 for r in cc["ext"].values())


def test_find_eta_needs_depth(a1):
    _, _, H = a1
    with pytest.raises(PeriodicityError):
        find_eta(H, 4)
    assert set(scan_periods(H, 5)) == {1, 2, 3}


def synthetic(p, w_eta, K=6):
    base = algebra_as_dga(build_algebra(dual_numbers_spec()))
    return cohomology(adjoin_central(base, p, w_eta, K))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_synthetic_central_element_is_found(p):
    H = synthetic(p, 2)
    cands = find_eta(H, p)
    assert any(c.cell == (-p, 2) and c.coords == {0: 1} for c in cands)
    eta = next(c for c in cands if c.cell == (-p, 2) and c.coords == {0: 1})
    assert centrality_check(eta, H)["central"]
    loc = localize_at_eta(H, eta)
    assert loc.check_periodic()["ok"]
    # H[eta^-1] is (k[x]/x^2)[eta, eta^-1]: 2-dimensional in every degree divisible by p
    assert loc.degree_dims(-2 * p, 0) == {j: (2 if j % p == 0 else 0) for j in range(0, -2 * p - 1, -1)}


def test_odd_period_uses_plain_commutator():
    H = synthetic(1, 2)
    eta = find_eta(H, 1)[0]
    # eta * eta = eta * eta, but the graded commutator would need 2 eta^2 = 0
    assert not centrality_check(eta, H, graded=True)["central"]
    assert centrality_check(eta, H)["central"]


def test_no_candidate_in_wrong_degree():
    H = synthetic(2, 2)
    assert find_eta(H, 1) == []
