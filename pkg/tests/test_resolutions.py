import pytest

from ncdq.examples import a1_hypersurface_spec, dual_numbers_spec, marked_relations_spec, square_zero_plane_spec
from ncdq.linalg import QQ
from ncdq.quiver import Arrow, Quiver, QuiverSpec, Relation, Truncation, build_algebra
from ncdq.resolutions import (ext_algebra, ext_total_dims, hom_complex_ext, minimal_resolution, simple_module,
                              simple_top, theorem_a_consistency)


def truncated_poly(n):
    Q = Quiver(["1"], [Arrow("x", "1", "1")])
    return build_algebra(QuiverSpec(Q, [Relation([(1, Q.path("x" * n))])], [], QQ, Truncation(path_length=n + 1)))


def test_dual_numbers_ext_is_polynomial():
    A = build_algebra(dual_numbers_spec())
    E = ext_algebra(simple_module(A, "1"), 5)
    assert E.dims() == {j: 1 for j in range(6)}
    assert all(E.weight(j, 0) == j for j in range(6))
    assert E.product(1, 0, 1, 0) not in ({}, None)
    assert E.product(2, 0, 2, 0) not in ({}, None)
    assert E.res.is_minimal() and E.res.check_exact() == []


def test_cube_zero_ext_has_vanishing_square():
    A = truncated_poly(3)
    E = ext_algebra(simple_module(A, "1"), 4)
    assert E.dims() == {j: 1 for j in range(5)}
    assert [E.weight(j, 0) for j in range(5)] == [0, 1, 3, 4, 6]
    assert E.product(1, 0, 1, 0) == {}
    assert E.product(1, 0, 2, 0) not in ({}, None)


def test_square_zero_plane_ext_dims():
    A = build_algebra(square_zero_plane_spec())
    E = ext_algebra(simple_module(A, "1"), 4)
    assert E.dims() == {j: 2 ** j for j in range(5)}


def test_resolution_route_matches_hom_complex():
    for spec in (a1_hypersurface_spec(), marked_relations_spec()):
        A = build_algebra(spec)
        S = simple_top(A, spec.marked_vertices)
        res = minimal_resolution(S, 4)
        E = ext_algebra(S, 4)
        tot = {}
        for (j, _), d in E.cell_dims().items():
            tot[j] = tot.get(j, 0) + d
        hom = ext_total_dims(hom_complex_ext(res, S))
        for j, d in hom.items():
            assert tot.get(j, 0) == d


def test_a1_resolution_terminates():
    spec = a1_hypersurface_spec()
    A = build_algebra(spec)
    E = ext_algebra(simple_top(A, spec.marked_vertices), 6)
    assert E.res.terminated
    assert E.res.shapes() == ["P2", "P1", "P2"]


def test_exactness_check_locates_damage():
    A = build_algebra(dual_numbers_spec())
    res = minimal_resolution(simple_module(A, "1"), 3)
    P1 = res.terms[1]
    unit = P1.index[(0, A.idempotent["1"])]
    res.images[2][0] = {**res.images[2][0], unit: 1}
    problems = res.check_exact()
    assert any("d^2 != 0 at term 2" in p for p in problems)
    assert not res.is_minimal()


@pytest.mark.parametrize("spec, J", [(a1_hypersurface_spec(), 5), (marked_relations_spec(), 4)])
def test_theorem_a_consistency_small(spec, J):
    A = build_algebra(spec)
    D = 12 if A.graded else None
    r = theorem_a_consistency(A, spec.marked_vertices, 6, J, D)
    assert r.ok, (r.verdict, r.mismatches, r.notes)
    assert r.compared
