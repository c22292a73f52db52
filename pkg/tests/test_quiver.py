import random

import pytest
from hypothesis import given, settings, strategies as st

from ncdq.examples import (a1_hypersurface_spec, atiyah_flop_spec, dual_numbers_spec, marked_relations_spec,
                           random_spec, square_zero_plane_spec)
from ncdq.quiver import (Arrow, Quiver, QuiverSpec, Relation, SpecError, Truncation, build_algebra,
                         check_peirce, corner_algebra, quotient_by_idempotent_ideal)


def test_marked_relations_basis():
    spec = marked_relations_spec()
    A = build_algebra(spec)
    # e1 e2 e3 x y z xy yz zx (w = yz, the 3-cycles vanish)
    assert A.dim == 9
    assert A.exact and not A.graded
    assert corner_algebra(A, ["1", "2"]).dim == 4
    assert quotient_by_idempotent_ideal(A, ["1", "2"]).dim == 1


def test_small_algebras():
    assert build_algebra(dual_numbers_spec()).dim == 2
    assert build_algebra(square_zero_plane_spec()).dim == 3
    A = build_algebra(a1_hypersurface_spec())
    # e1 e2 a b ab
    assert A.dim == 5 and A.exact and A.graded
    assert corner_algebra(A, ["1"]).dim == 2


def test_atiyah_truncation_flags():
    A = build_algebra(atiyah_flop_spec(6))
    assert A.graded and not A.exact and A.max_weight == 6
    # relations start in length 3, so low weights count all paths
    by_w = {}
    for w in A.weight:
        by_w[w] = by_w.get(w, 0) + 1
    assert by_w[0] == 2 and by_w[1] == 4 and by_w[2] == 8


@pytest.mark.parametrize("make", [marked_relations_spec, dual_numbers_spec, a1_hypersurface_spec,
                                  lambda: atiyah_flop_spec(5)])
def test_associativity_and_peirce(make):
    spec = make()
    A = build_algebra(spec)
    assert A.check_associativity() == []
    assert check_peirce(A, spec.marked_vertices) == []
    u = A.unit()
    for i in range(A.dim):
        assert A.mul_vec(u, {i: 1}) == {i: 1} == A.mul_vec({i: 1}, u)


@given(seed=st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_random_quotients_are_exact_algebras(seed):
    spec = random_spec(random.Random(seed))
    A = build_algebra(spec)
    assert A.exact
    assert A.check_associativity() == []
    assert check_peirce(A, spec.marked_vertices) == []
    assert max(A.weight) <= spec.truncation.path_length


def test_spec_errors():
    with pytest.raises(SpecError, match="undeclared endpoint"):
        Quiver(["1"], [Arrow("x", "1", "2")])
    Q = Quiver(["1", "2"], [Arrow("x", "1", "2"), Arrow("y", "1", "2")])
    with pytest.raises(SpecError, match="do not compose"):
        Q.path(["x", "y"])
    with pytest.raises(SpecError):
        Relation([(1, Q.path(["x"])), (1, Q.path([], "1"))])
    with pytest.raises(SpecError, match="idempotent vertex"):
        QuiverSpec(Q, [], ["3"])
    with pytest.raises(SpecError):
        Truncation(path_length=-1)
