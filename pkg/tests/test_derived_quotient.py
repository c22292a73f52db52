import random

import pytest
from hypothesis import given, settings, strategies as st

from ncdq.derived_quotient import (ModelError, bimodule_triangle, build_model, dq_cohomology_ring, h0_isomorphism,
                                   h1_bound, homotopy_identities, is_stratifying, ker_mu_dims, marked_relations,
                                   markings, tor_oracle)
from ncdq.dg import check_dga, cohomology, cone
from ncdq.examples import a1_hypersurface_spec, atiyah_flop_spec, marked_relations_spec, random_spec
from ncdq.quiver import Quiver, QuiverSpec, build_algebra, quotient_by_idempotent_ideal


def test_product_of_fields_is_stratifying():
    spec = QuiverSpec(Quiver(["1", "2"], []), [], ["1"])
    A = build_algebra(spec)
    H = dq_cohomology_ring(build_model(A, ["1"], 4))
    dims = H.degree_dims()
    assert dims.pop(0) == 1 and set(dims.values()) == {0} and min(dims) == -4
    assert is_stratifying(H)["stratifying"]


def test_a1_cohomology_is_one_dimensional_in_each_degree():
    A = build_algebra(a1_hypersurface_spec())
    model = build_model(A, ["1"], 5)
    H = dq_cohomology_ring(model)
    for j in range(0, 5):
        assert H.dim((-j, 2 * j)) == 1
        assert sum(h.dim for c, h in H.cells.items() if c[0] == -j) == 1
    assert not is_stratifying(H)["stratifying"]
    assert check_dga(model).ok


def test_marked_relations_example():
    spec = marked_relations_spec()
    A = build_algebra(spec)
    model = build_model(A, spec.marked_vertices, 3)
    H = dq_cohomology_ring(model)
    assert H.degree_dims()[0] == 1
    # ker(Ae (x)_R eA -> A) is spanned by z (x) xy
    assert H.degree_dims()[-1] == 1
    assert sum(ker_mu_dims(A, spec.marked_vertices).values()) == 1
    mr = marked_relations(spec, model, H)
    assert mr.spans
    assert [str(mr.markings[k]) for k in mr.basis] == ["z|xy"]
    b = h1_bound(spec, quotient_by_idempotent_ideal(A, spec.marked_vertices).dim)
    assert b["ell_i"] == [1, 2, 2, 2] and b["ell"] == 7 and b["bound"] == 7


def test_markings_cut_through_marked_vertices():
    spec = marked_relations_spec()
    ms = [str(m) for m in markings(spec, 1)]
    # xyz: 1 -x-> 2 -y-> 3 -z-> 1 ; vertex 3 is not marked
    assert ms == ["|xyz", "x|yz", "xyz|"]


def test_reduced_and_full_models_agree():
    A = build_algebra(a1_hypersurface_spec())
    Hr = dq_cohomology_ring(build_model(A, ["1"], 3), reps=False)
    Hf = dq_cohomology_ring(build_model(A, ["1"], 3, reduced=False), reps=False)
    assert Hr.cell_dims() == Hf.cell_dims()


def test_model_is_cone_of_multiplication():
    A = build_algebra(a1_hypersurface_spec())
    model = build_model(A, ["1"], 4)
    T, mu = bimodule_triangle(model)
    Hc = cohomology(cone(mu), reps=False)
    Hm = dq_cohomology_ring(model, reps=False)
    for c, h in Hm.cells.items():
        if h.trusted and Hc.trusted(c):
            assert Hc.dim(c) == h.dim


def test_homotopy_identities_hold():
    spec = marked_relations_spec()
    model = build_model(build_algebra(spec), spec.marked_vertices, 3)
    assert homotopy_identities(model) == []


def test_weight_cap_beyond_truncation_is_refused():
    A = build_algebra(atiyah_flop_spec(4))
    with pytest.raises(ModelError):
        build_model(A, ["1"], 2, 6)


@given(seed=st.integers(0, 5000))
@settings(max_examples=15, deadline=None)
def test_random_quotients_match_independent_routes(seed):
    spec = random_spec(random.Random(seed))
    A = build_algebra(spec)
    V = spec.marked_vertices
    D = 6
    model = build_model(A, V, 4, D)
    H = dq_cohomology_ring(model, reps=False)
    h0 = h0_isomorphism(model)
    assert h0["same_ideal"] and h0["dim_h0"] == h0["dim_quotient"]
    km = ker_mu_dims(A, V, D)
    for w in range(D + 1):
        assert H.dim((-1, w)) == km.get(w, 0)
    tor = tor_oracle(A, V, 2, D)
    for j in (2, 3):
        for w in range(D + 1):
            if H.trusted((-j, w)):
                assert H.dim((-j, w)) == tor.get((j - 1, w), 0)
