import random

import pytest
from hypothesis import given, settings, strategies as st

from ncdq.deformation import (ArtinianTestAlgebra, DeformationError, Deformations, FiniteDga, check_gauge_laws,
                              square_zero_line, standard_examples, tensor,
                              twist_correspondence)
from ncdq.dg import truncated_free_dga
from ncdq.linalg import Field

F3 = Field.prime(3, warn=False)


@pytest.mark.parametrize("E", standard_examples(), ids=lambda E: E.name)
def test_examples_are_dgas(E):
    assert E.check() == []


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("E", standard_examples(), ids=lambda E: E.name)
def test_gauge_laws(E, n):
    D = Deformations(E, ArtinianTestAlgebra.truncated_polynomial(n))
    rep = check_gauge_laws(D, samples=25, seed=1)
    assert rep.ok, rep.failures[:3]
    assert rep.checked["homotopy"] > 0


@given(seed=st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_gauge_inverse_and_identity(seed):
    E = standard_examples()[2]
    D = Deformations(E, ArtinianTestAlgebra.truncated_polynomial(3))
    rng = random.Random(seed)
    g = D.random_gauge(rng)
    assert D.T.mul(g, D.inverse(g)) == D.one == D.T.mul(D.inverse(g), g)
    x = D.random_mc(rng)
    assert D.gauge_act(D.one, x) == x


def test_nilpotency_index():
    assert ArtinianTestAlgebra.truncated_polynomial(3).nilpotency_index == 3


def test_gauge_must_be_unipotent():
    D = Deformations(square_zero_line(), ArtinianTestAlgebra.truncated_polynomial(2))
    with pytest.raises(DeformationError):
        D.inverse({0: 1})


def test_tensor_koszul_sign():
    # odd generator u with u^2 = 0 in degree 1 tensored with itself: (u@1)(1@u) = u@u, (1@u)(u@1) = -u@u
    U = FiniteDga(Field(0), [0, 1], {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [{}, {}], ["1", "u"], unit=0)
    T = tensor(U, U)
    u1, one_u, uu = 1 * 2 + 0, 0 * 2 + 1, 1 * 2 + 1
    assert T.mul({u1: 1}, {one_u: 1}) == {uu: 1}
    assert T.mul({one_u: 1}, {u1: 1}) == {uu: -1}


def test_twist_correspondence_enumerated():
    # Z has a nonzero differential (da = b), so both equations are nontrivial
    Z = FiniteDga.from_window(truncated_free_dga(F3, [("a", 0, 1), ("b", 1, 1)], {"a": [(1, "b")]}, 2))
    for E in (standard_examples(F3)[0], standard_examples(F3)[1], standard_examples(F3)[3]):
        r = twist_correspondence(Z, E)
        assert r.mode == "enumerated" and r.bijective, r.failures
    r = twist_correspondence(Z, standard_examples(F3)[1])
    assert 0 < r.mc < r.states


def test_twist_correspondence_falls_back_to_sampling():
    Z = FiniteDga.from_window(truncated_free_dga(F3, [("a", 0, 1), ("b", 1, 1)], {"a": [(1, "b")]}, 2))
    r = twist_correspondence(Z, standard_examples(F3)[2], samples=300)
    assert r.mode == "sampled" and r.bijective, r.failures


def test_twist_correspondence_sampled_over_rationals():
    Z = FiniteDga.from_window(truncated_free_dga(Field(0), [("a", 0, 1), ("b", 1, 1)], {"a": [(1, "b")]}, 2))
    r = twist_correspondence(Z, standard_examples()[1], samples=100)
    assert r.mode == "sampled" and r.bijective
