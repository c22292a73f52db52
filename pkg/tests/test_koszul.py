import pytest

from ncdq.dg import CochainComplex, GradedWindow, algebra_as_dga, check_dga, cohomology, truncated_free_dga
from ncdq.examples import dual_numbers_spec, marked_relations_spec, square_zero_plane_spec
from ncdq.koszul import (CoalgebraWindow, KoszulError, bar, cobar, double_dual_compare, koszul_dual,
                         multiplication_ranks)
from ncdq.linalg import QQ
from ncdq.quiver import build_algebra


def dga_of(spec):
    return algebra_as_dga(build_algebra(spec))


def test_dual_numbers_koszul_dual_is_polynomial():
    a = dga_of(dual_numbers_spec())
    K = koszul_dual(a, 6)
    assert check_dga(K).ok
    H = cohomology(K)
    assert H.cell_dims() == {(n, n): 1 for n in range(7)}
    # the generator squares to a nonzero class
    assert H.product((1, 1), {0: 1}, (1, 1), {0: 1}) not in ({}, None)


def test_bar_is_a_dg_coalgebra():
    for spec in (dual_numbers_spec(), square_zero_plane_spec()):
        B = bar(dga_of(spec), 4)
        assert B.check_d_squared() == []
        assert B.check_coalgebra() == []


def test_double_dual_dual_numbers_with_structure():
    r = double_dual_compare(dga_of(dual_numbers_spec()), 8, structure=True)
    assert r.dims_match and r.cobar_bar_match and r.structure_match
    assert r.h_a == {(0, 0): 1, (0, 1): 1}


def test_double_dual_square_zero_plane():
    r = double_dual_compare(dga_of(square_zero_plane_spec()), 5)
    assert r.dims_match and r.cobar_bar_match


def test_double_dual_of_a_free_dga_with_differential():
    a = truncated_free_dga(QQ, [("y", 0, 1), ("x", -1, 2), ("z", -2, 3)],
                           {"x": [(1, "y y")], "z": [(1, "x y"), (-1, "y x")]}, 5)
    r = double_dual_compare(a, 5, structure=True)
    assert r.dims_match and r.cobar_bar_match and r.structure_match


def test_cobar_of_trivial_coalgebra_is_tensor_algebra():
    win = GradedWindow(0, 0, 4, zero_above=True, zero_below=True)
    C = CochainComplex(QQ, win, {(0, 1): ["u", "v"]}, lambda c, i: {})
    Om = cobar(CoalgebraWindow.trivial(C), 4)
    H = cohomology(Om, reps=False)
    assert H.cell_dims() == {(0, 0): 1, (1, 1): 2, (2, 2): 4, (3, 3): 8, (4, 4): 16}


def test_ungraded_input_is_refused():
    with pytest.raises(KoszulError):
        koszul_dual(dga_of(marked_relations_spec()), 4)


def test_multiplication_ranks_detects_products():
    from ncdq.quiver import Arrow, Quiver, QuiverSpec, Relation, Truncation
    Q = Quiver(["1"], [Arrow("x", "1", "1")])
    cube = QuiverSpec(Q, [Relation([(1, Q.path("xxx"))])], [], QQ, Truncation(path_length=4))
    H = cohomology(dga_of(cube))
    ranks = multiplication_ranks(H, sorted(H.cell_dims()))
    assert ranks[((0, 1), (0, 1))] == 1
    assert ranks[((0, 0), (0, 2))] == 1
    # zero targets are left out
    assert ((0, 1), (0, 2)) not in ranks
