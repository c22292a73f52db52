import random

from hypothesis import given, settings, strategies as st

from ncdq.dg import (ChainMap, CochainComplex, GradedWindow, check_dga, cohomology, cone, good_truncation,
                     truncated_free_dga)
from ncdq.linalg import QQ, Field, vec_add


def elementary_complex(pieces, seed, F=QQ):
    """Direct sum of k (in one degree) and k -> k (identity) pieces, then scrambled by basis changes.

    Returns the complex and the expected cohomology dimensions.
    """
    dims, cols, expect = {}, {}, {}
    for kind, n in pieces:
        if kind == "point":
            dims[n] = dims.get(n, 0) + 1
            expect[n] = expect.get(n, 0) + 1
        else:
            i, j = dims.get(n, 0), dims.get(n + 1, 0)
            dims[n], dims[n + 1] = i + 1, j + 1
            cols.setdefault(n, {})[i] = j
    d = {n: [{} for _ in range(dims[n])] for n in dims}
    for n, m in cols.items():
        for i, j in m.items():
            d[n][i] = {j: 1}
    rng = random.Random(seed)
    for _ in range(3 * sum(dims.values())):
        n = rng.choice(sorted(dims))
        if dims[n] < 2:
            continue
        a, b = rng.sample(range(dims[n]), 2)
        c = rng.choice([1, -1, 2])
        # basis change E in degree n: new d_{n-1} = E d_{n-1}, new d_n = d_n E^{-1}
        E = lambda v: vec_add(v, {b: v.get(a, 0)}, F, c) if a in v else dict(v)
        if n - 1 in d:
            d[n - 1] = [E(col) for col in d[n - 1]]
        if n in d:
            # column b' = column b - c * column a  (E^{-1} sends e_b -> e_b, e_a -> e_a - c e_b)
            d[n][a] = vec_add(d[n][a], d[n][b], F, -c)
    cells = {(n, 0): k for n, k in dims.items()}
    diffs = {(n, 0): cols_ for n, cols_ in d.items()}
    return CochainComplex.from_matrices(F, cells, diffs), expect


piece = st.tuples(st.sampled_from(["point", "edge"]), st.integers(-3, 2))


@given(pieces=st.lists(piece, min_size=1, max_size=8), seed=st.integers(0, 1000))
@settings(max_examples=60, deadline=None)
def test_cohomology_of_scrambled_elementary_complexes(pieces, seed):
    C, expect = elementary_complex(pieces, seed)
    assert C.check_d_squared() == []
    H = cohomology(C)
    for n in range(-4, 4):
        assert H.dim((n, 0)) == expect.get(n, 0)


def test_free_dga_hand_computation():
    # free on y (deg 0, weight 1), x (deg -1, weight 2), dx = y^2
    a = truncated_free_dga(QQ, [("y", 0, 1), ("x", -1, 2)], {"x": [(1, "y y")]}, 4)
    assert check_dga(a).ok
    H = cohomology(a)
    # H^0 = k[y]/y^2 in weights 0, 1; xy - yx is a new class in (-1, 3)
    assert H.dim((0, 0)) == 1 and H.dim((0, 1)) == 1 and H.dim((0, 2)) == 0
    assert H.dim((-1, 2)) == 0
    assert H.dim((-1, 3)) == 1


def test_check_dga_locates_broken_leibniz():
    a = truncated_free_dga(QQ, [("y", 0, 1), ("x", -1, 2)], {"x": [(1, "y y")]}, 4)
    col = a.d_columns((-1, 2))[0]
    col[next(iter(col))] = 5
    rep = check_dga(a)
    assert not rep.ok
    assert any("Leibniz" in v and "(-1, 2)" in v for v in rep.violations)


def test_trust_flags_at_window_edge():
    a = truncated_free_dga(QQ, [("y", 0, 1), ("x", -1, 2)], {"x": [(1, "y y")]}, 4)
    H = cohomology(a)
    assert all(h.trusted for h in H.cells.values())
    win = GradedWindow(-2, 0, 2, zero_above=True, zero_below=False)
    C = CochainComplex(QQ, win, {(-2, 1): ["u"], (-1, 1): ["v"]}, lambda c, i: {})
    H = cohomology(C)
    assert not H.trusted((-2, 1))
    assert H.trusted((-1, 1))


def test_cone_of_identity_is_acyclic():
    C, _ = elementary_complex([("edge", 0), ("point", 1), ("point", -1)], 3)
    f = ChainMap(C, C, lambda c: [{i: 1} for i in range(C.dim(c))])
    K = cone(f)
    assert K.check_d_squared() == []
    H = cohomology(K)
    assert all(h.dim == 0 for c, h in H.cells.items() if h.trusted)


def test_good_truncation_keeps_top_cohomology():
    a = truncated_free_dga(QQ, [("y", 0, 1), ("x", -1, 2)], {"x": [(1, "y y")]}, 4)
    t = good_truncation(a, 1)
    assert check_dga(t).ok
    Ha, Ht = cohomology(a), cohomology(t)
    for c, h in Ht.cells.items():
        if c[0] >= -1 and h.trusted:
            assert h.dim == Ha.dim(c)


def test_prime_field_cohomology():
    F = Field.prime(2, warn=False)
    # d = 2 vanishes mod 2
    C = CochainComplex.from_matrices(F, {(0, 0): 1, (1, 0): 1}, {(0, 0): [{0: 2}]})
    assert cohomology(C).dim((0, 0)) == 1
