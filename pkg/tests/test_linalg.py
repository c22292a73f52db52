from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncdq.linalg import (QQ, Field, QuotientSpace, SparseMatrix, SubquotientCoords,
                         column_kernel, rank_of_vectors, solve_columns, span_echelon, vec_add)

F7 = Field.prime(7, warn=False)


def dense_columns(draw_rows, draw_cols, entries):
    return st.lists(st.lists(entries, min_size=draw_rows, max_size=draw_rows),
                    min_size=draw_cols, max_size=draw_cols)


def to_vec(col, F):
    return {i: F(x) for i, x in enumerate(col) if F(x)}


def apply_cols(cols, x, F):
    out = {}
    for j, c in x.items():
        out = vec_add(out, cols[j], F, c)
    return out


small = st.integers(-3, 3)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 6))
    c = draw(st.integers(1, 6))
    return draw(dense_columns(r, c, small))


@pytest.mark.parametrize("F", [QQ, F7])
@given(m=matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity_and_kernel(F, m):
    cols = [to_vec(c, F) for c in m]
    ker, ech = column_kernel(cols, F)
    assert ech.rank + len(ker) == len(cols)
    assert rank_of_vectors(cols, F) == ech.rank
    for v in ker:
        assert apply_cols(cols, v, F) == {}


@pytest.mark.parametrize("F", [QQ, F7])
@given(m=matrices(), x=st.lists(small, min_size=6, max_size=6))
@settings(max_examples=80, deadline=None)
def test_solve_finds_preimage(F, m, x):
    cols = [to_vec(c, F) for c in m]
    xv = {j: F(x[j]) for j in range(len(cols)) if F(x[j])}
    b = apply_cols(cols, xv, F)
    sol = solve_columns(cols, b, F)
    assert sol is not None
    assert apply_cols(cols, sol, F) == b


def test_rank_is_field_dependent():
    # det = 7 vanishes in GF(7) only
    cols = [{0: 1, 1: 2}, {0: 3, 1: -1}]
    assert rank_of_vectors(cols, QQ) == 2
    assert rank_of_vectors([{k: F7(v) for k, v in c.items()} for c in cols], F7) == 1


def test_rational_arithmetic_is_exact():
    ech = span_echelon([{0: Fraction(1, 3), 1: 1}, {0: 1, 1: 3}], QQ)
    assert ech.rank == 1
    assert ech.contains({0: 2, 1: 6})


def test_quotient_space_and_subquotient():
    q = QuotientSpace(3, [{0: 1, 1: 1}], QQ)
    assert q.dim == 2
    assert q.project({0: 1, 1: 1}) == {}
    b = span_echelon([{0: 1}], QQ)
    sq = SubquotientCoords(b, [{0: 1, 1: 1}, {1: 2}, {2: 1}])
    assert sq.dim == 2
    assert sq.coords({0: 5, 1: 1}) == {0: 1}


def test_prime_field_warns_and_rejects_composites():
    with pytest.warns(UserWarning):
        Field.prime(5)
    with pytest.raises(ValueError):
        Field.prime(6, warn=False)


def test_sparse_matrix_roundtrip():
    m = SparseMatrix.from_dense([[1, 0], [2, 3]])
    assert m.to_dense() == [[1, 0], [2, 3]]
    assert m.apply({0: 1, 1: 1}) == {0: 1, 1: 5}
