import pytest
from hypothesis import given
from hypothesis import strategies as st

from chroma import linalg as L
from chroma import poly as P
from strategies import small_fields


@st.composite
def field_matrix(draw, max_rows=4, max_cols=5):
    F = draw(small_fields)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    el = st.integers(0, F.q - 1)
    return F, [[draw(el) for _ in range(c)] for _ in range(r)]


def test_rank_and_kernel_of_example_projection(gf4):
    # K4 minus an edge, alpha = (3, 3, 2, 2, 2): 1 at the tail, alpha(e) at the head
    M = [
        [3, 1, 0, 0, 0],
        [0, 3, 1, 0, 2],
        [1, 0, 0, 2, 1],
        [0, 0, 2, 1, 0],
    ]
    assert L.rank(gf4, M) == 3
    assert L.left_kernel(gf4, M) == [[1, 2, 3, 1]]


def test_det_of_identity_and_singular(gf5):
    assert L.det(gf5, [[1, 0], [0, 1]]) == 1
    assert L.det(gf5, [[1, 2], [2, 4]]) == 0
    with pytest.raises(ValueError):
        L.det(gf5, [[1, 2, 3]])


def test_major_cofactors_pick_trailing_columns(gf5):
    M = L.const_matrix([[1, 0, 2], [0, 1, 3]])
    # columns {0, 1} and {0, 2}
    assert L.major_cofactors(gf5, M) == [P.ONE, (3,)]
    with pytest.raises(ValueError):
        L.major_cofactors(gf5, L.const_matrix([[1], [2]]))


def test_maximal_minors_count(gf5):
    M = L.const_matrix([[1, 2, 3, 4], [0, 1, 2, 3]])
    assert len(L.maximal_minors(gf5, M)) == 6


@given(field_matrix())
def test_rank_nullity(fm):
    F, M = fm
    rows = len(M)
    ker = L.left_kernel(F, M)
    assert L.rank(F, M) + len(ker) == rows
    for v in ker:
        assert any(v)
        assert L.vecmat(F, v, M) == [0] * len(M[0])


@given(field_matrix(max_rows=4, max_cols=4))
def test_det_matches_rank(fm):
    F, M = fm
    n = min(len(M), len(M[0]))
    sq = [row[:n] for row in M[:n]]
    assert (L.det(F, sq) != 0) == (L.rank(F, sq) == n)


@given(field_matrix(max_rows=3, max_cols=3), st.data())
def test_det_poly_evaluates_like_det(fm, data):
    F, M = fm
    n = min(len(M), len(M[0]))
    B = [[data.draw(st.integers(0, F.q - 1)) for _ in range(n)] for _ in range(n)]
    line = [[(M[i][j], B[i][j]) for j in range(n)] for i in range(n)]
    line = [[P.normalize(e) for e in row] for row in line]
    d = L.det_poly(F, line)
    for t in F.elements():
        assert P.evaluate(F, d, t) == L.det(F, L.evaluate_matrix(F, line, t))


@given(field_matrix())
def test_rref_is_reduced(fm):
    F, M = fm
    R, pivots = L.rref(F, M)
    for i, c in enumerate(pivots):
        assert R[i][c] == 1
        assert all(R[k][c] == 0 for k in range(len(R)) if k != i)
    assert len(pivots) == L.rank(F, M)
