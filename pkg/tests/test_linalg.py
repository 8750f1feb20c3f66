import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from chiral_miura.linalg import bareiss_inverse, independent_rows, rank_exact, solve_square

entries = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_small_inverse():
    det, adj = bareiss_inverse([[2, 1], [1, 1]])
    assert [[x / det for x in row] for row in adj] == [[1, -1], [-1, 2]]
    assert solve_square([[2, 1], [1, 1]], [3, 2]) == [1, 1]


def test_singular_raises():
    import pytest

    with pytest.raises(ArithmeticError):
        bareiss_inverse([[1, 2], [2, 4]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: matrices(n, n)))
def test_bareiss_matches_sympy(m):
    M = sympy.Matrix(m)
    if M.det() == 0:
        return
    det, adj = bareiss_inverse(m)
    assert abs(det) == abs(M.det())
    assert sympy.Matrix(adj) / det == M.inv()


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_rank_and_pivots_match_sympy(m):
    r = sympy.Matrix(m).rank()
    assert rank_exact(m) == r
    picked = independent_rows(m, len(m[0]))
    assert len(picked) == r
    assert sympy.Matrix([m[i] for i in picked]).rank() == r
