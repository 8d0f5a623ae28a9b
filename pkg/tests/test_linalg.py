from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from apolar_rank import linalg

fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=r, max_size=r)))


def low_rank(rows, cols, r, seed):
    import random
    rng = random.Random(seed)
    a = [[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(rows)]
    b = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)] for _ in range(r)]
    return linalg.matmul(a, b)


def test_rank_small_cases():
    assert linalg.rank([]) == 0
    assert linalg.rank([[0, 0], [0, 0]]) == 0
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[Fraction(1, 2), 1], [1, 2]]) == 1
    assert linalg.rank([[1, 0], [0, 1]]) == 2


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_kernel_of_right_dimension(m):
    ker = linalg.kernel(m)
    ncols = len(m[0])
    assert len(ker) == ncols - linalg.rank(m)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if ker:
        assert linalg.rank(ker) == len(ker)


@pytest.mark.parametrize("seed", range(5))
def test_low_rank_products(seed):
    m = low_rank(7, 6, 3, seed)
    assert linalg.rank(m) <= 3
    assert linalg.rank(m) == sympy.Matrix(m).rank()


def test_solve_and_inverse():
    a = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    x = linalg.solve(a, [1, 2, 3])
    assert [sum(Fraction(p) * q for p, q in zip(row, x)) for row in a] == [1, 2, 3]
    inv = linalg.inverse(a)
    assert linalg.matmul(a, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ZeroDivisionError):
        linalg.inverse([[1, 2], [2, 4]])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_matches_sympy(m):
    t = sympy.symbols("t")
    want = sympy.Poly(sympy.Matrix(m).charpoly(t).as_expr(), t).all_coeffs()
    assert linalg.charpoly(m) == [Fraction(str(c)) for c in reversed(want)]


def test_transpose_and_zero():
    assert linalg.transpose([[1, 2, 3]]) == [[1], [2], [3]]
    assert linalg.is_zero_matrix([[0, Fraction(0)]])
    assert not linalg.is_zero_matrix([[0, 1]])
