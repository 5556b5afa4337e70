from fractions import Fraction as F

import pytest

from engine.boolfn import DimensionError
from engine.exact import identity, invert, matmul, quadratic_form, rank, rref, solve_consistent


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert rank([]) == 0


def test_rref_records_pivots():
    red = rref([[0, 1], [1, 0]])
    assert red.pivots == [0, 1]
    assert red.rows == identity(2)


def test_solve_consistent():
    assert solve_consistent([[1, 1], [1, -1]], [1, 0]) == [F(1, 2), F(1, 2)]


def test_solve_inconsistent():
    assert solve_consistent([[1, 1], [2, 2]], [1, 1]) is None


def test_solve_row_mismatch():
    with pytest.raises(DimensionError):
        solve_consistent([[1]], [1, 2])


def test_invert_roundtrip():
    m = [[F(2), F(1)], [F(1), F(3)]]
    inverse = invert(m)
    assert inverse == [[F(3, 5), F(-1, 5)], [F(-1, 5), F(2, 5)]]
    assert matmul(inverse, m) == identity(2)


def test_invert_singular():
    with pytest.raises(ValueError, match="singular"):
        invert([[1, 2], [2, 4]])


def test_invert_non_square():
    with pytest.raises(DimensionError):
        invert([[1, 2]])


def test_quadratic_form():
    assert quadratic_form([F(1), F(2)], [[F(1), F(0)], [F(0), F(3)]]) == 13
