from fractions import Fraction

import pytest

from .. import exactlinalg


def test_rank():
    assert exactlinalg.rank([]) == 0
    assert exactlinalg.rank([[1, 2], [2, 4]]) == 1
    assert exactlinalg.rank([[1, Fraction(1, 3)], [3, 1], [0, 1]]) == 2


def test_nullspace():
    rows = [[1, 1, 0], [0, 1, 1]]
    basis = exactlinalg.nullspace(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(a * b for a, b in zip(row, v)) == 0
    assert len(exactlinalg.nullspace([], 2)) == 2


def test_solve_all():
    x, = exactlinalg.solve_all([[2, 0], [0, 3]], [[1, 1]])
    assert x == [Fraction(1, 2), Fraction(1, 3)]

    solutions = exactlinalg.solve_all([[1, 1]], [[1], [2]])
    assert [sum(s) for s in solutions] == [1, 2]

    with pytest.raises(exactlinalg.InconsistentSystem):
        exactlinalg.solve_all([[1, 1], [1, 1]], [[0, 1]])
