"""
Exact linear algebra over the rationals.

Thin wrappers around sympy's `DomainMatrix` (rank) and `Matrix` (nullspace,
solve_all) that take and return plain lists of `fractions.Fraction`.
"""

from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = ['rank', 'nullspace', 'solve_all', 'InconsistentSystem']


class InconsistentSystem(ValueError):
    pass


def _qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _fraction(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _sympy_matrix(rows, ncols):
    entries = [[Fraction(v) for v in row] for row in rows]
    return sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(entries[i][j].numerator,
                                                                      entries[i][j].denominator))


def rank(rows, ncols=None):
    """Rank of the matrix with the given rows; an empty list of rows has rank 0."""
    rows = [list(row) for row in rows]
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    matrix = DomainMatrix([[_qq(v) for v in row] for row in rows], (len(rows), ncols), QQ)
    return int(matrix.rank())


def nullspace(rows, ncols):
    """ Basis of the right kernel {v : rows . v = 0}.

    Parameters
    ----------
    rows : list of lists
        Linear conditions, each of length ``ncols``.
    ncols : int
        Number of unknowns, needed when there are no conditions at all.

    Returns
    -------
    list of lists of Fraction
    """
    rows = [list(row) for row in rows]
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    vectors = _sympy_matrix(rows, ncols).nullspace()
    return [[_fraction(v) for v in vector] for vector in vectors]


def solve_all(rows, rhs_list):
    """ Solve rows . x = b for every right-hand side b in ``rhs_list`` at once.

    Returns
    -------
    list of lists of Fraction
        One particular solution per right-hand side, with free parameters set to zero.
    """
    rows = [list(row) for row in rows]
    if not rhs_list:
        return []
    ncols = len(rows[0])
    matrix = _sympy_matrix(rows, ncols)
    columns = _sympy_matrix([[rhs[i] for rhs in rhs_list] for i in range(len(rows))], len(rhs_list))
    try:
        solution, params = matrix.gauss_jordan_solve(columns)
    except ValueError as err:
        raise InconsistentSystem("Linear system has no solution: {}".format(err))
    solution = solution.subs({p: 0 for p in params})
    return [[_fraction(solution[i, k]) for i in range(ncols)] for k in range(len(rhs_list))]
