"""Exact Gauss-Jordan elimination on numpy object arrays holding Fractions."""
import logging
from fractions import Fraction

import numpy as np

from .rational import to_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction_array(values, ndim=None) -> np.ndarray:
    """Converts (nested) sequences of exact numbers into an object array of Fractions.

    Parameters
    ----------
    values : array_like
        Nested lists, tuples or arrays of ints, Fractions or rational literals.
    ndim : int, optional
        The expected number of dimensions, by default None (no check).

    Returns
    -------
    np.ndarray
        A new object array, entries are Fractions.

    Raises
    ------
    ValueError
        If the data is ragged or has the wrong number of dimensions.
    """
    array = np.array(values, dtype=object)
    if ndim is not None and array.ndim != ndim:
        logging.error(f"Expected {ndim}-dimensional data, got shape {array.shape}!")
        raise ValueError(f"expected {ndim}-dimensional data, got shape {array.shape}")
    result = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        if isinstance(value, (list, tuple, np.ndarray)):
            raise ValueError("ragged data cannot be converted to a rational array")
        result[index] = to_rational(value)
    return result


def zeros(shape) -> np.ndarray:
    result = np.empty(shape, dtype=object)
    result.fill(ZERO)
    return result


def row_echelon(matrix):
    """Reduced row echelon form.

    Parameters
    ----------
    matrix : np.ndarray
        2-D object array of Fractions, not modified.

    Returns
    -------
    tuple of (np.ndarray, list of int)
        The reduced matrix and the pivot column of every non-zero row.
    """
    reduced = np.array(matrix, dtype=object, copy=True)
    rows, cols = reduced.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        pivot = None
        for candidate in range(row, rows):
            if reduced[candidate, col] != 0:
                pivot = candidate
                break
        if pivot is None:
            continue
        if pivot != row:
            reduced[[row, pivot], :] = reduced[[pivot, row], :]
        reduced[row, :] = reduced[row, :] / reduced[row, col]
        for other in range(rows):
            if other != row and reduced[other, col] != 0:
                reduced[other, :] = reduced[other, :] - reduced[other, col] * reduced[row, :]
        pivots.append(col)
        row += 1
    return reduced, pivots


def rank(matrix) -> int:
    if matrix.shape[0] == 0:
        return 0
    return len(row_echelon(matrix)[1])


def solve(a, b):
    """Solves the square system ``a @ x = b`` exactly.

    Returns
    -------
    np.ndarray or None
        The unique solution, None if ``a`` is singular.
    """
    n = a.shape[0]
    if a.shape != (n, n) or b.shape != (n,):
        logging.error(f"solve: incompatible shapes {a.shape} and {b.shape}!")
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = a
    augmented[:, n] = b
    reduced, pivots = row_echelon(augmented)
    if pivots != list(range(n)):
        return None
    return reduced[:, n].copy()


def independent_rows(matrix, rhs):
    """Reduces the system ``matrix @ x = rhs`` to an equivalent set of independent rows.

    Returns
    -------
    tuple of (np.ndarray, np.ndarray) or None
        Coefficients and right hand side of the independent system, None if
        the system is inconsistent.
    """
    rows, cols = matrix.shape
    if rows == 0:
        return matrix, rhs
    augmented = np.empty((rows, cols + 1), dtype=object)
    augmented[:, :cols] = matrix
    augmented[:, cols] = rhs
    reduced, pivots = row_echelon(augmented)
    if cols in pivots:
        return None
    count = len(pivots)
    return reduced[:count, :cols].copy(), reduced[:count, cols].copy()
