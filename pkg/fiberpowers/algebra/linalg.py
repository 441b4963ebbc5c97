"""
.. module:: fiberpowers.algebra.linalg
    :synopsis: Rank of integer matrices over a prime field.
"""
import logging

import numpy as np

# ========== Logging Setup ===========
syslog = logging.getLogger(__name__)

# ========== Constants ==========
# (p - 1)^2 must fit in an int64 cell
MAX_PRIME = 2**31 - 1


# ========== Functions ==========
def row_echelon_mod_p(matrix, p):
    """Row-reduce an integer matrix over GF(p).

    Row operations are applied to whole rows at once; the elimination below a
    pivot is a single outer-product update.

    :param matrix: integer matrix, shape (m, n); entries may be negative
    :type matrix: array-like
    :param p: a prime
    :type p: int
    :return: the reduced matrix and the list of pivot columns
    :rtype: tuple
    """
    if p > MAX_PRIME:
        raise ValueError(f"prime {p} is too large for int64 elimination")

    reduced = np.array(matrix, dtype=np.int64) % p
    if reduced.ndim != 2:
        reduced = reduced.reshape(0, 0)

    rows, cols = reduced.shape
    pivot_cols = []
    pivot_row = 0

    for col in range(cols):
        if pivot_row == rows:
            break

        nonzero = np.flatnonzero(reduced[pivot_row:, col])
        if not nonzero.size:
            continue

        found = pivot_row + int(nonzero[0])
        if found != pivot_row:
            reduced[[pivot_row, found]] = reduced[[found, pivot_row]]

        inverse = pow(int(reduced[pivot_row, col]), -1, p)
        reduced[pivot_row] = (reduced[pivot_row] * inverse) % p

        below = pivot_row + 1 + np.flatnonzero(reduced[pivot_row + 1 :, col])
        if below.size:
            factors = reduced[below, col].copy()
            reduced[below] = (reduced[below] - np.outer(factors, reduced[pivot_row])) % p

        pivot_cols.append(col)
        pivot_row += 1

    return reduced, pivot_cols


def rank_mod_p(matrix, p):
    """Rank of an integer matrix over GF(p).

    >>> rank_mod_p([[1, 1], [1, -1]], 2)
    1
    >>> rank_mod_p([[1, 1], [1, -1]], 3)
    2

    :param matrix: integer matrix
    :type matrix: array-like
    :param p: a prime
    :type p: int
    :rtype: int
    """
    array = np.asarray(matrix)
    if array.size == 0:
        return 0
    _, pivot_cols = row_echelon_mod_p(array, p)
    return len(pivot_cols)
