"""Numba-compiled elimination kernels.

Loop-level twins of the vectorized routines in ``_kernels_numpy``.  All
kernels operate on int64 arrays whose entries the caller has bounded by
``ENTRY_LIMIT``; every write is range-checked so that no int64 product or sum
here can wrap.  A kernel that would leave the safe range bails out (status 1)
and the caller redoes the computation in arbitrary precision.
"""

import numba
import numpy as np

from ._limits import ENTRY_LIMIT


@numba.njit(cache=True)
def _sym_quot(x, p):
    # Quotient with remainder in (-p/2, p/2]; requires p > 0.
    q = x // p
    r = x - q * p
    if 2 * r > p:
        q += 1
    return q


@numba.njit(cache=True)
def _swap_rows(a, u, i1, i2, track):
    for j in range(a.shape[1]):
        tmp = a[i1, j]
        a[i1, j] = a[i2, j]
        a[i2, j] = tmp
    if track:
        for i in range(u.shape[0]):
            tmp = u[i, i1]
            u[i, i1] = u[i, i2]
            u[i, i2] = tmp


@numba.njit(cache=True)
def _swap_cols(a, v, j1, j2, track):
    for i in range(a.shape[0]):
        tmp = a[i, j1]
        a[i, j1] = a[i, j2]
        a[i, j2] = tmp
    if track:
        for j in range(v.shape[1]):
            tmp = v[j1, j]
            v[j1, j] = v[j2, j]
            v[j2, j] = tmp


@numba.njit(cache=True)
def snf_inplace(a, u, v, track):
    """Diagonalize ``a`` by unimodular row/column operations.

    Pivots on the first nonzero entry of least magnitude in the working
    submatrix, with full row and column reduction and a divisibility sweep,
    so the final diagonal is nonnegative with each entry dividing the next.
    When ``track`` is true, ``u`` and ``v`` (preseeded with identities)
    accumulate inverse transforms so that the original matrix equals
    ``u @ a @ v`` throughout.  Returns 0 on success, 1 on range bail-out.
    """
    rows, cols = a.shape
    t = 0
    while t < rows and t < cols:
        # first entry of least magnitude in a[t:, t:]
        pi = -1
        pj = -1
        best = 0
        stop = False
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i, j]
                if x != 0:
                    ax = -x if x < 0 else x
                    if best == 0 or ax < best:
                        best = ax
                        pi = i
                        pj = j
                        if ax == 1:
                            stop = True
                            break
            if stop:
                break
        if pi < 0:
            break
        if pi != t:
            _swap_rows(a, u, t, pi, track)
        if pj != t:
            _swap_cols(a, v, t, pj, track)
        while True:
            if a[t, t] < 0:
                for j in range(cols):
                    a[t, j] = -a[t, j]
                if track:
                    for i in range(rows):
                        u[i, t] = -u[i, t]
            p = a[t, t]
            # clear column t
            col_dirty = False
            for i in range(rows):
                if i == t or a[i, t] == 0:
                    continue
                q = _sym_quot(a[i, t], p)
                if q != 0:
                    for j in range(cols):
                        w = a[i, j] - q * a[t, j]
                        if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                            return 1
                        a[i, j] = w
                    if track:
                        for i2 in range(rows):
                            w = u[i2, t] + q * u[i2, i]
                            if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                                return 1
                            u[i2, t] = w
                if a[i, t] != 0:
                    col_dirty = True
            if col_dirty:
                bi = -1
                best = 0
                for i in range(rows):
                    if i != t and a[i, t] != 0:
                        ax = -a[i, t] if a[i, t] < 0 else a[i, t]
                        if best == 0 or ax < best:
                            best = ax
                            bi = i
                _swap_rows(a, u, t, bi, track)
                continue
            # clear row t
            row_dirty = False
            for j in range(cols):
                if j == t or a[t, j] == 0:
                    continue
                q = _sym_quot(a[t, j], p)
                if q != 0:
                    for i in range(rows):
                        w = a[i, j] - q * a[i, t]
                        if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                            return 1
                        a[i, j] = w
                    if track:
                        for j2 in range(cols):
                            w = v[t, j2] + q * v[j, j2]
                            if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                                return 1
                            v[t, j2] = w
                if a[t, j] != 0:
                    row_dirty = True
            if row_dirty:
                bj = -1
                best = 0
                for j in range(cols):
                    if j != t and a[t, j] != 0:
                        ax = -a[t, j] if a[t, j] < 0 else a[t, j]
                        if best == 0 or ax < best:
                            best = ax
                            bj = j
                _swap_cols(a, v, t, bj, track)
                continue
            # the pivot must divide everything that remains
            ni = -1
            nj = -1
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i, j] % p != 0:
                        ni = i
                        nj = j
                        break
                if ni >= 0:
                    break
            if ni < 0:
                break
            for j in range(cols):
                w = a[t, j] + a[ni, j]
                if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                    return 1
                a[t, j] = w
            if track:
                for i2 in range(rows):
                    w = u[i2, ni] - u[i2, t]
                    if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                        return 1
                    u[i2, ni] = w
        t += 1
    return 0


@numba.njit(cache=True)
def rank_mod_p(a, p):
    """Rank of ``a`` over the field of p elements; requires p < 2**31."""
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            a[i, j] = a[i, j] % p
    rank = 0
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv_row = -1
        for i in range(row, rows):
            if a[i, col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != row:
            for j in range(cols):
                tmp = a[row, j]
                a[row, j] = a[piv_row, j]
                a[piv_row, j] = tmp
        piv = a[row, col]
        for i in range(row + 1, rows):
            f = a[i, col]
            if f != 0:
                for j in range(col, cols):
                    a[i, j] = (piv * a[i, j] - f * a[row, j]) % p
        rank += 1
        row += 1
    return rank


@numba.njit(cache=True)
def rank_bareiss(a):
    """Rank over the rationals via fraction-free elimination.

    Returns (status, rank); status 1 means an intermediate minor left the
    safe range and the caller must fall back to arbitrary precision.
    """
    rows, cols = a.shape
    prev = 1
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv_row = -1
        for i in range(row, rows):
            if a[i, col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != row:
            for j in range(cols):
                tmp = a[row, j]
                a[row, j] = a[piv_row, j]
                a[piv_row, j] = tmp
        piv = a[row, col]
        for i in range(row + 1, rows):
            f = a[i, col]
            for j in range(col + 1, cols):
                w = (a[i, j] * piv - f * a[row, j]) // prev
                if w > ENTRY_LIMIT or w < -ENTRY_LIMIT:
                    return 1, 0
                a[i, j] = w
            a[i, col] = 0
        prev = piv
        row += 1
    return 0, row


def warm_up():
    """Trigger JIT compilation of all kernels on tiny inputs."""
    a = np.array([[2, 0], [0, 3]], dtype=np.int64)
    u = np.eye(2, dtype=np.int64)
    v = np.eye(2, dtype=np.int64)
    snf_inplace(a.copy(), u, v, True)
    snf_inplace(a.copy(), u, v, False)
    rank_mod_p(a.copy(), 5)
    rank_bareiss(a.copy())
