"""Vectorized elimination kernels (pure numpy).

Fallback twins of the numba kernels in ``_kernels_numba``: same algorithms,
same pivot rules, expressed as whole-row/column numpy operations.  Both
backends produce identical results; they may differ only in when they bail
out to the arbitrary-precision path, which recomputes the same deterministic
answer exactly.
"""

import numpy as np

from ._limits import ENTRY_LIMIT

_SAFE_PRODUCT = 1 << 62


def _first_min_nonzero(block):
    # Index (row-major first occurrence) of the least-magnitude nonzero entry.
    mag = np.abs(block)
    nz = mag > 0
    if not nz.any():
        return None
    best = mag[nz].min()
    flat = int(np.flatnonzero((mag == best).ravel())[0])
    return divmod(flat, block.shape[1])


def snf_inplace(a, u, v, track):
    """Vectorized twin of ``_kernels_numba.snf_inplace``."""
    rows, cols = a.shape
    t = 0
    while t < rows and t < cols:
        hit = _first_min_nonzero(a[t:, t:])
        if hit is None:
            break
        pi, pj = hit[0] + t, hit[1] + t
        if pi != t:
            a[[t, pi], :] = a[[pi, t], :]
            if track:
                u[:, [t, pi]] = u[:, [pi, t]]
        if pj != t:
            a[:, [t, pj]] = a[:, [pj, t]]
            if track:
                v[[t, pj], :] = v[[pj, t], :]
        while True:
            if a[t, t] < 0:
                a[t, :] *= -1
                if track:
                    u[:, t] *= -1
            p = int(a[t, t])
            # clear column t
            col = a[:, t].copy()
            col[t] = 0
            if col.any():
                q = col // p
                q += 2 * (col - q * p) > p
                a -= np.outer(q, a[t, :])
                if np.abs(a).max() > ENTRY_LIMIT:
                    return 1
                if track:
                    umax = int(np.abs(u).max())
                    if int(np.abs(q).sum()) * max(umax, 1) >= _SAFE_PRODUCT:
                        return 1
                    u[:, t] += u @ q
                    if np.abs(u).max() > ENTRY_LIMIT:
                        return 1
                rem = np.abs(a[:, t]).copy()
                rem[t] = 0
                if rem.any():
                    best = rem[rem > 0].min()
                    bi = int(np.flatnonzero(rem == best)[0])
                    a[[t, bi], :] = a[[bi, t], :]
                    if track:
                        u[:, [t, bi]] = u[:, [bi, t]]
                    continue
            # clear row t
            rowq = a[t, :].copy()
            rowq[t] = 0
            if rowq.any():
                q = rowq // p
                q += 2 * (rowq - q * p) > p
                a -= np.outer(a[:, t], q)
                if np.abs(a).max() > ENTRY_LIMIT:
                    return 1
                if track:
                    vmax = int(np.abs(v).max())
                    if int(np.abs(q).sum()) * max(vmax, 1) >= _SAFE_PRODUCT:
                        return 1
                    v[t, :] += q @ v
                    if np.abs(v).max() > ENTRY_LIMIT:
                        return 1
                rem = np.abs(a[t, :]).copy()
                rem[t] = 0
                if rem.any():
                    best = rem[rem > 0].min()
                    bj = int(np.flatnonzero(rem == best)[0])
                    a[:, [t, bj]] = a[:, [bj, t]]
                    if track:
                        v[[t, bj], :] = v[[bj, t], :]
                    continue
            # the pivot must divide everything that remains
            tail = a[t + 1 :, t + 1 :]
            bad = np.flatnonzero((tail % p).ravel())
            if bad.size == 0:
                break
            ni, _ = divmod(int(bad[0]), tail.shape[1])
            ni += t + 1
            a[t, :] += a[ni, :]
            if np.abs(a[t, :]).max() > ENTRY_LIMIT:
                return 1
            if track:
                u[:, ni] -= u[:, t]
                if np.abs(u[:, ni]).max() > ENTRY_LIMIT:
                    return 1
        t += 1
    return 0


def rank_mod_p(a, p):
    """Vectorized twin of ``_kernels_numba.rank_mod_p``; requires p < 2**31."""
    rows, cols = a.shape
    a %= p
    rank = 0
    row = 0
    for col in range(cols):
        if row == rows:
            break
        hits = np.flatnonzero(a[row:, col])
        if hits.size == 0:
            continue
        piv_row = row + int(hits[0])
        if piv_row != row:
            a[[row, piv_row], :] = a[[piv_row, row], :]
        piv = a[row, col]
        below = a[row + 1 :, col:]
        f = below[:, 0].copy()
        if f.any():
            below *= piv
            below -= np.outer(f, a[row, col:])
            below %= p
        rank += 1
        row += 1
    return rank


def rank_bareiss(a):
    """Vectorized twin of ``_kernels_numba.rank_bareiss``."""
    rows, cols = a.shape
    prev = 1
    row = 0
    for col in range(cols):
        if row == rows:
            break
        hits = np.flatnonzero(a[row:, col])
        if hits.size == 0:
            continue
        piv_row = row + int(hits[0])
        if piv_row != row:
            a[[row, piv_row], :] = a[[piv_row, row], :]
        piv = a[row, col]
        tail = a[row + 1 :, col + 1 :]
        f = a[row + 1 :, col].copy()
        if tail.size:
            tail *= piv
            tail -= np.outer(f, a[row, col + 1 :])
            tail //= prev
            if np.abs(tail).max() > ENTRY_LIMIT:
                return 1, 0
        a[row + 1 :, col] = 0
        prev = piv
        row += 1
    return 0, row


def warm_up():
    """No-op; present for interface parity with the numba backend."""
