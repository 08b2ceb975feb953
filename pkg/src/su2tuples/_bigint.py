"""Arbitrary-precision fallbacks for the elimination kernels.

Same algorithms as the int64 backends, run on plain Python integers, so there
is no magnitude bound and no bail-out.  These are the authority whenever a
kernel reports that its entries left the machine-word safe range.
"""


def _sym_quot(x, p):
    q, r = divmod(x, p)
    if 2 * r > p:
        q += 1
    return q


def snf_inplace(a, u, v, track):
    """Smith diagonalization on a list-of-lists matrix; mirrors the kernels."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    t = 0
    while t < rows and t < cols:
        pi = pj = -1
        best = 0
        stop = False
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x:
                    ax = abs(x)
                    if best == 0 or ax < best:
                        best, pi, pj = ax, i, j
                        if ax == 1:
                            stop = True
                            break
            if stop:
                break
        if pi < 0:
            break
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            if track:
                for r in u:
                    r[t], r[pi] = r[pi], r[t]
        if pj != t:
            for r in a:
                r[t], r[pj] = r[pj], r[t]
            if track:
                v[t], v[pj] = v[pj], v[t]
        while True:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                if track:
                    for r in u:
                        r[t] = -r[t]
            p = a[t][t]
            col_dirty = False
            for i in range(rows):
                if i == t or a[i][t] == 0:
                    continue
                q = _sym_quot(a[i][t], p)
                if q:
                    row_t = a[t]
                    a[i] = [x - q * y for x, y in zip(a[i], row_t)]
                    if track:
                        for r in u:
                            r[t] += q * r[i]
                if a[i][t]:
                    col_dirty = True
            if col_dirty:
                bi = -1
                best = 0
                for i in range(rows):
                    if i != t and a[i][t]:
                        ax = abs(a[i][t])
                        if best == 0 or ax < best:
                            best, bi = ax, i
                a[t], a[bi] = a[bi], a[t]
                if track:
                    for r in u:
                        r[t], r[bi] = r[bi], r[t]
                continue
            row_dirty = False
            for j in range(cols):
                if j == t or a[t][j] == 0:
                    continue
                q = _sym_quot(a[t][j], p)
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                    if track:
                        v[t] = [x + q * y for x, y in zip(v[t], v[j])]
                if a[t][j]:
                    row_dirty = True
            if row_dirty:
                bj = -1
                best = 0
                for j in range(cols):
                    if j != t and a[t][j]:
                        ax = abs(a[t][j])
                        if best == 0 or ax < best:
                            best, bj = ax, j
                for r in a:
                    r[t], r[bj] = r[bj], r[t]
                if track:
                    v[t], v[bj] = v[bj], v[t]
                continue
            ni = -1
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        ni = i
                        break
                if ni >= 0:
                    break
            if ni < 0:
                break
            a[t] = [x + y for x, y in zip(a[t], a[ni])]
            if track:
                for r in u:
                    r[ni] -= r[t]
        t += 1


def rank_mod_p(a, p):
    """Rank over the field of p elements, arbitrary modulus."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    a = [[x % p for x in row] for row in a]
    rank = 0
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv_row = next((i for i in range(row, rows) if a[i][col]), -1)
        if piv_row < 0:
            continue
        a[row], a[piv_row] = a[piv_row], a[row]
        piv = a[row][col]
        for i in range(row + 1, rows):
            f = a[i][col]
            if f:
                top = a[row]
                a[i] = [(piv * x - f * y) % p for x, y in zip(a[i], top)]
        rank += 1
        row += 1
    return rank


def rank_bareiss(a):
    """Rank over the rationals via fraction-free elimination."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    a = [list(row) for row in a]
    prev = 1
    row = 0
    for col in range(cols):
        if row == rows:
            break
        piv_row = next((i for i in range(row, rows) if a[i][col]), -1)
        if piv_row < 0:
            continue
        a[row], a[piv_row] = a[piv_row], a[row]
        piv = a[row][col]
        top = a[row]
        for i in range(row + 1, rows):
            f = a[i][col]
            cur = a[i]
            for j in range(col + 1, cols):
                cur[j] = (cur[j] * piv - f * top[j]) // prev
            cur[col] = 0
        prev = piv
        row += 1
    return row
