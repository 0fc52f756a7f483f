"""Pure-Python elimination kernels.

Integer kernels take a list of rows of Python ints and never divide
inexactly; modular kernels take residues in [0, p).
"""


def _copy(rows):
    return [list(r) for r in rows]


def bareiss_rank(rows, ncols):
    a = _copy(rows)
    n = len(a)
    rank = 0
    prev = 1
    live_cols = list(range(ncols))
    while rank < n and live_cols:
        best = None
        for i in range(rank, n):
            ai = a[i]
            for c in live_cols:
                v = ai[c]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, c)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pc = best
        a[rank], a[pi] = a[pi], a[rank]
        live_cols.remove(pc)
        prow = a[rank]
        piv = prow[pc]
        for i in range(rank + 1, n):
            ri = a[i]
            f = ri[pc]
            for c in live_cols:
                ri[c] = (piv * ri[c] - f * prow[c]) // prev
            ri[pc] = 0
        prev = piv
        rank += 1
    return rank


def bareiss_det(rows):
    a = _copy(rows)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def bareiss_rref(rows, ncols):
    """Fraction-free Gauss-Jordan.

    Returns (R, pivots, d) where R/d is the reduced row echelon form
    (rows past len(pivots) are zero).
    """
    a = _copy(rows)
    n = len(a)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == n:
            break
        pi = None
        for i in range(r, n):
            v = a[i][c]
            if v and (pi is None or abs(v) < abs(a[pi][c])):
                pi = i
        if pi is None:
            continue
        a[r], a[pi] = a[pi], a[r]
        prow = a[r]
        piv = prow[c]
        for i in range(n):
            if i == r:
                continue
            ri = a[i]
            f = ri[c]
            for j in range(ncols):
                ri[j] = (piv * ri[j] - f * prow[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, prev


def rank_mod_p(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    rank = 0
    for c in range(ncols):
        if rank == n:
            break
        pi = None
        for i in range(rank, n):
            if a[i][c]:
                pi = i
                break
        if pi is None:
            continue
        a[rank], a[pi] = a[pi], a[rank]
        prow = a[rank]
        inv = pow(prow[c], p - 2, p)
        for j in range(c, ncols):
            prow[j] = prow[j] * inv % p
        for i in range(rank + 1, n):
            ri = a[i]
            f = ri[c]
            if f:
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * prow[j]) % p
        rank += 1
    return rank


def rref_mod_p(rows, ncols, p):
    a = [[x % p for x in r] for r in rows]
    n = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        pi = None
        for i in range(r, n):
            if a[i][c]:
                pi = i
                break
        if pi is None:
            continue
        a[r], a[pi] = a[pi], a[r]
        prow = a[r]
        inv = pow(prow[c], p - 2, p)
        for j in range(ncols):
            prow[j] = prow[j] * inv % p
        for i in range(n):
            if i != r and a[i][c]:
                ri = a[i]
                f = ri[c]
                for j in range(ncols):
                    ri[j] = (ri[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return a, pivots
