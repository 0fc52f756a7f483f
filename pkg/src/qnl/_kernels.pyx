# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernels.

Same signatures and results as ``qnl._kernels_py``.  Modular routines
run on native 64-bit words and require p < 2**32; callers route larger
primes to the Python kernels.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

MAX_NATIVE_PRIME = 1 << 32


def bareiss_rank(rows, Py_ssize_t ncols):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t rank = 0, i, k, pi = -1, pc = -1, c
    cdef list ri, prow, live
    cdef object prev = 1, piv, f, v, best
    live = list(range(ncols))
    while rank < n and live:
        best = None
        for i in range(rank, n):
            ri = <list>a[i]
            for k in range(len(live)):
                c = <Py_ssize_t>live[k]
                v = ri[c]
                if v:
                    v = abs(v)
                    if best is None or v < best:
                        best = v
                        pi = i
                        pc = c
                        if best == 1:
                            break
            if best is not None and best == 1:
                break
        if best is None:
            break
        a[rank], a[pi] = a[pi], a[rank]
        live.remove(pc)
        prow = <list>a[rank]
        piv = prow[pc]
        for i in range(rank + 1, n):
            ri = <list>a[i]
            f = ri[pc]
            if f:
                for k in range(len(live)):
                    c = <Py_ssize_t>live[k]
                    ri[c] = (piv * ri[c] - f * prow[c]) // prev
            else:
                for k in range(len(live)):
                    c = <Py_ssize_t>live[k]
                    ri[c] = (piv * ri[c]) // prev
            ri[pc] = 0
        prev = piv
        rank += 1
    return rank


def bareiss_det(rows):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t n = len(a), k, i, j
    cdef list rk, ri
    cdef object prev = 1, pk, f
    cdef int sign = 1
    if n == 0:
        return 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = <list>a[k]
        pk = rk[k]
        for i in range(k + 1, n):
            ri = <list>a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def bareiss_rref(rows, Py_ssize_t ncols):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t n = len(a), r = 0, c, i, j, pi
    cdef list pivots = [], prow, ri
    cdef object prev = 1, piv, f, v, bestv
    for c in range(ncols):
        if r == n:
            break
        pi = -1
        bestv = None
        for i in range(r, n):
            v = (<list>a[i])[c]
            if v:
                v = abs(v)
                if bestv is None or v < bestv:
                    bestv = v
                    pi = i
        if pi < 0:
            continue
        a[r], a[pi] = a[pi], a[r]
        prow = <list>a[r]
        piv = prow[c]
        for i in range(n):
            if i == r:
                continue
            ri = <list>a[i]
            f = ri[c]
            if f:
                for j in range(ncols):
                    ri[j] = (piv * ri[j] - f * prow[j]) // prev
            else:
                for j in range(ncols):
                    ri[j] = (piv * ri[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, prev


cdef uint64_t _powmod(uint64_t b, uint64_t e, uint64_t p) nogil:
    cdef uint64_t r = 1
    b %= p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef uint64_t* _load(rows, Py_ssize_t n, Py_ssize_t m, uint64_t p) except NULL:
    cdef uint64_t* buf = <uint64_t*>malloc(n * m * sizeof(uint64_t) + 1)
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        r = rows[i]
        for j in range(m):
            buf[i * m + j] = <uint64_t>(r[j] % p)
    return buf


cdef Py_ssize_t _eliminate(uint64_t* a, Py_ssize_t n, Py_ssize_t m, uint64_t p,
                           bint full, Py_ssize_t* piv) nogil:
    cdef Py_ssize_t r = 0, c, i, j, pi
    cdef uint64_t inv, f, t
    for c in range(m):
        if r == n:
            break
        pi = -1
        for i in range(r, n):
            if a[i * m + c]:
                pi = i
                break
        if pi < 0:
            continue
        if pi != r:
            for j in range(m):
                t = a[r * m + j]
                a[r * m + j] = a[pi * m + j]
                a[pi * m + j] = t
        inv = _powmod(a[r * m + c], p - 2, p)
        for j in range(c, m):
            a[r * m + j] = a[r * m + j] * inv % p
        for i in range(0 if full else r + 1, n):
            if i == r:
                continue
            f = a[i * m + c]
            if f:
                for j in range(c, m):
                    a[i * m + j] = (a[i * m + j] + (p - f) * a[r * m + j]) % p
        piv[r] = c
        r += 1
    return r


def rank_mod_p(rows, Py_ssize_t ncols, p):
    if p >= MAX_NATIVE_PRIME:
        raise OverflowError("prime too large for native kernel")
    cdef Py_ssize_t n = len(rows), r
    if n == 0 or ncols == 0:
        return 0
    cdef uint64_t* a = _load(rows, n, ncols, p)
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(n * sizeof(Py_ssize_t))
    try:
        r = _eliminate(a, n, ncols, p, False, piv)
    finally:
        free(a)
        free(piv)
    return r


def rref_mod_p(rows, Py_ssize_t ncols, p):
    if p >= MAX_NATIVE_PRIME:
        raise OverflowError("prime too large for native kernel")
    cdef Py_ssize_t n = len(rows), r, i, j
    if n == 0 or ncols == 0:
        return [list(x) for x in rows], []
    cdef uint64_t* a = _load(rows, n, ncols, p)
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(n * sizeof(Py_ssize_t))
    try:
        r = _eliminate(a, n, ncols, p, True, piv)
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(n)]
        pivots = [piv[i] for i in range(r)]
    finally:
        free(a)
        free(piv)
    return out, pivots
