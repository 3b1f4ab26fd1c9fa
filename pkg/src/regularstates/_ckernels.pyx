# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int8_t

cnp.import_array()


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _top_bit(uint64_t x) nogil:
    return 63 - __builtin_clzll(x)


cdef int _rank(uint64_t* vecs, int k) nogil:
    cdef uint64_t piv[64]
    cdef int i, top, rank = 0
    cdef uint64_t r
    for i in range(64):
        piv[i] = 0
    for i in range(k):
        r = vecs[i]
        while r:
            top = _top_bit(r)
            if piv[top] == 0:
                piv[top] = r
                rank += 1
                break
            r ^= piv[top]
    return rank


def all_cut_ranks(cnp.ndarray rows_in, int n):
    """Cut rank of every vertex subset, indexed by bit mask."""
    if n > 30:
        raise ValueError("all_cut_ranks supports n <= 30")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] rows = np.ascontiguousarray(rows_in, dtype=np.uint64)
    cdef int64_t size = (<int64_t>1) << n
    cdef uint64_t full = <uint64_t>(size - 1)
    cdef cnp.ndarray[cnp.int8_t, ndim=1] out = np.zeros(size, dtype=np.int8)
    cdef uint64_t sub[64]
    cdef int64_t s, half
    cdef uint64_t m, comp
    cdef int k, r
    half = size >> 1 if n else 1
    with nogil:
        for s in range(1, half):
            comp = full ^ <uint64_t>s
            m = <uint64_t>s
            k = 0
            while m:
                sub[k] = rows[__builtin_ctzll(m)] & comp
                k += 1
                m &= m - 1
            r = _rank(sub, k)
            out[s] = r
            out[<int64_t>comp] = r
    return out


def rank_width_dp(cnp.ndarray cut_ranks_in, int n):
    """Same contract as the pure-Python version."""
    cdef cnp.ndarray[cnp.int8_t, ndim=1] cr = np.ascontiguousarray(cut_ranks_in, dtype=np.int8)
    cdef int64_t size = (<int64_t>1) << n
    cdef cnp.ndarray[cnp.int8_t, ndim=1] f = np.zeros(size, dtype=np.int8)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] split = np.zeros(size, dtype=np.int64)
    cdef int64_t s, low, rest, sub, s1, best_sub
    cdef int lb, best, a, b, v
    with nogil:
        for s in range(1, size):
            low = s & -s
            lb = cr[s] if s != size - 1 else 0
            if s == low:
                f[s] = lb
                continue
            rest = s ^ low
            best = n + 1
            best_sub = 0
            sub = (rest - 1) & rest
            while True:
                s1 = low | sub
                a = f[s1]
                b = f[s ^ s1]
                v = a if a > b else b
                if v < best:
                    best = v
                    best_sub = s1
                    if best <= lb:
                        break
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            f[s] = lb if lb > best else best
            split[s] = best_sub
    return f, split
