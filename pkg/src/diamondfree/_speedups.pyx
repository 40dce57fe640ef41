# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled chain-classification kernels.

Mirrors ``_kernels_py`` exactly; see that module for the semantics.
Membership is table-driven: ``lookup[mask]`` holds member index + 1, or 0.
"""

import numpy as np


cdef long long _fact(int n) noexcept:
    cdef long long r = 1
    cdef int i
    for i in range(2, n + 1):
        r *= i
    return r


cdef inline int _popcount(unsigned long long x) noexcept nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef void _scan(int depth, int smax, unsigned long long mask,
                unsigned long long full, long long hits, int first, int last,
                long long tail, const int* lookup,
                const unsigned char* maxf, const unsigned char* minf,
                long long* acc, long long* mc, long long* mhs) noexcept nogil:
    cdef unsigned long long avail, bit, m2
    cdef int i
    if depth == smax:
        if hits:
            acc[0] += hits * tail
            if not maxf[last]:
                acc[1] += tail
            if not minf[first]:
                acc[2] += tail
            mc[first] += tail
            mhs[first] += hits * tail
        else:
            acc[2] += tail
        return
    avail = full & ~mask
    while avail:
        bit = avail & (~avail + 1)
        avail ^= bit
        m2 = mask | bit
        i = lookup[m2]
        if i == 0:
            _scan(depth + 1, smax, m2, full, hits, first, last, tail,
                  lookup, maxf, minf, acc, mc, mhs)
        elif hits:
            _scan(depth + 1, smax, m2, full, hits + 1, first, i - 1, tail,
                  lookup, maxf, minf, acc, mc, mhs)
        else:
            _scan(depth + 1, smax, m2, full, 1, i - 1, i - 1, tail,
                  lookup, maxf, minf, acc, mc, mhs)


def chain_scan_table(int n, int smax, int nmembers, int[::1] lookup,
                     unsigned char[::1] maximal, unsigned char[::1] minimal):
    cdef unsigned long long full = (<unsigned long long>1 << n) - 1
    cdef long long tail = _fact(n - smax)
    cdef long long acc[3]
    acc[0] = 0
    acc[1] = 0
    acc[2] = 0
    mc = np.zeros(max(nmembers, 1), dtype=np.int64)
    mhs = np.zeros(max(nmembers, 1), dtype=np.int64)
    cdef long long[::1] mc_v = mc
    cdef long long[::1] mhs_v = mhs
    cdef int i0 = lookup[0]
    if i0 == 0:
        _scan(0, smax, 0, full, 0, -1, -1, tail, &lookup[0],
              &maximal[0], &minimal[0], acc, &mc_v[0], &mhs_v[0])
    else:
        _scan(0, smax, 0, full, 1, i0 - 1, i0 - 1, tail, &lookup[0],
              &maximal[0], &minimal[0], acc, &mc_v[0], &mhs_v[0])
    return acc[0], acc[1], acc[2], mc[:nmembers].tolist(), mhs[:nmembers].tolist()


cdef long long _completions(int depth, unsigned long long mask, int n,
                            unsigned long long full, int need,
                            unsigned long long first_mask,
                            unsigned long long second_mask,
                            const long long* fact) noexcept nogil:
    cdef unsigned long long avail
    cdef long long c1, c2, c12
    cdef int r = n - depth
    if depth >= 2 or need <= depth:
        return fact[r]
    avail = full & ~mask
    if depth == 1:
        return _popcount(avail & second_mask) * fact[r - 1]
    c1 = _popcount(avail & first_mask)
    if second_mask == full:
        return c1 * fact[r - 1]
    c2 = _popcount(avail & second_mask)
    c12 = _popcount(avail & first_mask & second_mask)
    return (c1 * c2 - c12) * fact[r - 2]


cdef long long _count(int depth, unsigned long long mask, int n, int dmax,
                      unsigned long long full, int need, int require_hit,
                      unsigned long long first_mask,
                      unsigned long long second_mask,
                      const unsigned char* member,
                      const long long* fact) noexcept nogil:
    cdef unsigned long long avail, bit
    cdef long long total = 0
    if member[mask]:
        if require_hit:
            return _completions(depth, mask, n, full, need,
                                first_mask, second_mask, fact)
        return 0
    if depth == dmax:
        if require_hit:
            return 0
        return fact[n - depth]
    avail = full & ~mask
    if depth == 0 and first_mask != full:
        avail &= first_mask
    elif depth == 1 and second_mask != full:
        avail &= second_mask
    while avail:
        bit = avail & (~avail + 1)
        avail ^= bit
        total += _count(depth + 1, mask | bit, n, dmax, full, need,
                        require_hit, first_mask, second_mask, member, fact)
    return total


def count_chains_table(int n, int smax, unsigned char[::1] member,
                       unsigned long long first_mask,
                       unsigned long long second_mask, bint require_hit):
    cdef unsigned long long full = (<unsigned long long>1 << n) - 1
    first_mask &= full
    second_mask &= full
    if first_mask != full and n < 1:
        return 0
    if second_mask != full and n < 2:
        return 0
    cdef int need = 2 if second_mask != full else (1 if first_mask != full else 0)
    cdef int dmax = smax if smax > need else need
    cdef long long fact[25]
    cdef int i
    for i in range(25):
        fact[i] = _fact(i)
    return _count(0, 0, n, dmax, full, need, 1 if require_hit else 0,
                  first_mask, second_mask, &member[0], fact)
