# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: same semantics as ``pybits``, word-sized masks.

All inner loops run without the GIL, so chunked scans parallelize with
plain threads.  Limits (enforced by the Python wrappers in ``search``):
fringe_scan needs 2n <= 60; two_split_scan and min_card_scan need the
sum mask to fit one word, i.e. r <= 32 / span <= 31.
"""
from libc.stdint cimport uint64_t, int64_t

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define POP64(x) __builtin_popcountll(x)
    #define CTZ64(x) __builtin_ctzll(x)
    #else
    static int POP64(unsigned long long v){int c=0;while(v){v&=v-1;++c;}return c;}
    static int CTZ64(unsigned long long v){int c=0;while(!(v&1)){v>>=1;++c;}return c;}
    #endif
    """
    int POP64(uint64_t x) nogil
    int CTZ64(uint64_t x) nogil

BACKEND = "cython"


cdef inline bint _passes_128(uint64_t mask, uint64_t wsum_lo, uint64_t wsum_hi,
                             uint64_t wdiff) nogil:
    """MSTD and window coverage for a mask whose sums may need two words."""
    cdef uint64_t slo = 0, shi = 0, d = 0, rest = mask
    cdef int p
    while rest:
        p = CTZ64(rest)
        slo |= mask << p
        if p:
            shi |= mask >> (64 - p)
        d |= mask >> p
        rest &= rest - 1
    if (slo & wsum_lo) != wsum_lo or (shi & wsum_hi) != wsum_hi:
        return False
    if (d & wdiff) != wdiff:
        return False
    return POP64(slo) + POP64(shi) > 2 * POP64(d) - 1


cdef inline bint _is_mstd64(uint64_t mask) nogil:
    cdef uint64_t s = 0, d = 0, rest = mask
    cdef int p
    while rest:
        p = CTZ64(rest)
        s |= mask << p
        d |= mask >> p
        rest &= rest - 1
    return POP64(s) > 2 * POP64(d) - 1


def is_mstd_mask(mask):
    return bool(_is_mstd64(<uint64_t> mask))


def fringe_scan(int n, forced1, free_positions, start, stop):
    cdef uint64_t c_forced1 = <uint64_t> forced1
    cdef uint64_t c_start = <uint64_t> start
    cdef uint64_t c_stop = <uint64_t> stop
    cdef uint64_t universe = ((<uint64_t> 1) << (2 * n)) - 1
    cdef int nf = len(free_positions)
    cdef int[64] pos
    cdef int j
    for j in range(nf):
        pos[j] = free_positions[j]

    # windows in bit coordinates (set bit v-1 <-> value v; sum bit s-2 <-> s)
    w1s = _window_bits(n, 3 * n - 2)
    w2s = _window_bits(n + 4, 3 * n - 6)
    cdef uint64_t w1s_lo = <uint64_t> (w1s & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t w1s_hi = <uint64_t> (w1s >> 64)
    cdef uint64_t w2s_lo = <uint64_t> (w2s & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t w2s_hi = <uint64_t> (w2s >> 64)
    cdef uint64_t w1d = <uint64_t> _window_bits(0, n - 1)
    cdef uint64_t w2d = <uint64_t> _window_bits(0, n - 5)

    out = []
    cdef uint64_t idx, b, m1, m2
    with nogil:
        for idx in range(c_start, c_stop):
            m1 = c_forced1
            b = idx
            while b:
                m1 |= (<uint64_t> 1) << pos[CTZ64(b)]
                b &= b - 1
            if not _passes_128(m1, w1s_lo, w1s_hi, w1d):
                continue
            m2 = universe & ~m1
            if not _passes_128(m2, w2s_lo, w2s_hi, w2d):
                continue
            with gil:
                out.append(m1)
    return out


def _window_bits(lo, hi):
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def two_split_scan(int r, start, stop):
    cdef uint64_t c_start = <uint64_t> start
    cdef uint64_t c_stop = <uint64_t> stop
    cdef uint64_t universe = ((<uint64_t> 1) << r) - 1
    cdef uint64_t idx, m1
    cdef int c1
    cdef int64_t found = -1
    with nogil:
        for idx in range(c_start, c_stop):
            m1 = 1 | (idx << 1)
            c1 = POP64(m1)
            if c1 < 8 or r - c1 < 8:
                continue
            if not _is_mstd64(m1):
                continue
            if _is_mstd64(universe & ~m1):
                found = <int64_t> m1
                break
    return int(found)


def min_card_scan(int span, start, stop, int best_cap):
    cdef uint64_t c_start = <uint64_t> start
    cdef uint64_t c_stop = <uint64_t> stop
    cdef uint64_t idx, mask
    cdef uint64_t best_mask = 0
    cdef int c, best_card = best_cap
    cdef bint have = False
    with nogil:
        for idx in range(c_start, c_stop):
            mask = 1 | (idx << 1)
            c = POP64(mask)
            if c >= best_card:
                continue
            if _is_mstd64(mask):
                best_card = c
                best_mask = mask
                have = True
    if not have:
        return None
    return (best_card, int(best_mask))
