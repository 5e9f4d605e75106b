"""Pure-Python search kernels over word-sized bit masks.

Fallback backend for the compiled extension in ``_fastbits``; identical
semantics, Python big-int arithmetic.  All masks use bit v-1 for value v
(universe [1, r]) except ``min_card_scan`` which uses bit d for value d
(universe [0, span]).
"""
from __future__ import annotations

BACKEND = "python"


def _window(lo: int, hi: int) -> int:
    if hi < lo:
        return 0
    return ((1 << (hi - lo + 1)) - 1) << lo


def _sum_diff_masks(mask: int) -> tuple[int, int]:
    sums = 0
    diffs = 0
    rest = mask
    while rest:
        p = (rest & -rest).bit_length() - 1
        sums |= mask << p
        diffs |= mask >> p
        rest &= rest - 1
    return sums, diffs


def is_mstd_mask(mask: int) -> bool:
    sums, diffs = _sum_diff_masks(mask)
    return sums.bit_count() > 2 * diffs.bit_count() - 1


def fringe_scan(
    n: int,
    forced1: int,
    free_positions: tuple[int, ...],
    start: int,
    stop: int,
) -> list[int]:
    """Scan assignment indices [start, stop); return accepted A1 masks.

    Index bit j sends value free_positions[j]+1 to A1, else to A2.  A mask is
    accepted when A1 is MSTD and P_n and A2 = [1,2n] \\ A1 is MSTD and P_{n-4}
    (all other hypotheses hold by construction of the forced fringe).
    """
    universe = (1 << (2 * n)) - 1
    w1_sum = _window(n, 3 * n - 2)  # sum bit x+y-2 <-> value x+y
    w1_diff = _window(0, n - 1)
    w2_sum = _window(n + 4, 3 * n - 6)
    w2_diff = _window(0, n - 5)

    # spread tables: low/high halves of the index -> OR of free-position bits
    nf = len(free_positions)
    half = nf // 2
    lo_tab = []
    for v in range(1 << half):
        m = 0
        for j in range(half):
            if v >> j & 1:
                m |= 1 << free_positions[j]
        lo_tab.append(m)
    hi_tab = []
    for v in range(1 << (nf - half)):
        m = 0
        for j in range(nf - half):
            if v >> j & 1:
                m |= 1 << free_positions[half + j]
        hi_tab.append(m)

    lo_mask = (1 << half) - 1
    out = []
    for idx in range(start, stop):
        m1 = forced1 | lo_tab[idx & lo_mask] | hi_tab[idx >> half]
        s1, d1 = _sum_diff_masks(m1)
        if s1 & w1_sum != w1_sum or d1 & w1_diff != w1_diff:
            continue
        if s1.bit_count() <= 2 * d1.bit_count() - 1:
            continue
        m2 = universe & ~m1
        s2, d2 = _sum_diff_masks(m2)
        if s2 & w2_sum != w2_sum or d2 & w2_diff != w2_diff:
            continue
        if s2.bit_count() <= 2 * d2.bit_count() - 1:
            continue
        out.append(m1)
    return out


def two_split_scan(r: int, start: int, stop: int) -> int:
    """First mask in [start, stop) splitting [1, r] into two MSTD parts.

    Index i encodes the part of values 2..r (bit j of i <-> value j+2); value
    1 always goes to the first part.  Returns the accepting first-part mask,
    or -1.  Parts with fewer than 8 elements are skipped (no MSTD set is
    smaller).
    """
    universe = (1 << r) - 1
    for idx in range(start, stop):
        m1 = 1 | (idx << 1)
        c1 = m1.bit_count()
        if c1 < 8 or r - c1 < 8:
            continue
        if not is_mstd_mask(m1):
            continue
        if is_mstd_mask(universe & ~m1):
            return m1
    return -1


def min_card_scan(
    span: int, start: int, stop: int, best_cap: int
) -> tuple[int, int] | None:
    """Smallest MSTD subset of [0, span] containing 0, scanning [start, stop).

    Index i encodes membership of 1..span.  Only candidates with fewer than
    best_cap elements are examined; returns (cardinality, mask) minimizing
    (cardinality, mask), or None.
    """
    best: tuple[int, int] | None = None
    cap = best_cap
    for idx in range(start, stop):
        mask = 1 | (idx << 1)
        c = mask.bit_count()
        if c >= cap:
            continue
        if is_mstd_mask(mask):
            best = (c, mask)
            cap = c
    return best
