"""Two-part decompositions of [1, 2n+m+4k+4] into MSTD sets.

The construction glues a validated base pair (A1, A2) partitioning [1, 2n]
onto structured transition blocks (the O-blocks) and a partitioned middle
region whose two halves must carry chains of adjacent pairs / triplets.
Every assembly is re-verified through the profile machinery: the theory is
trusted, the implementation is not.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .partition import Partition
from .setcore import IntSet, is_pn, is_spn, profile

__all__ = [
    "BasePair",
    "BasePairError",
    "MiddlePlan",
    "MiddleDiagnostics",
    "MiddleError",
    "AssemblyError",
    "OBlocks",
    "base_pair_violations",
    "validate_base_pair",
    "build_o_blocks",
    "check_middles",
    "build_middles",
    "middle_min_m",
    "assemble_ft",
    "assemble_ss",
    "two_decompose",
]

RANDOM_MIDDLE_ATTEMPTS = 10_000


class BasePairError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


class MiddleError(ValueError):
    pass


class AssemblyError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class BasePair:
    """A validated (A1, A2, n): the seed fringes of the 2-decomposition."""

    a1: IntSet
    a2: IntSet
    n: int

    @property
    def l1(self) -> IntSet:
        return self.a1.intersection(IntSet.interval(1, self.n))

    @property
    def r1(self) -> IntSet:
        return self.a1.intersection(IntSet.interval(self.n + 1, 2 * self.n))

    @property
    def l2(self) -> IntSet:
        return self.a2.intersection(IntSet.interval(1, self.n))

    @property
    def r2(self) -> IntSet:
        return self.a2.intersection(IntSet.interval(self.n + 1, 2 * self.n))

    def to_dict(self) -> dict:
        return {"A1": self.a1.to_list(), "A2": self.a2.to_list(), "n": self.n}

    @classmethod
    def from_dict(cls, data: dict, require_pn: bool = True) -> "BasePair":
        return validate_base_pair(
            IntSet(data["A1"]), IntSet(data["A2"]), int(data["n"]), require_pn
        )


def base_pair_violations(
    a1: IntSet, a2: IntSet, n: int, require_pn: bool = True
) -> list[str]:
    """Check every base-pair hypothesis; return the list of failures.

    With require_pn=False the two P-index conditions (A1 is P_n, A2 is
    P_{n-4}) are skipped; that weaker convention is what reproduces the
    published pair count at n=20 (see search.enumerate_fringe_pairs).
    """
    v: list[str] = []
    if n < 8:
        return [f"n={n} is too small for the fringe conditions (need n >= 8)"]
    if not a1.isdisjoint(a2):
        v.append("(1) A1 and A2 are not disjoint")
    interval = IntSet.interval(1, 2 * n)
    if a1.union(a2) != interval:
        v.append(f"(1) A1 and A2 do not cover [1,{2 * n}]")
    for name, s in (("A1", a1), ("A2", a2)):
        if s.min < 1 or s.max > 2 * n:
            v.append(f"(2) {name} is not contained in [1,{2 * n}]")
    for val in (1, 2, 3, 4, n):
        if val not in a1:
            v.append(f"(3) {val} missing from L1")
            break
    if n + 1 not in a1 or not a1.contains_range(2 * n - 3, 2 * n):
        v.append(f"(3) {{{n + 1}}} u [{2 * n - 3},{2 * n}] not contained in R1")
    if not a2.contains_range(5, 7):
        v.append("(4) [5,7] not contained in L2")
    if not a2.contains_range(2 * n - 6, 2 * n - 4):
        v.append(f"(4) [{2 * n - 6},{2 * n - 4}] not contained in R2")
    if v:
        return v
    for name, s, idx in (("A1", a1, n), ("A2", a2, n - 4)):
        if not profile(s).is_mstd:
            v.append(f"{name} is not MSTD")
        if require_pn and not is_pn(s, idx):
            v.append(f"{name} is not P_{idx}")
    return v


def validate_base_pair(
    a1: IntSet, a2: IntSet, n: int, require_pn: bool = True
) -> BasePair:
    violations = base_pair_violations(a1, a2, n, require_pn)
    if violations:
        raise BasePairError(violations)
    return BasePair(a1, a2, n)


# ---------------------------------------------------------------------------
# O-blocks
# ---------------------------------------------------------------------------


class OBlocks(NamedTuple):
    o11: IntSet
    o12: IntSet
    o21: IntSet
    o22: IntSet


def _with_step2(head: list[int], lo: int, hi: int, tail: list[int]) -> IntSet:
    return IntSet(head + list(range(lo, hi + 1, 2)) + tail)


def build_o_blocks(n: int, k: int, m: int) -> OBlocks:
    """The four transition blocks bridging fringes and middles.

    Requires 2k >= n+4 and m >= 6 (below that the blocks collide and the
    guaranteed unions [n+1, n+2k+5] and [n+m+2k, n+m+4k+4] cannot both hold).
    """
    if 2 * k < n + 4:
        raise ValueError(f"k={k} too small: need k >= n/2+2 = {n / 2 + 2:g}")
    if m < 6:
        raise ValueError(f"m={m} too small: the transition blocks collide for m < 6")
    o11 = _with_step2([n + 4], n + 5, n + 2 * k + 1, [n + 2 * k + 2])
    o12 = _with_step2(
        [n + m + 2 * k + 3], n + m + 2 * k + 4, n + m + 4 * k, [n + m + 4 * k + 1]
    )
    o21 = IntSet(
        list(range(n + 1, n + 4))
        + list(range(n + 6, n + 2 * k + 1, 2))
        + list(range(n + 2 * k + 3, n + 2 * k + 6))
    )
    o22 = IntSet(
        list(range(n + m + 2 * k, n + m + 2 * k + 3))
        + list(range(n + m + 2 * k + 5, n + m + 4 * k, 2))
        + list(range(n + m + 4 * k + 2, n + m + 4 * k + 5))
    )
    assert o11.union(o21) == IntSet.interval(n + 1, n + 2 * k + 5)
    assert o12.union(o22) == IntSet.interval(n + m + 2 * k, n + m + 4 * k + 4)
    assert o11.isdisjoint(o21) and o12.isdisjoint(o22)
    assert o11.union(o21).isdisjoint(o12.union(o22))
    return OBlocks(o11, o12, o21, o22)


# ---------------------------------------------------------------------------
# middle plans: chains of adjacent pairs / triplets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MiddlePlan:
    m1: IntSet
    m2: IntSet
    n: int
    k: int
    m: int

    @property
    def region(self) -> tuple[int, int]:
        n, k, m = self.n, self.k, self.m
        return (n + 2 * k + 6, n + m + 2 * k - 1)


@dataclass(frozen=True)
class MiddleDiagnostics:
    ok: bool
    failures: tuple[str, ...]


def _run_starts(s: IntSet, run_len: int) -> list[int]:
    bits = s.bits
    acc = bits
    for j in range(1, run_len):
        acc &= bits >> j
    out = []
    while acc:
        low = acc & -acc
        out.append(s.offset + low.bit_length() - 1)
        acc ^= low
    return out


def _chain_failure(
    label: str,
    members: IntSet | None,
    run_len: int,
    first_window: tuple[int, int],
    last_window: tuple[int, int],
    max_gap: int,
) -> str | None:
    """None if `members` hosts a chain of runs from one window to the other.

    A run of length L "in [a, b]" starts at t with t >= a and t+L-1 <= b;
    successive run starts in the chain may be at most max_gap apart.
    """
    runs = _run_starts(members, run_len) if members is not None else []
    what = "pair" if run_len == 2 else "triplet"
    if not runs:
        return f"{label}: no adjacent {what} at all"
    f_lo, f_hi = first_window[0], first_window[1] - run_len + 1
    l_lo, l_hi = last_window[0], last_window[1] - run_len + 1
    best_gap = None
    cluster_start = 0
    clusters = []
    for i in range(1, len(runs) + 1):
        if i == len(runs) or runs[i] - runs[i - 1] > max_gap:
            clusters.append(runs[cluster_start:i])
            cluster_start = i
    have_first = any(f_lo <= t <= f_hi for c in clusters for t in c)
    have_last = any(l_lo <= t <= l_hi for c in clusters for t in c)
    for c in clusters:
        first = [t for t in c if f_lo <= t <= f_hi]
        last = [t for t in c if l_lo <= t <= l_hi]
        if first and last and min(first) <= max(last):
            return None
    if not have_first:
        return f"{label}: no {what} starts in the opening window [{f_lo},{f_hi}]"
    if not have_last:
        return f"{label}: no {what} starts in the closing window [{l_lo},{l_hi}]"
    for i in range(1, len(runs)):
        gap = runs[i] - runs[i - 1]
        if gap > max_gap and (best_gap is None or gap < best_gap):
            best_gap = gap
    return (
        f"{label}: {what} chain broken, a gap of {best_gap} between successive "
        f"{what} starts exceeds the limit {max_gap}"
    )


def check_middles(plan: MiddlePlan) -> MiddleDiagnostics:
    """Verify the three middle conditions; every failed clause is reported."""
    n, k, m = plan.n, plan.k, plan.m
    lo, hi = plan.region
    failures: list[str] = []
    if hi < lo:
        return MiddleDiagnostics(False, (f"(iii) region [{lo},{hi}] is empty",))
    region = IntSet.interval(lo, hi)
    for name, s in (("M1", plan.m1), ("M2", plan.m2)):
        if not s.issubset(region):
            failures.append(f"(iii) {name} is not contained in the region [{lo},{hi}]")
    if not plan.m1.isdisjoint(plan.m2):
        failures.append("(iii) M1 and M2 overlap")
    union = plan.m1.union(plan.m2)
    if union != region and union.issubset(region):
        from .partition import _summarize

        missing = region.difference(union)
        failures.append(
            f"(iii) union misses {_summarize(missing.bits, missing.offset)} "
            f"from [{lo},{hi}]"
        )
    fail1 = _chain_failure(
        "(i) M1", plan.m1, 2, (lo, n + 4 * k + 1), (n + m + 4, hi), 2 * k - 1
    )
    if fail1:
        failures.append(fail1)
    fail2 = _chain_failure(
        "(ii) M2", plan.m2, 3, (lo, n + 4 * k + 5), (n + m, hi), 2 * k + 5
    )
    if fail2:
        failures.append(fail2)
    return MiddleDiagnostics(not failures, tuple(failures))


def _canonical_middles(n: int, k: int, m: int) -> MiddlePlan | None:
    """Period-5 tiling: {t,t+1} to M1, {t+2,t+3,t+4} to M2, leftovers to M1.

    If a terminal-window clause fails, the five topmost region elements are
    reassigned as pair-for-M1 / triplet-for-M2 and the plan is re-checked.
    """
    lo, hi = n + 2 * k + 6, n + m + 2 * k - 1
    size = hi - lo + 1
    if size < 5:
        return None
    m1: list[int] = []
    m2: list[int] = []
    for t in range(lo, hi + 1 - 4, 5):
        m1 += [t, t + 1]
        m2 += [t + 2, t + 3, t + 4]
    leftover_from = lo + (size // 5) * 5
    m1 += list(range(leftover_from, hi + 1))
    plan = MiddlePlan(IntSet(m1), IntSet(m2), n, k, m)
    if check_middles(plan).ok:
        return plan
    top = set(range(hi - 4, hi + 1))
    m1r = sorted(set(m1) - top | {hi - 1, hi})
    m2r = sorted(set(m2) - top | {hi - 4, hi - 3, hi - 2})
    plan = MiddlePlan(IntSet(m1r), IntSet(m2r), n, k, m)
    return plan if check_middles(plan).ok else None


@lru_cache(maxsize=None)
def middle_min_m(n: int, k: int) -> int:
    """Smallest m whose canonical middle plan verifies (found by scan)."""
    for m in range(7, 4 * k + 64):
        if _canonical_middles(n, k, m) is not None:
            return m
    raise MiddleError(f"no workable middle size found for n={n}, k={k}")


def build_middles(
    n: int, k: int, m: int, strategy: str = "canonical", seed: int | None = None
) -> MiddlePlan:
    lo, hi = n + 2 * k + 6, n + m + 2 * k - 1
    if hi < lo:
        raise MiddleError(
            f"middle region [{lo},{hi}] is empty (m={m}); chains need m >= "
            f"{middle_min_m(n, k)}"
        )
    if strategy == "canonical":
        plan = _canonical_middles(n, k, m)
        if plan is None:
            raise MiddleError(
                f"region [{lo},{hi}] too short to host both chains; smallest "
                f"workable m for (n={n}, k={k}) is {middle_min_m(n, k)}"
            )
        return plan
    if strategy != "random":
        raise ValueError(f"unknown strategy {strategy!r}")
    if seed is None:
        seed = 0
    size = hi - lo + 1
    for attempt in range(RANDOM_MIDDLE_ATTEMPTS):
        rng = np.random.Generator(np.random.Philox(key=[seed, attempt]))
        draw = rng.integers(0, 2, size=size)
        if draw.min() == draw.max():
            continue
        m1 = IntSet.from_array(np.flatnonzero(draw == 0) + lo)
        m2 = IntSet.from_array(np.flatnonzero(draw == 1) + lo)
        plan = MiddlePlan(m1, m2, n, k, m)
        if check_middles(plan).ok:
            return plan
    raise MiddleError(
        f"no random middle plan verified after {RANDOM_MIDDLE_ATTEMPTS} attempts "
        f"(n={n}, k={k}, m={m}, seed={seed})"
    )


# ---------------------------------------------------------------------------
# assemblies
# ---------------------------------------------------------------------------


def _assemble(
    l: IntSet, r: IntSet, o1: IntSet, o2: IntSet, middle: IntSet | None, shift: int
) -> IntSet:
    pieces = [l, o1, o2, r.shift(shift)]
    if middle is not None:
        pieces.append(middle)
    return pieces[0].union(*pieces[1:])


def assemble_ft(
    l: IntSet,
    r: IntSet,
    n: int,
    k: int,
    m: int,
    middle: IntSet | None = None,
    verify: bool = True,
) -> IntSet:
    """First-type assembly: L u O1 u M u O2 u (R+m+4k+4), with L holding the
    low fringe [1,4] u {n} and R the high fringe {n+1} u [2n-3,2n].

    The chain condition on the middle is waived when m <= 2k-1: the block
    sums already cover the target window, so any middle (or none) works.
    Verification (SP_n and MSTD of the result) always runs unless disabled.
    """
    v: list[str] = []
    if not (l.min >= 1 and l.max <= n):
        v.append(f"L must lie in [1,{n}]")
    if not (all(x in l for x in (1, 2, 3, 4)) and n in l):
        v.append(f"[1,4] u {{{n}}} must be contained in L")
    if not (r.min >= n + 1 and r.max <= 2 * n):
        v.append(f"R must lie in [{n + 1},{2 * n}]")
    if n + 1 not in r or not r.contains_range(2 * n - 3, 2 * n):
        v.append(f"{{{n + 1}}} u [{2 * n - 3},{2 * n}] must be contained in R")
    if 2 * k < n + 4:
        v.append(f"k={k} too small: need k >= n/2+2")
    if m < 0:
        v.append("m must be >= 0")
    if not v:
        a = l.union(r)
        pf = profile(a)
        if not pf.is_mstd:
            v.append("L u R is not MSTD")
        if not is_pn(a, n):
            v.append(f"L u R is not P_{n}")
    region = (n + 2 * k + 3, n + m + 2 * k + 2)
    if middle is not None and not v:
        if region[1] < region[0]:
            v.append(f"middle given but the region [{region[0]},{region[1]}] is empty")
        elif not middle.issubset(IntSet.interval(*region)):
            v.append(f"middle not contained in [{region[0]},{region[1]}]")
    if m > 2 * k - 1 and not v:
        fail = _chain_failure(
            "middle",
            middle,
            2,
            (region[0], n + 4 * k + 1),
            (n + m + 4, region[1]),
            2 * k - 1,
        )
        if fail:
            v.append(fail)
    if v:
        raise AssemblyError(v)
    o1 = _with_step2([n + 4], n + 5, n + 2 * k + 1, [n + 2 * k + 2])
    o2 = _with_step2(
        [n + m + 2 * k + 3], n + m + 2 * k + 4, n + m + 4 * k, [n + m + 4 * k + 1]
    )
    out = _assemble(l, r, o1, o2, middle, m + 4 * k + 4)
    if verify:
        if not is_spn(out, n):
            raise AssemblyError([f"assembled set failed the SP_{n} verification"])
        if not profile(out).is_mstd:
            raise AssemblyError(["assembled set failed the MSTD verification"])
    return out


def assemble_ss(
    l: IntSet,
    r: IntSet,
    n: int,
    k: int,
    m: int,
    middle: IntSet | None = None,
    verify: bool = True,
) -> IntSet:
    """Second-type assembly with interval-shaped blocks; L holds [5,7] and R
    holds [2n-6,2n-4].  The triplet-chain condition is waived when m <= 2k+10
    (the blocks bridge the window on their own).  Verifies SP_{n-4} + MSTD.
    """
    v: list[str] = []
    if not (l.min >= 5 and l.max <= n):
        v.append(f"L must lie in [5,{n}]")
    if not l.contains_range(5, 7):
        v.append("[5,7] must be contained in L")
    if not (r.min >= n + 1 and r.max <= 2 * n - 4):
        v.append(f"R must lie in [{n + 1},{2 * n - 4}]")
    if not r.contains_range(2 * n - 6, 2 * n - 4):
        v.append(f"[{2 * n - 6},{2 * n - 4}] must be contained in R")
    if 2 * k < n - 10:
        v.append(f"k={k} too small: need k >= n/2-5")
    if k < 3:
        v.append("k must be >= 3 for the block shapes")
    if m < 0:
        v.append("m must be >= 0")
    if not v:
        a = l.union(r)
        pf = profile(a)
        if not pf.is_mstd:
            v.append("L u R is not MSTD")
        if not is_pn(a, n - 4):
            v.append(f"L u R is not P_{n - 4}")
    region = (n + 2 * k + 6, n + m + 2 * k - 1)
    if middle is not None and not v:
        if region[1] < region[0]:
            v.append(f"middle given but the region [{region[0]},{region[1]}] is empty")
        elif not middle.issubset(IntSet.interval(*region)):
            v.append(f"middle not contained in [{region[0]},{region[1]}]")
    if m > 2 * k + 10 and not v:
        fail = _chain_failure(
            "middle",
            middle,
            3,
            (region[0], n + 4 * k + 5),
            (n + m, region[1]),
            2 * k + 5,
        )
        if fail:
            v.append(fail)
    if v:
        raise AssemblyError(v)
    o1 = IntSet(
        list(range(n + 1, n + 4))
        + list(range(n + 6, n + 2 * k + 1, 2))
        + list(range(n + 2 * k + 3, n + 2 * k + 6))
    )
    o2 = IntSet(
        list(range(n + m + 2 * k, n + m + 2 * k + 3))
        + list(range(n + m + 2 * k + 5, n + m + 4 * k, 2))
        + list(range(n + m + 4 * k + 2, n + m + 4 * k + 5))
    )
    out = _assemble(l, r, o1, o2, middle, m + 4 * k + 4)
    if verify:
        if not is_spn(out, n - 4):
            raise AssemblyError([f"assembled set failed the SP_{n - 4} verification"])
        if not profile(out).is_mstd:
            raise AssemblyError(["assembled set failed the MSTD verification"])
    return out


def two_decompose(
    base: BasePair,
    k: int,
    m: int,
    strategy: str = "canonical",
    seed: int | None = None,
) -> Partition:
    """Partition [1, 2n+m+4k+4] into two MSTD parts grown from `base`.

    Both parts are re-verified (MSTD via profile, disjoint cover of the
    interval); failures raise rather than returning a bad partition.
    """
    n = base.n
    if 2 * k < n + 4:
        raise ValueError(f"k={k} too small: need k >= n/2+2 = {n / 2 + 2:g}")
    m_min = middle_min_m(n, k)
    if m < m_min:
        raise ValueError(
            f"m={m} too small for the middle chains; need m >= {m_min} at n={n}, k={k}"
        )
    plan = build_middles(n, k, m, strategy, seed)
    blocks = build_o_blocks(n, k, m)
    shift = m + 4 * k + 4
    a1p = base.l1.union(blocks.o11, plan.m1, blocks.o12, base.r1.shift(shift))
    a2p = base.l2.union(blocks.o21, plan.m2, blocks.o22, base.r2.shift(shift))
    return Partition.build([a1p, a2p], 2 * n + m + 4 * k + 4, require_mstd=True)
