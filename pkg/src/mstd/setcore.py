"""Core integer-set arithmetic: bit-vector sets, sumsets, difference sets.

A finite nonempty set of integers is stored as (offset, bits) where bit j of
``bits`` is set iff ``offset + j`` is in the set, and ``offset = min``.  On
top of that representation this module provides the two sum/difference
kernels (shift-OR over the bit vector, and boolean convolution via FFT for
large dense sets), the sum/difference profile with MSTD classification, the
P_n family of fringe-coverage predicates, affine images, and the gap
("(a|d1,d2,...)") text notation.

Conventions used throughout:
  A+A = {x+y : x,y in A},  A-A = {x-y : x,y in A}
  A is MSTD iff |A+A| > |A-A|
  A is SP_n iff A+A  covers [2*min+n, 2*max-n]
  A is DP_n iff A-A  covers [(min-max)+n, (max-min)-n]
  A is P_n  iff both hold
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction  # noqa: F401  (re-exported convenience for callers)
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "IntSet",
    "Classification",
    "SumDiffProfile",
    "GapNotation",
    "SetParseError",
    "sumset",
    "diffset",
    "sumset_pairwise",
    "diffset_pairwise",
    "profile",
    "is_spn",
    "is_dpn",
    "is_pn",
    "affine",
    "parse_spohn",
    "format_spohn",
    "parse_set_literal",
]


class SetParseError(ValueError):
    """A set literal (JSON array / gap notation / stepped interval) is malformed."""


# ---------------------------------------------------------------------------
# bit-vector helpers
# ---------------------------------------------------------------------------

def _bits_from_sorted(values: Sequence[int]) -> tuple[int, int]:
    """(bits, offset) for a sorted, de-duplicated, nonempty sequence."""
    offset = values[0]
    bits = 0
    for v in values:
        bits |= 1 << (v - offset)
    return bits, offset


def _bits_to_array(bits: int, width: int) -> np.ndarray:
    """0/1 uint8 array of length >= width, little-endian bit order."""
    nbytes = (width + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")


def _array_to_bits(arr: np.ndarray) -> int:
    """Inverse of _bits_to_array for a 0/1 uint8 array."""
    packed = np.packbits(arr, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _reverse_bits(bits: int, width: int) -> int:
    """Reverse the low `width` bits of `bits`."""
    if width <= 4096:
        return int(format(bits, f"0{width}b")[::-1], 2)
    arr = _bits_to_array(bits, width)[:width]
    return _array_to_bits(arr[::-1])


class IntSet:
    """Immutable finite nonempty set of integers backed by an offset bit-vector.

    Equality and hashing are by mathematical content; the representation is
    normalized so that ``offset == min`` (bit 0 is always set).
    """

    __slots__ = ("_bits", "_offset", "_card")

    def __init__(self, elements: Iterable[int]):
        values = sorted(set(int(v) for v in elements))
        if not values:
            raise ValueError("IntSet must be nonempty")
        bits, offset = _bits_from_sorted(values)
        self._bits = bits
        self._offset = offset
        self._card = len(values)

    # -- alternate constructors ------------------------------------------------

    @classmethod
    def _raw(cls, bits: int, offset: int) -> "IntSet":
        """From a bit mask that may have leading zeros; normalizes offset."""
        if bits <= 0:
            raise ValueError("IntSet must be nonempty")
        low = (bits & -bits).bit_length() - 1
        obj = object.__new__(cls)
        obj._bits = bits >> low
        obj._offset = offset + low
        obj._card = (bits >> low).bit_count()
        return obj

    @classmethod
    def interval(cls, lo: int, hi: int, step: int = 1) -> "IntSet":
        """{lo, lo+step, ..., <= hi}; step >= 1."""
        if step < 1:
            raise ValueError(f"step must be >= 1, got {step}")
        if hi < lo:
            raise ValueError(f"empty interval [{lo},{hi}]")
        count = (hi - lo) // step + 1
        if step == 1:
            bits = (1 << count) - 1
        else:
            arr = np.zeros((count - 1) * step + 1, dtype=np.uint8)
            arr[::step] = 1
            bits = _array_to_bits(arr)
        return cls._raw(bits, lo)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "IntSet":
        values = np.unique(np.asarray(values, dtype=np.int64))
        if values.size == 0:
            raise ValueError("IntSet must be nonempty")
        offset = int(values[0])
        arr = np.zeros(int(values[-1]) - offset + 1, dtype=np.uint8)
        arr[values - offset] = 1
        return cls._raw(_array_to_bits(arr), offset)

    # -- basic queries -----------------------------------------------------------

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def min(self) -> int:
        return self._offset

    @property
    def max(self) -> int:
        return self._offset + self._bits.bit_length() - 1

    @property
    def span(self) -> int:
        """max - min (the diameter, not the element count)."""
        return self._bits.bit_length() - 1

    def __len__(self) -> int:
        return self._card

    def __contains__(self, v: int) -> bool:
        j = v - self._offset
        return 0 <= j and bool((self._bits >> j) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_list())

    def to_list(self) -> list[int]:
        if self._card > 2048:
            arr = _bits_to_array(self._bits, self._bits.bit_length())
            return (np.flatnonzero(arr) + self._offset).tolist()
        out = []
        bits = self._bits
        while bits:
            low = bits & -bits
            out.append(self._offset + low.bit_length() - 1)
            bits ^= low
        return out

    def to_array(self) -> np.ndarray:
        arr = _bits_to_array(self._bits, self._bits.bit_length())
        return np.flatnonzero(arr).astype(np.int64) + self._offset

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntSet)
            and self._offset == other._offset
            and self._bits == other._bits
        )

    def __hash__(self) -> int:
        return hash((self._offset, self._bits))

    def __repr__(self) -> str:
        if self._card <= 12:
            return f"IntSet({self.to_list()})"
        head = ", ".join(str(v) for v in self.to_list()[:6])
        return f"IntSet({{{head}, ...}} size={self._card}, range=[{self.min},{self.max}])"

    # -- set algebra ------------------------------------------------------------

    def union(self, *others: "IntSet") -> "IntSet":
        sets = (self,) + others
        offset = min(s._offset for s in sets)
        bits = 0
        for s in sets:
            bits |= s._bits << (s._offset - offset)
        return IntSet._raw(bits, offset)

    def intersection(self, other: "IntSet") -> "IntSet | None":
        """Intersection, or None when empty."""
        offset = min(self._offset, other._offset)
        bits = (self._bits << (self._offset - offset)) & (
            other._bits << (other._offset - offset)
        )
        return IntSet._raw(bits, offset) if bits else None

    def difference(self, other: "IntSet") -> "IntSet | None":
        """Elements of self not in other, or None when empty."""
        offset = min(self._offset, other._offset)
        bits = (self._bits << (self._offset - offset)) & ~(
            other._bits << (other._offset - offset)
        )
        return IntSet._raw(bits, offset) if bits else None

    def isdisjoint(self, other: "IntSet") -> bool:
        shift = other._offset - self._offset
        if shift >= 0:
            return not (self._bits & (other._bits << shift))
        return not ((self._bits << -shift) & other._bits)

    def issubset(self, other: "IntSet") -> bool:
        shift = self._offset - other._offset
        if shift < 0:
            return False
        return (self._bits << shift) & ~other._bits == 0

    def contains_range(self, lo: int, hi: int, step: int = 1) -> bool:
        """True iff every element of {lo, lo+step, ..., <= hi} is in the set.

        An empty range (hi < lo) is vacuously contained.
        """
        if hi < lo:
            return True
        if lo < self._offset:
            return False
        if step == 1:
            width = hi - lo + 1
            window = (1 << width) - 1
            return (self._bits >> (lo - self._offset)) & window == window
        return all((v in self) for v in range(lo, hi + 1, step))

    # -- transforms ---------------------------------------------------------------

    def shift(self, t: int) -> "IntSet":
        out = object.__new__(IntSet)
        out._bits = self._bits
        out._offset = self._offset + t
        out._card = self._card
        return out

    def scale(self, s: int) -> "IntSet":
        if s == 0:
            raise ValueError("scale must be nonzero")
        if s == 1:
            return self
        if s == -1:
            width = self._bits.bit_length()
            return IntSet._raw(_reverse_bits(self._bits, width), -(self._offset + width - 1))
        if s < 0:
            return self.scale(-1).scale(-s)
        arr = _bits_to_array(self._bits, self._bits.bit_length())
        idx = np.flatnonzero(arr) * s
        out = np.zeros(int(idx[-1]) + 1, dtype=np.uint8)
        out[idx] = 1
        return IntSet._raw(_array_to_bits(out), self._offset * s)

    def affine(self, scale: int, shift: int) -> "IntSet":
        """{scale*x + shift : x in self}; scale must be nonzero."""
        return self.scale(scale).shift(shift)


def affine(a: IntSet, scale: int, shift: int) -> IntSet:
    return a.affine(scale, shift)


# ---------------------------------------------------------------------------
# sumset / difference-set kernels
# ---------------------------------------------------------------------------
#
# Two interchangeable kernels compute the same bit masks:
#   * "shiftor":  OR of the bit-vector shifted by each element; cost is about
#     |A| * span/64 word operations, unbeatable when |A| is small.
#   % "convolve": boolean convolution via real FFT; cost ~ nfft*log(nfft),
#     the right choice for dense sets with spans of 1e5 and beyond.
# "auto" picks by a cost estimate; callers can force either for cross-checks.

_KERNELS = ("auto", "shiftor", "convolve")

# Calibration constant: one FFT pass of length nfft costs about as much as
# FFT_WORD_EQUIV * nfft word operations of the shift-OR loop.
FFT_WORD_EQUIV = 30
CONVOLVE_MIN_SPAN = 1 << 12


class KernelPrecisionError(RuntimeError):
    """FFT convolution produced counts too far from integers to trust."""


def _check_kernel(kernel: str) -> None:
    if kernel not in _KERNELS:
        raise ValueError(f"unknown kernel {kernel!r}; expected one of {_KERNELS}")


def _pick_kernel(card: int, width: int) -> str:
    if width < CONVOLVE_MIN_SPAN:
        return "shiftor"
    nfft = 1 << (2 * width - 1).bit_length()
    shiftor_cost = card * (width // 64 + 1)
    return "convolve" if shiftor_cost > FFT_WORD_EQUIV * nfft else "shiftor"


def _shiftor_sum_bits(bits: int) -> int:
    acc = 0
    rest = bits
    while rest:
        low = rest & -rest
        acc |= bits << (low.bit_length() - 1)
        rest ^= low
    return acc


def _shiftor_diff_bits(bits: int) -> int:
    """Mask of the non-negative differences (bit d <=> d in A-A, d >= 0)."""
    acc = 0
    rest = bits
    while rest:
        low = rest & -rest
        acc |= bits >> (low.bit_length() - 1)
        rest ^= low
    return acc


def _convolve_counts(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = len(x) + len(y) - 1
    nfft = 1 << (n - 1).bit_length()
    fx = np.fft.rfft(x, nfft)
    fy = fx if y is x else np.fft.rfft(y, nfft)
    conv = np.fft.irfft(fx * fy, nfft)[:n]
    rounded = np.rint(conv)
    if np.max(np.abs(conv - rounded)) > 0.125:
        raise KernelPrecisionError("FFT convolution drifted from integer counts")
    return rounded


def _convolve_sum_bits(bits: int, width: int) -> int:
    arr = _bits_to_array(bits, width)[:width].astype(np.float64)
    counts = _convolve_counts(arr, arr)
    return _array_to_bits((counts >= 0.5).astype(np.uint8))


def _convolve_diff_bits(bits: int, width: int) -> int:
    arr = _bits_to_array(bits, width)[:width].astype(np.float64)
    counts = _convolve_counts(arr, arr[::-1])
    # lag d corresponds to index (width-1) + d; keep d >= 0
    return _array_to_bits((counts[width - 1 :] >= 0.5).astype(np.uint8))


def _sum_bits(a: IntSet, kernel: str) -> int:
    _check_kernel(kernel)
    width = a.bits.bit_length()
    if kernel == "auto":
        kernel = _pick_kernel(len(a), width)
    if kernel == "convolve":
        try:
            return _convolve_sum_bits(a.bits, width)
        except KernelPrecisionError:
            pass
    return _shiftor_sum_bits(a.bits)


def _nonneg_diff_bits(a: IntSet, kernel: str) -> int:
    _check_kernel(kernel)
    width = a.bits.bit_length()
    if kernel == "auto":
        kernel = _pick_kernel(len(a), width)
    if kernel == "convolve":
        try:
            return _convolve_diff_bits(a.bits, width)
        except KernelPrecisionError:
            pass
    return _shiftor_diff_bits(a.bits)


def sumset(a: IntSet, kernel: str = "auto") -> IntSet:
    """A+A.  Result spans exactly [2*min, 2*max]."""
    return IntSet._raw(_sum_bits(a, kernel), 2 * a.offset)


def diffset(a: IntSet, kernel: str = "auto") -> IntSet:
    """A-A.  Symmetric about 0, always contains 0."""
    nonneg = _nonneg_diff_bits(a, kernel)
    width = a.bits.bit_length()
    full = (nonneg << (width - 1)) | _reverse_bits(nonneg, width)
    return IntSet._raw(full, -(width - 1))


def sumset_pairwise(a: IntSet) -> IntSet:
    """Independent O(|A|^2) reference path; kept free of bit tricks."""
    values = a.to_list()
    return IntSet({x + y for x in values for y in values})


def diffset_pairwise(a: IntSet) -> IntSet:
    values = a.to_list()
    return IntSet({x - y for x in values for y in values})


# ---------------------------------------------------------------------------
# profile and P_n predicates
# ---------------------------------------------------------------------------


class Classification(Enum):
    MSTD = "mstd"
    BALANCED = "balanced"
    DIFFERENCE_DOMINATED = "difference_dominated"


@dataclass(frozen=True)
class SumDiffProfile:
    """Cardinalities and missing elements of A+A and A-A.

    ``missing_sums`` lists the elements of [2*min, 2*max] absent from A+A;
    ``missing_diffs`` those of [-(max-min), max-min] absent from A-A.  Both
    are plain integer tuples (they are frequently empty, which IntSet by
    design cannot represent).
    """

    sum_count: int
    diff_count: int
    missing_sums: tuple[int, ...]
    missing_diffs: tuple[int, ...]
    classification: Classification

    @property
    def surplus(self) -> int:
        return self.sum_count - self.diff_count

    @property
    def is_mstd(self) -> bool:
        return self.classification is Classification.MSTD


def _missing_in_window(bits: int, width: int, base: int) -> tuple[int, ...]:
    missing = ~bits & ((1 << width) - 1)
    if not missing:
        return ()
    out = []
    while missing:
        low = missing & -missing
        out.append(base + low.bit_length() - 1)
        missing ^= low
    return tuple(out)


def profile(a: IntSet, kernel: str = "auto") -> SumDiffProfile:
    """Sum/difference counts, missing elements, and MSTD classification."""
    width = a.bits.bit_length()
    sum_bits = _sum_bits(a, kernel)
    nonneg = _nonneg_diff_bits(a, kernel)
    sum_count = sum_bits.bit_count()
    diff_count = 2 * nonneg.bit_count() - 1
    if sum_count > diff_count:
        cls = Classification.MSTD
    elif sum_count == diff_count:
        cls = Classification.BALANCED
    else:
        cls = Classification.DIFFERENCE_DOMINATED
    missing_sums = _missing_in_window(sum_bits, 2 * width - 1, 2 * a.offset)
    missing_pos = _missing_in_window(nonneg >> 1, width - 1, 1)
    missing_diffs = tuple(-d for d in reversed(missing_pos)) + missing_pos
    return SumDiffProfile(sum_count, diff_count, missing_sums, missing_diffs, cls)


def _pn_range_check(a: IntSet, n: int) -> None:
    if not 0 <= n <= a.span:
        raise ValueError(f"n={n} out of range [0, {a.span}] for this set")


def is_spn(a: IntSet, n: int, kernel: str = "auto") -> bool:
    """A+A covers [2*min+n, 2*max-n]."""
    _pn_range_check(a, n)
    sum_bits = _sum_bits(a, kernel)
    lo, hi = n, 2 * a.span - n  # bit coordinates relative to 2*min
    window = ((1 << (hi - lo + 1)) - 1) << lo
    return sum_bits & window == window


def is_dpn(a: IntSet, n: int, kernel: str = "auto") -> bool:
    """A-A covers [min-max+n, max-min-n]."""
    _pn_range_check(a, n)
    nonneg = _nonneg_diff_bits(a, kernel)
    hi = a.span - n
    window = (1 << (hi + 1)) - 1
    return nonneg & window == window


def is_pn(a: IntSet, n: int, kernel: str = "auto") -> bool:
    return is_spn(a, n, kernel) and is_dpn(a, n, kernel)


# ---------------------------------------------------------------------------
# gap notation and set literals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GapNotation:
    """A set written as (start | gap, gap, ...): start plus successive gaps."""

    start: int
    gaps: tuple[int, ...]

    def __post_init__(self):
        if any(g < 1 for g in self.gaps):
            raise ValueError(f"gaps must be positive, got {self.gaps}")

    @classmethod
    def from_set(cls, a: IntSet) -> "GapNotation":
        values = a.to_list()
        return cls(values[0], tuple(b - x for x, b in zip(values, values[1:])))

    def to_set(self) -> IntSet:
        values = [self.start]
        for g in self.gaps:
            values.append(values[-1] + g)
        return IntSet(values)

    def __str__(self) -> str:
        return f"({self.start}|{','.join(str(g) for g in self.gaps)})"


_SPOHN_RE = re.compile(r"^\(\s*(-?\d+)\s*\|\s*([0-9,\s]*)\)$")
_INTERVAL_RE = re.compile(r"^\[?\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*(?::\s*(\d+))?\s*\]?$")


def parse_spohn(text: str) -> IntSet:
    """Parse "(a|d1,d2,...)" gap notation; "(a|)" is the singleton {a}."""
    m = _SPOHN_RE.match(text.strip())
    if not m:
        raise SetParseError(f"malformed gap notation: {text!r}")
    start = int(m.group(1))
    body = m.group(2).strip()
    gaps: tuple[int, ...] = ()
    if body:
        try:
            gaps = tuple(int(p) for p in body.split(","))
        except ValueError as exc:
            raise SetParseError(f"malformed gap list in {text!r}") from exc
    try:
        return GapNotation(start, gaps).to_set()
    except ValueError as exc:
        raise SetParseError(str(exc)) from exc


def format_spohn(a: IntSet) -> str:
    return str(GapNotation.from_set(a))


def parse_set_literal(text: str) -> IntSet:
    """Parse any of the three interchangeable set literals.

    JSON integer array "[1,2,3]", gap notation "(2|1,2,4,1)", or stepped
    interval "a..b:s" (step defaults to 1; surrounding brackets allowed,
    so "[1..10]" works too).
    """
    text = text.strip()
    if not text:
        raise SetParseError("empty set literal")
    if text.startswith("("):
        return parse_spohn(text)
    m = _INTERVAL_RE.match(text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        step = int(m.group(3)) if m.group(3) else 1
        try:
            return IntSet.interval(lo, hi, step)
        except ValueError as exc:
            raise SetParseError(str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SetParseError(f"unrecognized set literal: {text!r}") from exc
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise SetParseError("JSON set literal must be an array of integers")
    if not data:
        raise SetParseError("set literal denotes the empty set")
    return IntSet(data)
