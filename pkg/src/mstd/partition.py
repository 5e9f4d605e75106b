"""Ordered partitions of [1, r] into pairwise-disjoint integer sets."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .setcore import Classification, IntSet, SumDiffProfile, profile


class PartitionError(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint nonempty sets covering [1, r], in a fixed order."""

    parts: tuple[IntSet, ...]
    r: int

    @classmethod
    def build(
        cls,
        parts: Iterable[IntSet],
        r: int,
        require_mstd: bool = True,
        kernel: str = "auto",
    ) -> "Partition":
        """Validate and wrap; raises PartitionError listing every violation."""
        parts = tuple(parts)
        violations = cover_violations(parts, r)
        if require_mstd and not violations:
            for i, pf in enumerate(profile(p, kernel) for p in parts):
                if pf.classification is not Classification.MSTD:
                    violations.append(
                        f"part {i + 1} is {pf.classification.value} "
                        f"(|S+S|={pf.sum_count}, |S-S|={pf.diff_count})"
                    )
        if violations:
            raise PartitionError(violations)
        return cls(parts, r)

    def profiles(self, kernel: str = "auto") -> list[SumDiffProfile]:
        return [profile(p, kernel) for p in self.parts]

    def to_dict(self) -> dict:
        return {
            "interval": [1, self.r],
            "parts": [p.to_list() for p in self.parts],
        }


def cover_violations(parts: Sequence[IntSet], r: int) -> list[str]:
    """Why `parts` fail to partition [1, r]; empty list when they do."""
    violations: list[str] = []
    if not parts:
        return ["no parts"]
    offset = min(p.offset for p in parts)
    union = 0
    total = 0
    for p in parts:
        union |= p.bits << (p.offset - offset)
        total += len(p)
    target_bits = ((1 << r) - 1) << (1 - offset)
    if total > union.bit_count():
        for i, p in enumerate(parts):
            for j in range(i + 1, len(parts)):
                if not p.isdisjoint(parts[j]):
                    violations.append(f"parts {i + 1} and {j + 1} overlap")
    if union != target_bits:
        missing = target_bits & ~union
        extra = union & ~target_bits
        if missing:
            violations.append(f"union misses {_summarize(missing, offset)} from [1,{r}]")
        if extra:
            violations.append(f"union exceeds [1,{r}] at {_summarize(extra, offset)}")
    return violations


def _summarize(bits: int, offset: int) -> str:
    """Compact run-length description of the set bits, e.g. '[55,68]'."""
    values = []
    while bits:
        low = bits & -bits
        values.append(offset + low.bit_length() - 1)
        bits ^= low
        if len(values) > 4096:
            break
    runs = []
    start = prev = values[0]
    for v in values[1:]:
        if v == prev + 1:
            prev = v
            continue
        runs.append((start, prev))
        start = prev = v
    runs.append((start, prev))
    out = ", ".join(f"{a}" if a == b else f"[{a},{b}]" for a, b in runs[:8])
    if len(runs) > 8:
        out += ", ..."
    return out
