"""MSTD set arithmetic, interval decompositions into MSTD subsets, and searches."""

from .setcore import (
    Classification,
    GapNotation,
    IntSet,
    SetParseError,
    SumDiffProfile,
    affine,
    diffset,
    diffset_pairwise,
    format_spohn,
    is_dpn,
    is_pn,
    is_spn,
    parse_set_literal,
    parse_spohn,
    profile,
    sumset,
    sumset_pairwise,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "GapNotation",
    "IntSet",
    "SetParseError",
    "SumDiffProfile",
    "affine",
    "diffset",
    "diffset_pairwise",
    "format_spohn",
    "is_dpn",
    "is_pn",
    "is_spn",
    "parse_set_literal",
    "parse_spohn",
    "profile",
    "sumset",
    "sumset_pairwise",
    "__version__",
]
