"""Search-kernel backend selection.

The compiled extension (``_fastbits``) is used when it imported cleanly and
MSTD_PURE_PYTHON is unset; otherwise the pure-Python twin (``pybits``).
Both expose the same functions with identical results.
"""
from __future__ import annotations

import os

from . import pybits

_backend = pybits
if not os.environ.get("MSTD_PURE_PYTHON"):
    try:
        from . import _fastbits as _ext

        _backend = _ext
    except ImportError:
        pass


def backend():
    """The active kernel module (compiled extension or pure Python)."""
    return _backend


def backend_name() -> str:
    return _backend.BACKEND


def worker_count(requested: int | None = None) -> int:
    """Worker cap: explicit request > MSTD_THREADS env > cpu count (max 8)."""
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("MSTD_THREADS")
    if env:
        return max(1, int(env))
    return min(os.cpu_count() or 1, 8)
