"""Longest-common-subsequence kernel with compiled and pure backends.

The quadratic LCS table dominates the cost of scoring large batches, so it is
implemented twice: a Cython extension (built at install time) and a pure
Python fallback. The compiled backend is picked at import when available;
set ``GREEKSUM_EVAL_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from collections.abc import Sequence
from typing import Hashable

from greeksum_eval.kernels import _pure

if os.environ.get("GREEKSUM_EVAL_PURE") == "1":
    _native = None
else:
    try:
        from greeksum_eval.kernels import _native  # type: ignore[attr-defined]
    except ImportError:
        _native = None

BACKEND: str = "cython" if _native is not None else "python"

__all__ = ["BACKEND", "lcs_length"]


def _encode(a: Sequence[Hashable], b: Sequence[Hashable]) -> tuple[array, array]:
    # Both backends run the DP over small integers, not the tokens themselves.
    ids: dict[Hashable, int] = {}
    ea = array("i", (ids.setdefault(t, len(ids)) for t in a))
    eb = array("i", (ids.setdefault(t, len(ids)) for t in b))
    return ea, eb


def lcs_length(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Length of the longest (not necessarily contiguous) common subsequence."""
    if not a or not b:
        return 0
    ea, eb = _encode(a, b)
    if _native is not None:
        return _native.lcs_length_ids(ea, eb)
    return _pure.lcs_length_ids(ea, eb)
