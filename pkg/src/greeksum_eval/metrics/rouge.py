"""ROUGE-N and ROUGE-L scoring over word-token sequences.

Exact-match metrics: clipped n-gram overlap for ROUGE-N, longest common
subsequence for ROUGE-L. No stemming, no synonym matching; empty inputs
score zero instead of raising so batch evaluation is total.
"""

from __future__ import annotations

from collections.abc import Sequence

from greeksum_eval import kernels
from greeksum_eval.metrics.prf import PRF, ZERO_PRF
from greeksum_eval.textproc import ngrams

__all__ = ["lcs_length", "rouge_l", "rouge_n"]


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> PRF:
    """Clipped n-gram overlap: each n-gram matches at most min(count) times."""
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    cand_counts = ngrams(candidate, n)
    ref_counts = ngrams(reference, n)
    overlap = sum((cand_counts & ref_counts).values())
    cand_total = sum(cand_counts.values())
    ref_total = sum(ref_counts.values())
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return PRF.from_pr(precision, recall)


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common subsequence of two token sequences."""
    return kernels.lcs_length(a, b)


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> PRF:
    """LCS-based triple over whole summaries (no sentence-level union)."""
    if not candidate or not reference:
        return ZERO_PRF
    length = kernels.lcs_length(candidate, reference)
    return PRF.from_pr(length / len(candidate), length / len(reference))
