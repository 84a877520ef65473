"""Precision/recall/F1 triple, the unit score of every metric."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_pr(cls, precision: float, recall: float) -> "PRF":
        """Build the triple; F1 is the harmonic mean, 0 when p + r is not positive."""
        total = precision + recall
        f1 = 2.0 * precision * recall / total if total > 0.0 else 0.0
        return cls(precision=precision, recall=recall, f1=f1)


ZERO_PRF = PRF(0.0, 0.0, 0.0)
