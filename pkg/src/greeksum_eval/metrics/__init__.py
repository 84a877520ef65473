"""Per-pair summary scoring: ROUGE-1/2/L and embedding greedy matching."""

from greeksum_eval.metrics.prf import PRF

__all__ = ["PRF"]
