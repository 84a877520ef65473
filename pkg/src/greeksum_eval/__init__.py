"""Evaluation toolkit and extractive baselines for Greek news summarization.

Scores candidate summaries against references with ROUGE-1/2/L and greedy
embedding matching, generates LEAD-N and TextRank baseline summaries, and
aggregates macro F1 comparison reports over JSON Lines corpora.
"""

__version__ = "0.1.0"

from greeksum_eval.metrics.prf import PRF

__all__ = ["PRF", "__version__"]
