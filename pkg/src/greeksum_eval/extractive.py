"""Extractive baselines: leading-sentence extraction and graph-ranked selection.

TextRank here means: sentences are graph nodes, edge weights count matching
word occurrences between two sentences normalized by the sum of the log
sentence lengths, and a damped PageRank over the weighted graph ranks the
nodes. Selection takes the top-scored sentences, breaking ties in favour of
earlier document position, and emits them in document order.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from greeksum_eval.textproc import normalize, split_sentences, word_tokenize

__all__ = [
    "PageRankResult",
    "RankedSentences",
    "TextRankParams",
    "build_graph",
    "lead_n",
    "pagerank",
    "sentence_similarity",
    "textrank_summarize",
]


@dataclass(frozen=True)
class TextRankParams:
    damping: float = 0.85
    epsilon: float = 1e-6
    max_iterations: int = 100

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValueError(f"damping must lie in (0, 1), got {self.damping}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )


@dataclass(frozen=True)
class PageRankResult:
    scores: np.ndarray
    iterations: int
    converged: bool


@dataclass(frozen=True)
class RankedSentences:
    """Sentence ranking (best first) and the selected indices in document order."""

    ranking: tuple[tuple[int, float], ...]
    selection: tuple[int, ...]


def lead_n(article: str, n: int) -> str:
    """First ``n`` sentences of the article, single-space joined."""
    if n < 1:
        raise ValueError(f"lead sentence count must be >= 1, got {n}")
    sentences = split_sentences(article)
    return " ".join(s.text for s in sentences[:n])


def sentence_similarity(si: Sequence[str], sj: Sequence[str]) -> float:
    """Matching word occurrences normalized by log sentence lengths.

    A word appearing m times in one sentence and k times in the other
    contributes m*k matches. Returns 0 when either sentence is empty or when
    both are too short for the log-length denominator to be positive.
    """
    if not si or not sj:
        return 0.0
    denom = math.log(len(si)) + math.log(len(sj))
    if denom <= 0.0:
        return 0.0
    ci = Counter(si)
    cj = Counter(sj)
    matches = sum(ci[w] * cj[w] for w in ci.keys() & cj.keys())
    return matches / denom


def build_graph(sentences: Sequence[Sequence[str]]) -> np.ndarray:
    """Symmetric similarity matrix with zero diagonal, one node per sentence."""
    n = len(sentences)
    weights = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            weights[i, j] = weights[j, i] = sentence_similarity(
                sentences[i], sentences[j]
            )
    return weights


def pagerank(
    graph: np.ndarray, params: TextRankParams = TextRankParams()
) -> PageRankResult:
    """Damped weighted PageRank: S_i = (1-d) + d * sum_j (w_ji / sum_k w_jk) S_j.

    Iterates from all-ones until the maximum absolute score change drops
    below ``params.epsilon`` or ``params.max_iterations`` is reached. Nodes
    without a positive-weight neighbour settle at ``1 - damping``.
    """
    weights = np.asarray(graph, dtype=np.float64)
    if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
        raise ValueError(f"graph must be a square matrix, got shape {weights.shape}")
    n = weights.shape[0]
    if n == 0:
        return PageRankResult(scores=np.zeros(0), iterations=0, converged=True)
    rowsums = weights.sum(axis=1)
    transitions = np.zeros_like(weights)
    positive = rowsums > 0.0
    transitions[positive] = weights[positive] / rowsums[positive, None]
    scores = np.ones(n, dtype=np.float64)
    base = 1.0 - params.damping
    converged = False
    iterations = 0
    for iterations in range(1, params.max_iterations + 1):
        updated = base + params.damping * (scores @ transitions)
        delta = float(np.max(np.abs(updated - scores)))
        scores = updated
        if delta < params.epsilon:
            converged = True
            break
    scores.setflags(write=False)
    return PageRankResult(scores=scores, iterations=iterations, converged=converged)


def textrank_summarize(
    article: str, k: int = 1, params: TextRankParams = TextRankParams()
) -> tuple[str, RankedSentences]:
    """Select the ``k`` top-ranked sentences of ``article`` in document order.

    Ties break toward earlier sentence position. An article with at most
    ``k`` sentences comes back whole; an empty article yields an empty
    summary and an empty ranking.
    """
    if k < 1:
        raise ValueError(f"selection size must be >= 1, got {k}")
    sentences = split_sentences(article)
    if not sentences:
        return "", RankedSentences(ranking=(), selection=())
    token_seqs = [word_tokenize(normalize(s.text)) for s in sentences]
    graph = build_graph(token_seqs)
    result = pagerank(graph, params)
    order = sorted(range(len(sentences)), key=lambda i: (-result.scores[i], i))
    ranking = tuple((i, float(result.scores[i])) for i in order)
    selection = tuple(sorted(order[: min(k, len(sentences))]))
    summary = " ".join(sentences[i].text for i in selection)
    return summary, RankedSentences(ranking=ranking, selection=selection)
