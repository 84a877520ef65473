"""Greedy cosine matching over contextual token embeddings.

The scoring core is independent of any model runtime: embeddings arrive
either from a JSON Lines store file written by an offline exporter, or from
synthetic providers (one-hot token identity) used for testing. Rows are
unit-normalized at ingestion so cosine similarity reduces to a dot product.
No idf weighting, no baseline rescaling.
"""

from __future__ import annotations

import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from greeksum_eval.metrics.prf import PRF, ZERO_PRF
from greeksum_eval.textproc import normalize, word_tokenize

__all__ = [
    "EmbeddingMatrix",
    "EmbeddingProvider",
    "EmbeddingStoreError",
    "FileEmbeddingStore",
    "OneHotProvider",
    "StoreHeader",
    "bertscore_pair",
    "cosine",
    "greedy_match_score",
]

UNIT_NORM_TOLERANCE = 1e-6


class EmbeddingStoreError(ValueError):
    """Malformed embedding store content (header, line, or consistency)."""


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Per-text token embeddings: one unit-norm row per subword token."""

    text_id: str
    token_labels: tuple[str, ...]
    vectors: np.ndarray  # shape (len(token_labels), dim), float64

    @classmethod
    def from_rows(
        cls,
        text_id: str,
        token_labels: Sequence[str],
        rows: Sequence[Sequence[float]] | np.ndarray,
        dim: int,
    ) -> "EmbeddingMatrix":
        """Validate and unit-normalize rows; zero rows are rejected."""
        labels = tuple(token_labels)
        arr = np.asarray(rows, dtype=np.float64)
        if arr.size == 0:
            arr = np.empty((0, dim), dtype=np.float64)
        if arr.ndim != 2 or arr.shape[1] != dim:
            raise EmbeddingStoreError(
                f"text {text_id!r}: expected vectors of dimension {dim}, "
                f"got array of shape {arr.shape}"
            )
        if len(labels) != arr.shape[0]:
            raise EmbeddingStoreError(
                f"text {text_id!r}: {len(labels)} token labels but "
                f"{arr.shape[0]} vectors"
            )
        if dim < 1:
            raise EmbeddingStoreError(f"text {text_id!r}: dimension must be >= 1")
        norms = np.linalg.norm(arr, axis=1)
        if np.any(norms == 0.0):
            row = int(np.argmax(norms == 0.0))
            raise EmbeddingStoreError(f"text {text_id!r}: zero vector at row {row}")
        arr = arr / norms[:, None]
        arr.setflags(write=False)
        return cls(text_id=text_id, token_labels=labels, vectors=arr)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.token_labels)


class EmbeddingProvider(Protocol):
    """Capability contract: deterministic lookup of per-text embeddings."""

    @property
    def dim(self) -> int: ...

    @property
    def descriptor(self) -> str: ...

    def lookup(self, key: str) -> EmbeddingMatrix: ...


def cosine(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """Cosine similarity in [-1, 1]; rejects dimension mismatch and zero vectors."""
    ua = np.asarray(u, dtype=np.float64)
    va = np.asarray(v, dtype=np.float64)
    if ua.shape != va.shape or ua.ndim != 1:
        raise ValueError(f"dimension mismatch: {ua.shape} vs {va.shape}")
    nu = float(np.linalg.norm(ua))
    nv = float(np.linalg.norm(va))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine is undefined for zero vectors")
    value = float(ua @ va) / (nu * nv)
    return min(1.0, max(-1.0, value))


def greedy_match_score(candidate: EmbeddingMatrix, reference: EmbeddingMatrix) -> PRF:
    """Greedy matching: each row pairs with its most-similar opposite row.

    Precision averages the best match of every candidate row, recall of every
    reference row. Either side being empty yields zeros. Means use exact
    summation so row permutations cannot change the result.
    """
    if candidate.dim != reference.dim:
        raise ValueError(
            f"dimension mismatch: candidate {candidate.dim} vs "
            f"reference {reference.dim}"
        )
    if len(candidate) == 0 or len(reference) == 0:
        return ZERO_PRF
    sims = candidate.vectors @ reference.vectors.T
    np.clip(sims, -1.0, 1.0, out=sims)
    precision = math.fsum(sims.max(axis=1)) / sims.shape[0]
    recall = math.fsum(sims.max(axis=0)) / sims.shape[1]
    return PRF.from_pr(precision, recall)


def bertscore_pair(
    provider: EmbeddingProvider, candidate_id: str, reference_id: str
) -> PRF:
    """Greedy-match score over two texts resolved through one provider."""
    candidate = provider.lookup(candidate_id)
    reference = provider.lookup(reference_id)
    if candidate.dim != reference.dim:
        raise EmbeddingStoreError(
            f"provider returned inconsistent dimensions: "
            f"{candidate.dim} for {candidate_id!r}, {reference.dim} for {reference_id!r}"
        )
    return greedy_match_score(candidate, reference)


@dataclass(frozen=True)
class StoreHeader:
    dim: int
    model: str
    normalized: bool
    special_tokens_excluded: bool


class FileEmbeddingStore:
    """Embedding store file: one header line, then one JSON object per text.

    Header: ``{"dim": d, "model": str, "normalized": bool,
    "special_tokens_excluded": bool}``. Lines: ``{"id": str,
    "tokens": [str...], "vectors": [[float...]...]}`` with every inner vector
    of length ``d``. Duplicate ids and dimension mismatches are rejected.
    Immutable after open, therefore safe for concurrent lookups.
    """

    def __init__(self, header: StoreHeader, matrices: Mapping[str, EmbeddingMatrix], source: str = "<memory>"):
        self.header = header
        self._matrices = dict(matrices)
        self._source = source

    @classmethod
    def open(cls, path: str | Path) -> "FileEmbeddingStore":
        path = Path(path)
        with path.open("r", encoding="utf-8") as handle:
            header_line = handle.readline()
            if not header_line.strip():
                raise EmbeddingStoreError(f"{path}: missing header line")
            header = cls._parse_header(header_line, path)
            matrices: dict[str, EmbeddingMatrix] = {}
            seen: dict[str, int] = {}
            for lineno, line in enumerate(handle, start=2):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise EmbeddingStoreError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
                try:
                    text_id = obj["id"]
                    tokens = obj["tokens"]
                    vectors = obj["vectors"]
                except (KeyError, TypeError) as exc:
                    raise EmbeddingStoreError(
                        f"{path}:{lineno}: line must carry 'id', 'tokens' and 'vectors'"
                    ) from exc
                if not isinstance(text_id, str) or not text_id:
                    raise EmbeddingStoreError(f"{path}:{lineno}: 'id' must be a non-empty string")
                if text_id in seen:
                    raise EmbeddingStoreError(
                        f"{path}:{lineno}: duplicate id {text_id!r} "
                        f"(first seen at line {seen[text_id]})"
                    )
                for row, vec in enumerate(vectors):
                    if len(vec) != header.dim:
                        raise EmbeddingStoreError(
                            f"{path}:{lineno}: vector {row} has length {len(vec)}, "
                            f"header says dim={header.dim}"
                        )
                try:
                    matrices[text_id] = EmbeddingMatrix.from_rows(
                        text_id, tokens, vectors, dim=header.dim
                    )
                except EmbeddingStoreError as exc:
                    raise EmbeddingStoreError(f"{path}:{lineno}: {exc}") from exc
                seen[text_id] = lineno
        return cls(header, matrices, source=str(path))

    @staticmethod
    def _parse_header(line: str, path: Path) -> StoreHeader:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise EmbeddingStoreError(f"{path}:1: invalid header JSON: {exc}") from exc
        try:
            dim = obj["dim"]
            model = obj["model"]
            normalized = obj["normalized"]
            special = obj["special_tokens_excluded"]
        except (KeyError, TypeError) as exc:
            raise EmbeddingStoreError(
                f"{path}:1: header must carry 'dim', 'model', 'normalized' "
                f"and 'special_tokens_excluded'"
            ) from exc
        if not isinstance(dim, int) or dim < 1:
            raise EmbeddingStoreError(f"{path}:1: 'dim' must be a positive integer")
        return StoreHeader(
            dim=dim,
            model=str(model),
            normalized=bool(normalized),
            special_tokens_excluded=bool(special),
        )

    @property
    def dim(self) -> int:
        return self.header.dim

    @property
    def descriptor(self) -> str:
        return f"{self.header.model} ({self._source})"

    def ids(self) -> list[str]:
        return list(self._matrices)

    def __contains__(self, key: str) -> bool:
        return key in self._matrices

    def lookup(self, key: str) -> EmbeddingMatrix:
        try:
            return self._matrices[key]
        except KeyError:
            raise KeyError(f"id {key!r} not present in store {self._source}") from None


class OneHotProvider:
    """Test-double provider: each distinct word token gets its own axis.

    Built from a fixed id -> text mapping so the vocabulary, and therefore the
    dimension, never changes between lookups. With these embeddings greedy
    recall reduces to plain token coverage of the reference.
    """

    def __init__(self, texts: Mapping[str, str]):
        self._texts = dict(texts)
        vocab = sorted(
            {
                token
                for text in self._texts.values()
                for token in word_tokenize(normalize(text))
            }
        )
        self._axis = {token: i for i, token in enumerate(vocab)}
        self._dim = max(1, len(vocab))

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def descriptor(self) -> str:
        return f"one-hot over {len(self._axis)} tokens"

    def lookup(self, key: str) -> EmbeddingMatrix:
        tokens = word_tokenize(normalize(self._texts[key]))
        rows = np.zeros((len(tokens), self._dim), dtype=np.float64)
        for row, token in enumerate(tokens):
            rows[row, self._axis[token]] = 1.0
        return EmbeddingMatrix.from_rows(key, tokens, rows, dim=self._dim)
