"""Run a pretrained encoder over texts and write an embedding store file.

The store format is the one the scoring toolkit ingests: a JSON Lines file
whose first line is a header ``{"dim", "model", "normalized",
"special_tokens_excluded", "layer"}`` and whose remaining lines carry
``{"id", "tokens", "vectors"}`` per input text. Vectors are written
unit-normalized (float64), one row per subword token of the encoder's own
tokenizer. Inference runs in eval mode with gradients disabled, so a
re-export under a fixed configuration reproduces the same vectors.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_MODEL = "bert-base-multilingual-cased"

# Fallback ceiling when a tokenizer reports no usable length limit.
_LENGTH_LIMIT_CAP = 10**9


class ExporterError(ValueError):
    """Invalid input, configuration, or store content."""


@dataclass(frozen=True)
class ExportConfig:
    model: str = DEFAULT_MODEL
    layer: int = -1  # index into the hidden-state stack; -1 = last layer
    exclude_special_tokens: bool = True
    batch_size: int = 16
    max_length: int | None = None  # None: take the model's own limit

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ExporterError(f"batch size must be >= 1, got {self.batch_size}")
        if self.max_length is not None and self.max_length < 2:
            raise ExporterError(f"max length must be >= 2, got {self.max_length}")


@dataclass(frozen=True)
class ExportStats:
    texts: int
    dim: int
    truncated_ids: tuple[str, ...]


def read_texts(path: str | Path) -> list[tuple[str, str]]:
    """Read the (id, text) input stream; duplicate ids fail before any export."""
    pairs: list[tuple[str, str]] = []
    seen: dict[str, int] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ExporterError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            text_id = obj.get("id")
            if not isinstance(text_id, str) or not text_id:
                raise ExporterError(f"{path}:{lineno}: missing or empty field 'id'")
            if "text" not in obj:
                raise ExporterError(f"{path}:{lineno}: missing field 'text'")
            if text_id in seen:
                raise ExporterError(
                    f"{path}:{lineno}: duplicate id {text_id!r} "
                    f"(first seen at line {seen[text_id]})"
                )
            seen[text_id] = lineno
            pairs.append((text_id, str(obj["text"])))
    return pairs


def _load_encoder(model_name: str):
    # imported lazily: torch/transformers are heavyweight and verify-only
    # invocations must not pay for them
    import torch
    from transformers import AutoModel, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(model_name)
    model = AutoModel.from_pretrained(model_name)
    model.eval()
    torch.set_grad_enabled(False)
    return tokenizer, model


def _length_limit(config: ExportConfig, tokenizer, model) -> int:
    if config.max_length is not None:
        return config.max_length
    limit = getattr(tokenizer, "model_max_length", None)
    if limit is not None and limit < _LENGTH_LIMIT_CAP:
        return int(limit)
    return int(getattr(model.config, "max_position_embeddings", 512))


def export(
    config: ExportConfig,
    texts: Sequence[tuple[str, str]],
    output: str | Path,
) -> ExportStats:
    """Embed every (id, text) pair and write the store to ``output``.

    Texts longer than the encoder's limit are truncated with a warning and
    their store line carries ``"truncated": true``.
    """
    import torch

    tokenizer, model = _load_encoder(config.model)
    layer_count = model.config.num_hidden_layers + 1  # embeddings + layers
    if not -layer_count <= config.layer < layer_count:
        raise ExporterError(
            f"layer {config.layer} outside the model's hidden-state stack "
            f"(valid: -{layer_count}..{layer_count - 1})"
        )
    max_length = _length_limit(config, tokenizer, model)
    dim = int(model.config.hidden_size)

    truncated: list[str] = []
    output = Path(output)
    with output.open("w", encoding="utf-8") as handle:
        header = {
            "dim": dim,
            "model": config.model,
            "normalized": True,
            "special_tokens_excluded": config.exclude_special_tokens,
            "layer": config.layer,
        }
        handle.write(json.dumps(header, ensure_ascii=False) + "\n")

        for start in range(0, len(texts), config.batch_size):
            batch = texts[start : start + config.batch_size]
            ids = [text_id for text_id, _ in batch]
            raw = [text for _, text in batch]
            full_lengths = [
                len(seq) for seq in tokenizer(raw, truncation=False)["input_ids"]
            ]
            encoded = tokenizer(
                raw,
                padding=True,
                truncation=True,
                max_length=max_length,
                return_special_tokens_mask=True,
                return_tensors="pt",
            )
            outputs = model(
                input_ids=encoded["input_ids"],
                attention_mask=encoded["attention_mask"],
                output_hidden_states=True,
            )
            hidden = outputs.hidden_states[config.layer]

            for row, text_id in enumerate(ids):
                keep = encoded["attention_mask"][row].bool()
                if config.exclude_special_tokens:
                    keep &= ~encoded["special_tokens_mask"][row].bool()
                token_ids = encoded["input_ids"][row][keep]
                tokens = tokenizer.convert_ids_to_tokens(token_ids.tolist())
                vectors = hidden[row][keep].to(torch.float64).numpy()
                if vectors.shape[0]:
                    norms = np.linalg.norm(vectors, axis=1)
                    if np.any(norms == 0.0):
                        raise ExporterError(
                            f"text {text_id!r}: encoder produced a zero vector"
                        )
                    vectors = vectors / norms[:, None]
                line: dict[str, object] = {
                    "id": text_id,
                    "tokens": tokens,
                    "vectors": [list(map(float, vec)) for vec in vectors],
                }
                if full_lengths[row] > max_length:
                    truncated.append(text_id)
                    line["truncated"] = True
                    logger.warning(
                        "text %r exceeds the length limit (%d > %d tokens); truncated",
                        text_id, full_lengths[row], max_length,
                    )
                handle.write(json.dumps(line, ensure_ascii=False) + "\n")

    return ExportStats(texts=len(texts), dim=dim, truncated_ids=tuple(truncated))


UNIT_NORM_TOLERANCE = 1e-6


def verify_store(path: str | Path) -> list[str]:
    """Integrity-check a store file; returns diagnostics (empty means clean).

    Checks header shape, per-line dimension consistency, token/vector count
    agreement, duplicate ids, zero rows, and the header's unit-normalization
    claim.
    """
    path = Path(path)
    diagnostics: list[str] = []
    with path.open("r", encoding="utf-8") as handle:
        header_line = handle.readline()
        if not header_line.strip():
            return [f"{path}:1: missing header line"]
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            return [f"{path}:1: invalid header JSON: {exc}"]
        missing = [
            key
            for key in ("dim", "model", "normalized", "special_tokens_excluded")
            if key not in header
        ]
        if missing:
            return [f"{path}:1: header misses keys: {', '.join(missing)}"]
        dim = header["dim"]
        if not isinstance(dim, int) or dim < 1:
            return [f"{path}:1: 'dim' must be a positive integer"]

        seen: dict[str, int] = {}
        for lineno, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                diagnostics.append(f"{path}:{lineno}: invalid JSON: {exc}")
                continue
            text_id = obj.get("id")
            tokens = obj.get("tokens")
            vectors = obj.get("vectors")
            if not isinstance(text_id, str) or tokens is None or vectors is None:
                diagnostics.append(
                    f"{path}:{lineno}: line must carry 'id', 'tokens' and 'vectors'"
                )
                continue
            if text_id in seen:
                diagnostics.append(
                    f"{path}:{lineno}: duplicate id {text_id!r} "
                    f"(first seen at line {seen[text_id]})"
                )
                continue
            seen[text_id] = lineno
            if len(tokens) != len(vectors):
                diagnostics.append(
                    f"{path}:{lineno}: {len(tokens)} tokens but {len(vectors)} vectors"
                )
                continue
            for row, vec in enumerate(vectors):
                if len(vec) != dim:
                    diagnostics.append(
                        f"{path}:{lineno}: vector {row} has length {len(vec)}, "
                        f"header says dim={dim}"
                    )
                    break
                norm = float(np.linalg.norm(np.asarray(vec, dtype=np.float64)))
                if norm == 0.0:
                    diagnostics.append(f"{path}:{lineno}: zero vector at row {row}")
                    break
                if header["normalized"] and abs(norm - 1.0) > UNIT_NORM_TOLERANCE:
                    diagnostics.append(
                        f"{path}:{lineno}: row {row} norm {norm!r} breaks the "
                        f"normalization claim"
                    )
                    break
    return diagnostics
