"""Corpus and system-output ingestion with validation and descriptive stats.

Corpora are JSON Lines (one object per line with fields id/article/summary/
title?/topic?/split) or CSV with a header row naming the same fields. System
outputs are JSON Lines with id/summary. Records that violate the schema abort
the load with line-numbered diagnostics; a permissive flag downgrades them to
skipped-with-warning.
"""

from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from greeksum_eval.textproc import normalize, split_sentences, word_tokenize

__all__ = [
    "SPLITS",
    "Corpus",
    "CorpusError",
    "CorpusFormat",
    "CorpusStats",
    "DocumentRecord",
    "SplitStats",
    "SystemOutput",
    "compute_stats",
    "dump_corpus",
    "dump_system_output",
    "load_corpus",
    "load_system_outputs",
    "split_proportion_warnings",
]

logger = logging.getLogger(__name__)

SPLITS = ("train", "validation", "test")

# Published corpus proportions this toolkit's corpora usually follow; only
# used for advisory warnings, never to reject a corpus.
_EXPECTED_PROPORTIONS = {"train": 87.0, "validation": 6.5, "test": 6.5}
_PROPORTION_SLACK = 3.0


class CorpusError(ValueError):
    """Invalid corpus or system-output content; carries per-line diagnostics."""

    def __init__(self, diagnostics: list[str] | str):
        if isinstance(diagnostics, str):
            diagnostics = [diagnostics]
        self.diagnostics = diagnostics
        super().__init__("; ".join(diagnostics))


@dataclass(frozen=True)
class DocumentRecord:
    id: str
    article: str
    summary: str
    split: str
    title: str | None = None
    topic: str | None = None

    def __post_init__(self) -> None:
        if not self.id or not str(self.id).strip():
            raise ValueError("field 'id' is empty")
        if not self.article.strip():
            raise ValueError("field 'article' is empty")
        if not self.summary.strip():
            raise ValueError("field 'summary' is empty")
        if self.split not in SPLITS:
            raise ValueError(
                f"unknown split label {self.split!r} (expected one of {', '.join(SPLITS)})"
            )


class Corpus:
    """Ordered, id-indexed collection of records; immutable once built."""

    def __init__(self, records: Iterable[DocumentRecord]):
        self.records: list[DocumentRecord] = list(records)
        self.index: dict[str, int] = {}
        for position, record in enumerate(self.records):
            if record.id in self.index:
                raise CorpusError(
                    f"duplicate id {record.id!r} at positions "
                    f"{self.index[record.id]} and {position}"
                )
            self.index[record.id] = position

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[DocumentRecord]:
        return iter(self.records)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self.records == other.records

    def get(self, record_id: str) -> DocumentRecord:
        return self.records[self.index[record_id]]

    def split_records(self, split: str) -> list[DocumentRecord]:
        return [r for r in self.records if r.split == split]

    def split_counts(self) -> dict[str, int]:
        counts = {s: 0 for s in SPLITS}
        for record in self.records:
            counts[record.split] += 1
        return counts


@dataclass(frozen=True)
class SystemOutput:
    """One system's candidate summaries, keyed by record id."""

    system_name: str
    summaries: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class CorpusFormat:
    kind: str = "jsonl"  # "jsonl" or "csv"
    fields: Mapping[str, str] = field(
        default_factory=lambda: {name: name for name in
                                 ("id", "article", "summary", "title", "topic", "split")}
    )

    def source_field(self, name: str) -> str:
        return self.fields.get(name, name)


def _infer_format(path: Path) -> CorpusFormat:
    if path.suffix.lower() == ".csv":
        return CorpusFormat(kind="csv")
    return CorpusFormat(kind="jsonl")


def _record_from_mapping(
    obj: Mapping[str, object], fmt: CorpusFormat, lineno: int
) -> DocumentRecord | str:
    """Build a record or return a diagnostic string for this line."""
    values: dict[str, str | None] = {}
    for name in ("id", "article", "summary", "split"):
        raw = obj.get(fmt.source_field(name))
        if raw is None or (isinstance(raw, str) and not raw.strip()):
            return f"line {lineno}: missing or empty field {fmt.source_field(name)!r}"
        values[name] = str(raw)
    for name in ("title", "topic"):
        raw = obj.get(fmt.source_field(name))
        values[name] = str(raw) if raw is not None and str(raw).strip() else None
    try:
        return DocumentRecord(
            id=values["id"],
            article=values["article"],
            summary=values["summary"],
            split=values["split"],
            title=values["title"],
            topic=values["topic"],
        )
    except ValueError as exc:
        return f"line {lineno}: {exc}"


def _iter_jsonl(handle: TextIO) -> Iterator[tuple[int, Mapping[str, object] | str]]:
    for lineno, line in enumerate(handle, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            yield lineno, f"line {lineno}: invalid JSON: {exc}"
            continue
        if not isinstance(obj, dict):
            yield lineno, f"line {lineno}: expected a JSON object"
            continue
        yield lineno, obj


def _iter_csv(handle: TextIO) -> Iterator[tuple[int, Mapping[str, object] | str]]:
    reader = csv.DictReader(handle)
    # DictReader consumes the header as line 1; records start at line 2.
    for lineno, row in enumerate(reader, start=2):
        yield lineno, {k: v for k, v in row.items() if k is not None}


def load_corpus(
    source: str | Path | TextIO,
    fmt: CorpusFormat | None = None,
    permissive: bool = False,
) -> Corpus:
    """Parse, validate and index a corpus.

    Raises :class:`CorpusError` with every collected diagnostic unless
    ``permissive`` is set, in which case offending records are skipped with a
    warning (duplicate ids always abort: silently dropping either copy would
    corrupt macro means).
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        fmt = fmt or _infer_format(path)
        with path.open("r", encoding="utf-8", newline="") as handle:
            return _load_corpus_stream(handle, fmt, permissive)
    return _load_corpus_stream(source, fmt or CorpusFormat(), permissive)


def _load_corpus_stream(
    handle: TextIO, fmt: CorpusFormat, permissive: bool
) -> Corpus:
    rows = _iter_csv(handle) if fmt.kind == "csv" else _iter_jsonl(handle)
    records: list[DocumentRecord] = []
    diagnostics: list[str] = []
    seen: dict[str, int] = {}
    for lineno, obj in rows:
        if isinstance(obj, str):
            diagnostics.append(obj)
            continue
        record = _record_from_mapping(obj, fmt, lineno)
        if isinstance(record, str):
            diagnostics.append(record)
            continue
        if record.id in seen:
            raise CorpusError(
                f"line {lineno}: duplicate id {record.id!r} "
                f"(first seen at line {seen[record.id]})"
            )
        seen[record.id] = lineno
        records.append(record)
    if diagnostics:
        if not permissive:
            raise CorpusError(diagnostics)
        for message in diagnostics:
            logger.warning("skipped record: %s", message)
    return Corpus(records)


def load_system_outputs(
    source: str | Path | TextIO, system_name: str
) -> SystemOutput:
    """Parse a JSON Lines stream of {"id", "summary"} candidate records.

    Empty candidate summaries are retained; they simply score zero.
    """
    if isinstance(source, (str, Path)):
        with Path(source).open("r", encoding="utf-8") as handle:
            return _load_outputs_stream(handle, system_name)
    return _load_outputs_stream(source, system_name)


def _load_outputs_stream(handle: TextIO, system_name: str) -> SystemOutput:
    summaries: dict[str, str] = {}
    seen: dict[str, int] = {}
    for lineno, obj in _iter_jsonl(handle):
        if isinstance(obj, str):
            raise CorpusError(obj)
        record_id = obj.get("id")
        if not isinstance(record_id, str) or not record_id.strip():
            raise CorpusError(f"line {lineno}: missing or empty field 'id'")
        if "summary" not in obj:
            raise CorpusError(f"line {lineno}: missing field 'summary'")
        if record_id in seen:
            raise CorpusError(
                f"line {lineno}: duplicate id {record_id!r} "
                f"(first seen at line {seen[record_id]})"
            )
        seen[record_id] = lineno
        summaries[record_id] = str(obj["summary"])
    return SystemOutput(system_name=system_name, summaries=summaries)


def dump_corpus(corpus: Corpus, target: str | Path | TextIO) -> None:
    """Serialize to JSON Lines; loading the result yields an equal corpus."""
    def _write(handle: TextIO) -> None:
        for record in corpus:
            obj: dict[str, object] = {
                "id": record.id,
                "article": record.article,
                "summary": record.summary,
            }
            if record.title is not None:
                obj["title"] = record.title
            if record.topic is not None:
                obj["topic"] = record.topic
            obj["split"] = record.split
            handle.write(json.dumps(obj, ensure_ascii=False) + "\n")

    if isinstance(target, (str, Path)):
        with Path(target).open("w", encoding="utf-8") as handle:
            _write(handle)
    else:
        _write(target)


def dump_system_output(output: SystemOutput, target: str | Path | TextIO) -> None:
    def _write(handle: TextIO) -> None:
        for record_id, summary in output.summaries.items():
            handle.write(
                json.dumps({"id": record_id, "summary": summary}, ensure_ascii=False)
                + "\n"
            )

    if isinstance(target, (str, Path)):
        with Path(target).open("w", encoding="utf-8") as handle:
            _write(handle)
    else:
        _write(target)


@dataclass(frozen=True)
class SplitStats:
    records: int
    mean_summary_words: float
    mean_title_words: float | None
    mean_summary_sentences: float


@dataclass(frozen=True)
class CorpusStats:
    total_records: int
    splits: Mapping[str, SplitStats]

    def to_dict(self) -> dict[str, object]:
        return {
            "total_records": self.total_records,
            "splits": {
                name: {
                    "records": s.records,
                    "mean_summary_words": s.mean_summary_words,
                    "mean_title_words": s.mean_title_words,
                    "mean_summary_sentences": s.mean_summary_sentences,
                }
                for name, s in self.splits.items()
            },
        }


def compute_stats(corpus: Corpus) -> CorpusStats:
    """Descriptive statistics per split; records without titles are excluded
    from the title mean."""
    if len(corpus) == 0:
        raise CorpusError("cannot compute statistics of an empty corpus")
    splits: dict[str, SplitStats] = {}
    for split in SPLITS:
        records = corpus.split_records(split)
        if not records:
            continue
        summary_words = [len(word_tokenize(normalize(r.summary))) for r in records]
        summary_sentences = [len(split_sentences(r.summary)) for r in records]
        title_words = [
            len(word_tokenize(normalize(r.title)))
            for r in records
            if r.title is not None
        ]
        splits[split] = SplitStats(
            records=len(records),
            mean_summary_words=sum(summary_words) / len(records),
            mean_title_words=(
                sum(title_words) / len(title_words) if title_words else None
            ),
            mean_summary_sentences=sum(summary_sentences) / len(records),
        )
    return CorpusStats(total_records=len(corpus), splits=splits)


def split_proportion_warnings(corpus: Corpus) -> list[str]:
    """Advisory warnings when split proportions stray from the usual layout."""
    total = len(corpus)
    if total == 0:
        return []
    warnings: list[str] = []
    counts = corpus.split_counts()
    for split, expected in _EXPECTED_PROPORTIONS.items():
        actual = 100.0 * counts[split] / total
        if abs(actual - expected) > _PROPORTION_SLACK:
            warnings.append(
                f"split {split!r} holds {actual:.1f}% of records "
                f"(usual corpora carry ~{expected}%)"
            )
    return warnings
