"""Bundled sample corpus: nine Greek news articles with reference summaries
and the outputs five published systems produced for them.

The data ships in the toolkit's own corpus and system-output file formats so
the CLI and the test suite can run on real text without external downloads.
See ``data/NOTES.md`` for transcription details.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from greeksum_eval.corpus import Corpus, SystemOutput, load_corpus, load_system_outputs

__all__ = [
    "SAMPLE_COUNT",
    "SYSTEMS",
    "SampleDocument",
    "corpus_path",
    "load_sample",
    "load_sample_corpus",
    "load_sample_system",
    "system_output_path",
]

SAMPLE_COUNT = 9

SYSTEMS = (
    "greek-mt5-small",
    "greek-umt5-small",
    "greek-umt5-base",
    "greekbart",
    "textrank",
)


@dataclass(frozen=True)
class SampleDocument:
    number: int
    id: str
    article: str
    summary: str
    system_summaries: dict[str, str]


def _data_dir() -> Path:
    return Path(str(resources.files(__package__) / "data"))


def corpus_path() -> Path:
    return _data_dir() / "articles.jsonl"


def system_output_path(system: str) -> Path:
    if system not in SYSTEMS:
        raise ValueError(f"unknown sample system {system!r} (expected one of {', '.join(SYSTEMS)})")
    return _data_dir() / "systems" / f"{system}.jsonl"


@lru_cache(maxsize=1)
def load_sample_corpus() -> Corpus:
    return load_corpus(corpus_path())


@lru_cache(maxsize=None)
def load_sample_system(system: str) -> SystemOutput:
    return load_system_outputs(system_output_path(system), system)


def load_sample(number: int) -> SampleDocument:
    """Return sample ``number`` (1-based); raises ValueError out of range."""
    if not 1 <= number <= SAMPLE_COUNT:
        raise ValueError(f"sample number must lie in 1..{SAMPLE_COUNT}, got {number}")
    record = load_sample_corpus().get(f"sample-{number:02d}")
    return SampleDocument(
        number=number,
        id=record.id,
        article=record.article,
        summary=record.summary,
        system_summaries={
            system: load_sample_system(system).summaries[record.id]
            for system in SYSTEMS
        },
    )
