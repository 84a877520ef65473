"""Batch evaluation: score system outputs against references, aggregate macro F1.

Per-pair scoring is embarrassingly parallel; aggregation sums the per-pair
values with exact summation in a fixed record order, so reports are
byte-identical regardless of worker count.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from greeksum_eval.corpus import Corpus, DocumentRecord, SystemOutput
from greeksum_eval.extractive import TextRankParams, lead_n, textrank_summarize
from greeksum_eval.metrics.bertscore import FileEmbeddingStore, greedy_match_score
from greeksum_eval.metrics.prf import PRF, ZERO_PRF
from greeksum_eval.metrics.rouge import rouge_l, rouge_n
from greeksum_eval.textproc import normalize, word_tokenize

__all__ = [
    "METRIC_KINDS",
    "EvaluationError",
    "MacroScore",
    "MetricReport",
    "MetricSpec",
    "evaluate",
    "run_baseline",
]

METRIC_KINDS = ("rouge1", "rouge2", "rougeL", "bertscore")


class EvaluationError(ValueError):
    """Invalid evaluation request or unscorable pair set."""


@dataclass(frozen=True)
class MetricSpec:
    """One requested metric; bertscore must name its embedding stores.

    ``cand_stores`` is either a single store path (valid when one system is
    evaluated) or a mapping from system name to store path.
    """

    kind: str
    cand_stores: str | Path | Mapping[str, str | Path] | None = None
    ref_store: str | Path | None = None

    def validate(self, system_names: Sequence[str]) -> None:
        if self.kind not in METRIC_KINDS:
            raise EvaluationError(
                f"unknown metric {self.kind!r} (expected one of {', '.join(METRIC_KINDS)})"
            )
        if self.kind != "bertscore":
            return
        if self.cand_stores is None or self.ref_store is None:
            raise EvaluationError(
                "bertscore needs both a candidate and a reference embedding store"
            )
        if isinstance(self.cand_stores, Mapping):
            missing = [n for n in system_names if n not in self.cand_stores]
            if missing:
                raise EvaluationError(
                    f"no candidate embedding store named for systems: "
                    f"{', '.join(sorted(missing))}"
                )
        elif len(system_names) > 1:
            raise EvaluationError(
                "scoring several systems with bertscore requires one candidate "
                "store per system (pass a name -> path mapping)"
            )

    def cand_store_for(self, system_name: str) -> Path:
        assert self.cand_stores is not None
        if isinstance(self.cand_stores, Mapping):
            return Path(self.cand_stores[system_name])
        return Path(self.cand_stores)


@dataclass(frozen=True)
class MacroScore:
    """Macro-averaged scores for one (system, metric) cell, in percent.

    Precision and recall are diagnostics alongside the headline F1; they are
    ``None`` for externally seeded reports that only carry F1 values.
    """

    f1: float
    precision: float | None = None
    recall: float | None = None
    pairs: int = 0
    missing: tuple[str, ...] = ()


@dataclass(frozen=True)
class MetricReport:
    systems: tuple[str, ...]
    metrics: tuple[str, ...]
    scores: Mapping[tuple[str, str], MacroScore] = field(default_factory=dict)

    def score(self, system: str, metric: str) -> MacroScore:
        return self.scores[(system, metric)]


def _tokens(text: str) -> list[str]:
    return word_tokenize(normalize(text))


def _macro(values: Sequence[float]) -> float:
    if not values:
        return 0.0
    return 100.0 * math.fsum(values) / len(values)


def evaluate(
    corpus: Corpus,
    outputs: Sequence[SystemOutput],
    metrics: Sequence[MetricSpec],
    split: str = "test",
    strict_missing: bool = False,
    jobs: int = 1,
) -> MetricReport:
    """Score every system on every metric over the chosen split.

    Ids absent from a system's output are reported and excluded from the
    macro mean; with ``strict_missing`` they are scored zero instead.
    """
    records = corpus.split_records(split)
    if not records:
        raise EvaluationError(f"split {split!r} is empty")
    system_names = [o.system_name for o in outputs]
    for spec in metrics:
        spec.validate(system_names)
    if jobs < 1:
        raise EvaluationError(f"jobs must be >= 1, got {jobs}")

    ref_tokens = {r.id: _tokens(r.summary) for r in records}
    stores: dict[Path, FileEmbeddingStore] = {}

    def store(path: str | Path) -> FileEmbeddingStore:
        resolved = Path(path)
        if resolved not in stores:
            stores[resolved] = FileEmbeddingStore.open(resolved)
        return stores[resolved]

    scores: dict[tuple[str, str], MacroScore] = {}
    for spec in metrics:
        for output in outputs:
            scorer = _pair_scorer(spec, output, ref_tokens, store)
            present = [r for r in records if r.id in output.summaries]
            missing = tuple(r.id for r in records if r.id not in output.summaries)
            if jobs == 1 or not present:
                prfs = [scorer(r) for r in present]
            else:
                with ThreadPoolExecutor(max_workers=jobs) as pool:
                    prfs = list(pool.map(scorer, present))
            if strict_missing:
                prfs = prfs + [ZERO_PRF] * len(missing)
            scores[(output.system_name, spec.kind)] = MacroScore(
                f1=_macro([p.f1 for p in prfs]),
                precision=_macro([p.precision for p in prfs]),
                recall=_macro([p.recall for p in prfs]),
                pairs=len(prfs),
                missing=missing,
            )
    return MetricReport(
        systems=tuple(system_names),
        metrics=tuple(spec.kind for spec in metrics),
        scores=scores,
    )


def _pair_scorer(
    spec: MetricSpec,
    output: SystemOutput,
    ref_tokens: Mapping[str, list[str]],
    store: Callable[[str | Path], FileEmbeddingStore],
) -> Callable[[DocumentRecord], PRF]:
    if spec.kind == "rouge1":
        return lambda r: rouge_n(_tokens(output.summaries[r.id]), ref_tokens[r.id], 1)
    if spec.kind == "rouge2":
        return lambda r: rouge_n(_tokens(output.summaries[r.id]), ref_tokens[r.id], 2)
    if spec.kind == "rougeL":
        return lambda r: rouge_l(_tokens(output.summaries[r.id]), ref_tokens[r.id])

    cand_store = store(spec.cand_store_for(output.system_name))
    ref_store = store(spec.ref_store)  # type: ignore[arg-type]
    if cand_store.dim != ref_store.dim:
        raise EvaluationError(
            f"embedding stores disagree on dimension: candidate {cand_store.dim} "
            f"vs reference {ref_store.dim}"
        )

    def bertscore_scorer(record: DocumentRecord) -> PRF:
        try:
            candidate = cand_store.lookup(record.id)
            reference = ref_store.lookup(record.id)
        except KeyError as exc:
            raise EvaluationError(str(exc)) from exc
        return greedy_match_score(candidate, reference)

    return bertscore_scorer


def run_baseline(
    corpus: Corpus,
    kind: str,
    split: str = "test",
    n: int = 1,
    params: TextRankParams | None = None,
) -> SystemOutput:
    """Produce one extractive candidate summary per record of the split.

    ``kind`` is ``lead`` (first ``n`` sentences) or ``textrank`` (top ``n``
    ranked sentences).
    """
    records = corpus.split_records(split)
    if not records:
        raise EvaluationError(f"split {split!r} is empty")
    summaries: dict[str, str] = {}
    if kind == "lead":
        for record in records:
            summaries[record.id] = lead_n(record.article, n)
        name = f"lead-{n}"
    elif kind == "textrank":
        params = params or TextRankParams()
        for record in records:
            summaries[record.id], _ = textrank_summarize(record.article, n, params)
        name = f"textrank-{n}"
    else:
        raise EvaluationError(f"unknown baseline {kind!r} (expected lead or textrank)")
    return SystemOutput(system_name=name, summaries=summaries)
