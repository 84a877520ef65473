"""Deterministic rendering of metric reports: plain table, CSV, JSON, Markdown.

Markdown and plain layouts show one row per system with its macro F1 per
metric, two decimal places. CSV and JSON additionally carry macro precision,
macro recall, pair counts and missing ids.
"""

from __future__ import annotations

import csv
import io
import json

from greeksum_eval.evaluator import MetricReport

__all__ = ["FORMATS", "METRIC_LABELS", "render_report"]

METRIC_LABELS = {
    "rouge1": "ROUGE-1",
    "rouge2": "ROUGE-2",
    "rougeL": "ROUGE-L",
    "bertscore": "BERTScore",
}

FORMATS = ("table", "csv", "json", "markdown")


def render_report(report: MetricReport, fmt: str = "table") -> str:
    if fmt == "table":
        return _render_table(report)
    if fmt == "csv":
        return _render_csv(report)
    if fmt == "json":
        return _render_json(report)
    if fmt == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown report format {fmt!r} (expected one of {', '.join(FORMATS)})")


def _label(metric: str) -> str:
    return METRIC_LABELS.get(metric, metric)


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.2f}"


def _rows(report: MetricReport) -> list[list[str]]:
    rows = []
    for system in report.systems:
        row = [system]
        for metric in report.metrics:
            row.append(_fmt(report.score(system, metric).f1))
        rows.append(row)
    return rows


def _render_markdown(report: MetricReport) -> str:
    header = ["Approach"] + [_label(m) for m in report.metrics]
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for row in _rows(report):
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def _render_table(report: MetricReport) -> str:
    header = ["Approach"] + [_label(m) for m in report.metrics]
    rows = _rows(report)
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def line(cells: list[str]) -> str:
        first = cells[0].ljust(widths[0])
        rest = [c.rjust(widths[i + 1]) for i, c in enumerate(cells[1:])]
        return "  ".join([first] + rest).rstrip()
    lines = [line(header)]
    lines.append("-" * len(lines[0]))
    lines.extend(line(row) for row in rows)
    return "\n".join(lines) + "\n"


def _render_csv(report: MetricReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["system", "metric", "precision", "recall", "f1", "pairs", "missing"]
    )
    for system in report.systems:
        for metric in report.metrics:
            score = report.score(system, metric)
            writer.writerow(
                [
                    system,
                    _label(metric),
                    _fmt(score.precision),
                    _fmt(score.recall),
                    _fmt(score.f1),
                    score.pairs,
                    ";".join(score.missing),
                ]
            )
    return buffer.getvalue()


def _round(value: float | None) -> float | None:
    return None if value is None else round(value, 2)


def _render_json(report: MetricReport) -> str:
    systems = []
    for system in report.systems:
        metrics = {}
        for metric in report.metrics:
            score = report.score(system, metric)
            metrics[metric] = {
                "p": _round(score.precision),
                "r": _round(score.recall),
                "f1": _round(score.f1),
                "pairs": score.pairs,
                "missing": list(score.missing),
            }
        systems.append({"name": system, "metrics": metrics})
    return json.dumps({"systems": systems}, ensure_ascii=False, indent=2) + "\n"
