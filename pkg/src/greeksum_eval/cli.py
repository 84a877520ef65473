"""Command-line entry point: validate, stats, baseline and score subcommands.

Exit codes form a stable scripting contract: 0 success, 1 validation or
scoring domain failure, 2 I/O or usage failure. Standard output carries the
human-readable result; the effective configuration is echoed to standard
error so every run can be replayed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from greeksum_eval import __version__
from greeksum_eval.corpus import (
    CorpusError,
    compute_stats,
    dump_system_output,
    load_corpus,
    load_system_outputs,
    split_proportion_warnings,
)
from greeksum_eval.evaluator import (
    METRIC_KINDS,
    EvaluationError,
    MetricSpec,
    evaluate,
    run_baseline,
)
from greeksum_eval.extractive import TextRankParams
from greeksum_eval.metrics.bertscore import EmbeddingStoreError
from greeksum_eval.report import FORMATS, render_report

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE_IO = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greeksum-eval",
        description="Summarization evaluation toolkit for Greek news corpora.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check a corpus file against the schema")
    p_validate.add_argument("--corpus", required=True, help="corpus file (JSON Lines or CSV)")
    p_validate.add_argument("--permissive", action="store_true",
                            help="skip invalid records instead of failing")

    p_stats = sub.add_parser("stats", help="print per-split descriptive statistics as JSON")
    p_stats.add_argument("--corpus", required=True)

    p_baseline = sub.add_parser("baseline", help="write extractive baseline summaries")
    p_baseline.add_argument("--corpus", required=True)
    p_baseline.add_argument("--split", default="test", choices=("train", "validation", "test"))
    p_baseline.add_argument("--kind", required=True, choices=("lead", "textrank"))
    p_baseline.add_argument("--lead-n", type=int, default=1,
                            help="sentences extracted by the lead baseline")
    p_baseline.add_argument("--topk", type=int, default=1,
                            help="sentences selected by the textrank baseline")
    p_baseline.add_argument("--damping", type=float, default=0.85)
    p_baseline.add_argument("--epsilon", type=float, default=1e-6)
    p_baseline.add_argument("--max-iter", type=int, default=100)
    p_baseline.add_argument("--out", required=True, help="output file (JSON Lines)")

    p_score = sub.add_parser("score", help="score system outputs and render a report")
    p_score.add_argument("--corpus", required=True)
    p_score.add_argument("--split", default="test", choices=("train", "validation", "test"))
    p_score.add_argument("--system", action="append", required=True, metavar="NAME=PATH",
                         help="system output file; repeatable")
    p_score.add_argument("--metrics", default="rouge1,rouge2,rougeL",
                         help=f"comma-separated subset of {','.join(METRIC_KINDS)}")
    p_score.add_argument("--cand-embeddings", action="append", default=[],
                         metavar="[NAME=]PATH",
                         help="candidate embedding store for bertscore; "
                              "prefix with the system name when scoring several systems")
    p_score.add_argument("--ref-embeddings", metavar="PATH",
                         help="reference embedding store for bertscore")
    p_score.add_argument("--format", default="table", choices=FORMATS)
    p_score.add_argument("--out", help="write the report to this file")
    p_score.add_argument("--strict-missing", action="store_true",
                         help="score ids missing from a system as zero instead of excluding them")
    p_score.add_argument("--jobs", type=int, default=1, help="worker threads for pair scoring")
    return parser


def _echo_config(args: argparse.Namespace) -> None:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "command"}
    print(f"config[{args.command}]: {json.dumps(config, ensure_ascii=False, sort_keys=True)}",
          file=sys.stderr)


def _require_paths(*paths: str | None) -> None:
    for path in paths:
        if path is not None and not Path(path).is_file():
            raise FileNotFoundError(f"no such file: {path}")


def _cmd_validate(args: argparse.Namespace) -> int:
    _require_paths(args.corpus)
    try:
        corpus = load_corpus(args.corpus, permissive=args.permissive)
    except CorpusError as exc:
        for message in exc.diagnostics:
            print(f"invalid: {message}")
        return EXIT_DOMAIN
    for warning in split_proportion_warnings(corpus):
        print(f"warning: {warning}")
    counts = corpus.split_counts()
    print(f"ok: {len(corpus)} records "
          f"(train {counts['train']}, validation {counts['validation']}, test {counts['test']})")
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    _require_paths(args.corpus)
    stats = compute_stats(load_corpus(args.corpus))
    print(json.dumps(stats.to_dict(), ensure_ascii=False, indent=2))
    return EXIT_OK


def _cmd_baseline(args: argparse.Namespace) -> int:
    _require_paths(args.corpus)
    corpus = load_corpus(args.corpus)
    params = TextRankParams(
        damping=args.damping, epsilon=args.epsilon, max_iterations=args.max_iter
    )
    n = args.lead_n if args.kind == "lead" else args.topk
    output = run_baseline(corpus, args.kind, split=args.split, n=n, params=params)
    dump_system_output(output, args.out)
    print(f"wrote {len(output.summaries)} summaries to {args.out}")
    return EXIT_OK


def _parse_named(value: str, flag: str, require_name: bool) -> tuple[str | None, str]:
    name, sep, path = value.partition("=")
    if sep:
        if not name or not path:
            raise UsageError(f"{flag} expects NAME=PATH, got {value!r}")
        return name, path
    if require_name:
        raise UsageError(f"{flag} expects NAME=PATH, got {value!r}")
    return None, value


class UsageError(Exception):
    pass


def _cmd_score(args: argparse.Namespace) -> int:
    metrics = [m.strip() for m in args.metrics.split(",") if m.strip()]
    if not metrics:
        raise UsageError("--metrics names no metric")
    for metric in metrics:
        if metric not in METRIC_KINDS:
            raise UsageError(
                f"unknown metric {metric!r} (expected a subset of {','.join(METRIC_KINDS)})"
            )

    systems = []
    for value in args.system:
        name, path = _parse_named(value, "--system", require_name=True)
        systems.append((name, path))

    cand_stores: dict[str, str] | str | None = None
    if args.cand_embeddings:
        named = [
            _parse_named(v, "--cand-embeddings", require_name=len(systems) > 1)
            for v in args.cand_embeddings
        ]
        if named[0][0] is None:
            if len(named) > 1:
                raise UsageError("--cand-embeddings given several times without system names")
            cand_stores = named[0][1]
        else:
            cand_stores = {name: path for name, path in named}  # type: ignore[misc]

    if "bertscore" in metrics and (not args.cand_embeddings or not args.ref_embeddings):
        raise UsageError(
            "bertscore requires --cand-embeddings and --ref-embeddings"
        )

    if cand_stores is None:
        store_paths = []
    elif isinstance(cand_stores, str):
        store_paths = [cand_stores]
    else:
        store_paths = list(cand_stores.values())
    _require_paths(args.corpus, *[p for _, p in systems], args.ref_embeddings, *store_paths)

    corpus = load_corpus(args.corpus)
    outputs = [load_system_outputs(path, name) for name, path in systems]
    specs = [
        MetricSpec(kind=m, cand_stores=cand_stores, ref_store=args.ref_embeddings)
        if m == "bertscore"
        else MetricSpec(kind=m)
        for m in metrics
    ]
    report = evaluate(
        corpus,
        outputs,
        specs,
        split=args.split,
        strict_missing=args.strict_missing,
        jobs=args.jobs,
    )
    print(render_report(report, "table"), end="")
    if args.out:
        Path(args.out).write_text(render_report(report, args.format), encoding="utf-8")
        print(f"wrote {args.format} report to {args.out}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "baseline": _cmd_baseline,
    "score": _cmd_score,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    _echo_config(args)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE_IO
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_IO
    except (CorpusError, EvaluationError, EmbeddingStoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_IO


if __name__ == "__main__":
    sys.exit(main())
