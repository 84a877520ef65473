"""Command line for the embedding exporter: export and verify subcommands."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from embed_exporter.exporter import (
    DEFAULT_MODEL,
    ExportConfig,
    ExporterError,
    export,
    read_texts,
    verify_store,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-exporter",
        description="Write token-embedding store files for the summarization "
                    "scoring toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_export = sub.add_parser("export", help="embed texts and write a store file")
    p_export.add_argument("--model", default=DEFAULT_MODEL,
                          help="encoder checkpoint (name or path); default: "
                               "multilingual cased BERT")
    p_export.add_argument("--layer", type=int, default=-1,
                          help="hidden-state index to export; 0 is the embedding "
                               "layer, -1 (default) the last encoder layer")
    p_export.add_argument("--input", required=True,
                          help="JSON Lines of {\"id\", \"text\"}")
    p_export.add_argument("--output", required=True, help="store file to write")
    p_export.add_argument("--batch-size", type=int, default=16)
    p_export.add_argument("--keep-special-tokens", action="store_true",
                          help="keep [CLS]/[SEP]-style tokens in the store")
    p_export.add_argument("--max-length", type=int, default=None,
                          help="token limit per text; defaults to the model's own")

    p_verify = sub.add_parser("verify", help="integrity-check a store file")
    p_verify.add_argument("store", help="store file to check")
    return parser


def _cmd_export(args: argparse.Namespace) -> int:
    if not Path(args.input).is_file():
        print(f"error: no such file: {args.input}", file=sys.stderr)
        return 2
    config = ExportConfig(
        model=args.model,
        layer=args.layer,
        exclude_special_tokens=not args.keep_special_tokens,
        batch_size=args.batch_size,
        max_length=args.max_length,
    )
    texts = read_texts(args.input)
    stats = export(config, texts, args.output)
    print(f"wrote {stats.texts} texts (dim {stats.dim}) to {args.output}")
    if stats.truncated_ids:
        print(f"truncated {len(stats.truncated_ids)} texts: "
              f"{', '.join(stats.truncated_ids)}", file=sys.stderr)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    if not Path(args.store).is_file():
        print(f"error: no such file: {args.store}", file=sys.stderr)
        return 2
    diagnostics = verify_store(args.store)
    for message in diagnostics:
        print(f"invalid: {message}")
    if diagnostics:
        return 1
    print(f"ok: {args.store}")
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "export":
            return _cmd_export(args)
        return _cmd_verify(args)
    except ExporterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
