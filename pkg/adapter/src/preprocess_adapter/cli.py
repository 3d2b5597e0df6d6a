"""Command line front end: ``preprocess-adapter export``."""

import argparse
import sys

from . import embedder, parser
from .errors import AdapterError
from .export import AdapterConfig, run_export


def _build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="preprocess-adapter",
        description="Parse manifest sentences and export the parse and "
                    "embedding files consumed by the scoring toolkit.")
    sub = top.add_subparsers(dest="command", required=True)

    export = sub.add_parser(
        "export", help="write parse and embedding files for a manifest")
    export.add_argument("--manifest", required=True,
                        help="instruction-pair manifest (JSONL)")
    export.add_argument("--parses", required=True,
                        help="output parse file path")
    export.add_argument("--embeddings", required=True,
                        help="output embedding file path")
    export.add_argument("--parser-model", default=parser.PARSER_MODEL,
                        help="parser model identifier "
                             f"(default: {parser.PARSER_MODEL})")
    export.add_argument("--embed-model", default=embedder.EMBED_MODEL,
                        help="embedding model identifier "
                             f"(default: {embedder.EMBED_MODEL})")
    return top


def main(argv: list[str] | None = None) -> int:
    arg_parser = _build_arg_parser()
    try:
        args = arg_parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    config = AdapterConfig(
        manifest_path=args.manifest,
        parse_path=args.parses,
        embedding_path=args.embeddings,
        parser_model=args.parser_model,
        embed_model=args.embed_model)
    try:
        sentences, vectors = run_export(config)
    except AdapterError as exc:
        print(f"preprocess-adapter: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {sentences} sentence(s) to {config.parse_path}")
    print(f"wrote {vectors} vector(s) of dimension {embedder.DIMENSION} "
          f"to {config.embedding_path}")
    return 0


def entry() -> None:
    raise SystemExit(main())
