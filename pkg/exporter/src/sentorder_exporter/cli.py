"""CLI: export embeddings for a shuffled-instance file.

    sentorder-export --input shuffled.jsonl --encoder sbert-wk --out sbert.jsonl
    sentorder-export --input shuffled.jsonl --encoder static-word \
        --vectors glove.txt --out tokens.jsonl
"""

from __future__ import annotations

import argparse
import logging
import sys

from .export import export
from .spec import ENCODERS, EncoderSpec, ModelUnavailableError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentorder-export",
        description="Encode shuffled sentences into an embedding JSONL file.",
    )
    parser.add_argument("--input", required=True, help="shuffled-instance JSONL")
    parser.add_argument("--encoder", required=True, choices=sorted(ENCODERS))
    parser.add_argument("--coref", action="store_true", help="replace pronouns with their resolved entities first")
    parser.add_argument("--out", required=True, help="output embedding JSONL")
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--model", default=None, help="override the encoder's model artifact path")
    parser.add_argument("--vectors", default=None, help="word-vector text file (static-word)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    spec = EncoderSpec(
        name=args.encoder,
        coref=args.coref,
        batch_size=args.batch_size,
        model_path=args.model,
        vectors_path=args.vectors,
    )
    try:
        records = export(args.input, spec, args.out)
    except ModelUnavailableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {records} records to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
