"""Command-line entry point.

Subcommands:
  shuffle   corpus CSV -> shuffled-instance JSONL
  order     run one scorer/orderer configuration and write its reports
  evaluate  score an orderings file against a shuffled-instance file
  compare   side-by-side table for several report.json files
"""

from __future__ import annotations

import argparse
import logging
import sys

from .corpus import load_corpus, shuffle_story, write_shuffled
from .harness import ORDERERS, SCORERS, SPLITS, RunConfig, compare, evaluate_orderings, run, select_split
from .report import render_comparison_table, render_table


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentorder",
        description="Order shuffled sentences by maximizing consecutive-pair similarity.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shuffle", help="shuffle a corpus into a JSONL of instances")
    p.add_argument("--corpus", required=True, help="ROCStories-format CSV")
    p.add_argument("--split", choices=SPLITS, default="all", help="which split to shuffle")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="output shuffled JSONL path")

    p = sub.add_parser("order", help="run one configuration end to end")
    p.add_argument("--corpus", required=True, help="ROCStories-format CSV")
    p.add_argument("--split", choices=SPLITS, default="test")
    p.add_argument("--scorer", choices=SCORERS, default="cosine-sentence")
    p.add_argument("--orderer", choices=ORDERERS, default="brute-force")
    p.add_argument("--embeddings", default=None, help="embedding JSONL (granularity must match scorer)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="output directory for reports")
    p.add_argument("--workers", type=int, default=1, help="per-story worker threads")

    p = sub.add_parser("evaluate", help="score an orderings file")
    p.add_argument("--orderings", required=True, help="orderings JSONL (from `order`)")
    p.add_argument("--shuffled", required=True, help="shuffled JSONL with gold permutations")
    p.add_argument("--out", required=True, help="output directory for reports")

    p = sub.add_parser("compare", help="tabulate several report.json files")
    p.add_argument("reports", nargs="+", help="report.json paths")
    p.add_argument("--out", default=None, help="directory for comparison.{csv,txt,png}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return _dispatch(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "shuffle":
        stories = load_corpus(args.corpus)
        selected = select_split(stories, args.split, args.seed)
        instances = [shuffle_story(story, args.seed) for story in selected]
        write_shuffled(instances, args.out)
        print(f"wrote {len(instances)} shuffled instances to {args.out}")
        return 0

    if args.command == "order":
        config = RunConfig(
            corpus_path=args.corpus,
            split=args.split,
            scorer=args.scorer,
            orderer=args.orderer,
            embeddings_path=args.embeddings,
            seed=args.seed,
            output_dir=args.out,
        )
        report = run(config, workers=args.workers)
        print(render_table(report, {"scorer": args.scorer, "orderer": args.orderer, "split": args.split, "seed": args.seed}), end="")
        return 0

    if args.command == "evaluate":
        report = evaluate_orderings(args.orderings, args.shuffled, args.out)
        print(render_table(report, {"orderings": args.orderings}), end="")
        return 0

    if args.command == "compare":
        rows = compare(args.reports, output_dir=args.out)
        print(render_comparison_table(rows), end="")
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
