"""End-to-end pipeline: corpus -> shuffle -> similarity -> orderer -> metrics.

A run is fully determined by its RunConfig: fixed (corpus, embeddings,
config, seed) produce byte-identical reports, whatever the worker count.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from . import report as report_mod
from .corpus import ShuffledInstance, SplitSpec, load_corpus, read_shuffled, shuffle_story, split_corpus
from .embedding_io import read_sentence_vectors, read_token_vectors
from .metrics import MetricReport, aggregate, score_story, write_per_story_csv
from .orderers import BRUTE_FORCE_CAP, Ordering, brute_force_order, dp_order, nearest_neighbor_order
from .similarity import cbow_reduce, ngram_overlap_matrix, sentence_matrix, word_level_matrix

logger = logging.getLogger("sentorder")

SPLITS = ("train", "valid", "test", "all")
SCORERS = ("cosine-sentence", "word-level", "cbow-cosine", "ngram-overlap")
ORDERERS = ("brute-force", "dp", "nearest-neighbor")

_SENTENCE_SCORERS = {"cosine-sentence"}
_TOKEN_SCORERS = {"word-level", "cbow-cosine"}


@dataclass(frozen=True)
class RunConfig:
    corpus_path: str
    split: str = "test"
    scorer: str = "cosine-sentence"
    orderer: str = "brute-force"
    embeddings_path: str | None = None
    seed: int = 42
    output_dir: str = "run-output"

    def __post_init__(self):
        if self.split not in SPLITS:
            raise ValueError(f"unknown split {self.split!r}, expected one of {SPLITS}")
        if self.scorer not in SCORERS:
            raise ValueError(f"unknown scorer {self.scorer!r}, expected one of {SCORERS}")
        if self.orderer not in ORDERERS:
            raise ValueError(f"unknown orderer {self.orderer!r}, expected one of {ORDERERS}")
        if self.scorer != "ngram-overlap" and not self.embeddings_path:
            raise ValueError(
                f"scorer {self.scorer!r} needs an embeddings file (--embeddings); "
                "only ngram-overlap runs without one"
            )


def select_split(stories, split: str, seed: int):
    if split == "all":
        return list(stories)
    train, valid, test = split_corpus(stories, SplitSpec(seed=seed))
    return {"train": train, "valid": valid, "test": test}[split]


def _load_embeddings(config: RunConfig, instances: list[ShuffledInstance]):
    if config.scorer == "ngram-overlap":
        return None
    if config.scorer in _SENTENCE_SCORERS:
        table = read_sentence_vectors(config.embeddings_path)
    else:
        table = read_token_vectors(config.embeddings_path)
    missing = [inst.story_id for inst in instances if inst.story_id not in table]
    if missing:
        shown = ", ".join(missing[:10])
        more = f" (and {len(missing) - 10} more)" if len(missing) > 10 else ""
        raise ValueError(
            f"{config.embeddings_path}: no embeddings for {len(missing)} "
            f"selected stories: {shown}{more}"
        )
    for inst in instances:
        have = table[inst.story_id].n
        if have != inst.n:
            raise ValueError(
                f"{config.embeddings_path}: story {inst.story_id!r} has {have} "
                f"embedded sentences, instance has {inst.n}"
            )
    return table


def build_matrix(config_scorer: str, inst: ShuffledInstance, embeddings):
    if config_scorer == "ngram-overlap":
        return ngram_overlap_matrix(list(inst.shuffled))
    if config_scorer == "cosine-sentence":
        return sentence_matrix(embeddings[inst.story_id])
    if config_scorer == "word-level":
        return word_level_matrix(embeddings[inst.story_id])
    if config_scorer == "cbow-cosine":
        return sentence_matrix(cbow_reduce(embeddings[inst.story_id]))
    raise ValueError(f"unknown scorer {config_scorer!r}")


def order_matrix(orderer: str, matrix) -> Ordering:
    if orderer == "brute-force":
        if matrix.n > BRUTE_FORCE_CAP:
            logger.warning(
                "n=%d exceeds the brute-force cap (%d); falling back to dp",
                matrix.n,
                BRUTE_FORCE_CAP,
            )
            return dp_order(matrix)
        return brute_force_order(matrix)
    if orderer == "dp":
        return dp_order(matrix)
    if orderer == "nearest-neighbor":
        return nearest_neighbor_order(matrix)
    raise ValueError(f"unknown orderer {orderer!r}")


def _process_instance(config: RunConfig, inst: ShuffledInstance, embeddings):
    matrix = build_matrix(config.scorer, inst, embeddings)
    ordering = order_matrix(config.orderer, matrix)
    result = score_story(inst.story_id, ordering.perm, inst.gold_perm)
    return ordering, result


def run(config: RunConfig, workers: int = 1) -> MetricReport:
    """Execute one configuration end to end and write its report files.

    Writes report.json, per_story.csv, report.txt, orderings.jsonl and
    tau_histogram.png into config.output_dir.
    """
    stories = load_corpus(config.corpus_path)
    selected = select_split(stories, config.split, config.seed)
    if not selected:
        raise ValueError(f"split {config.split!r} selected no stories")
    logger.info("ordering %d stories (split=%s)", len(selected), config.split)
    instances = [shuffle_story(story, config.seed) for story in selected]
    embeddings = _load_embeddings(config, instances)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda i: _process_instance(config, i, embeddings), instances))
    else:
        outcomes = [_process_instance(config, inst, embeddings) for inst in instances]

    orderings = [o for o, _ in outcomes]
    report = aggregate([r for _, r in outcomes])
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_orderings(orderings, [i.story_id for i in instances], out_dir / "orderings.jsonl")
    _write_reports(report, asdict(config), out_dir)
    return report


def _write_reports(report: MetricReport, config_dict: dict, out_dir: Path) -> None:
    report_mod.write_report_json(report, config_dict, out_dir / "report.json")
    write_per_story_csv(report, out_dir / "per_story.csv")
    text = report_mod.write_table(report, config_dict, out_dir / "report.txt")
    report_mod.render_tau_histogram(report, out_dir / "tau_histogram.png")
    logger.info("\n%s", text)


def write_orderings(orderings: list[Ordering], story_ids: list[str], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for story_id, o in zip(story_ids, orderings):
            fh.write(
                json.dumps(
                    {
                        "story_id": story_id,
                        "perm": list(o.perm),
                        "objective": o.objective,
                        "orderer_tag": o.orderer_tag,
                    },
                    ensure_ascii=False,
                )
            )
            fh.write("\n")


def read_orderings(path: str | Path) -> dict[str, Ordering]:
    out: dict[str, Ordering] = {}
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            story_id = obj["story_id"]
            if story_id in out:
                raise ValueError(f"{path}: line {line_num}: duplicate story {story_id!r}")
            out[story_id] = Ordering(
                perm=tuple(obj["perm"]),
                objective=float(obj.get("objective", 0.0)),
                orderer_tag=str(obj.get("orderer_tag", "")),
            )
    return out


def evaluate_orderings(
    orderings_path: str | Path, shuffled_path: str | Path, output_dir: str | Path
) -> MetricReport:
    """Score an orderings file against the gold permutations recorded in a
    shuffled-instance file; writes the same report set as run()."""
    orderings = read_orderings(orderings_path)
    instances = read_shuffled(shuffled_path)
    by_id = {inst.story_id: inst for inst in instances}
    missing = [sid for sid in orderings if sid not in by_id]
    if missing:
        shown = ", ".join(missing[:10])
        raise ValueError(
            f"{shuffled_path}: no shuffled instance for {len(missing)} ordered "
            f"stories: {shown}"
        )
    if not orderings:
        raise ValueError(f"{orderings_path}: no orderings to evaluate")
    results = []
    for story_id, ordering in orderings.items():
        inst = by_id[story_id]
        results.append(score_story(story_id, ordering.perm, inst.gold_perm))
    report = aggregate(results)
    out_dir = Path(output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    config_dict = {
        "mode": "evaluate",
        "orderings_path": str(orderings_path),
        "shuffled_path": str(shuffled_path),
    }
    _write_reports(report, config_dict, out_dir)
    return report


def compare(report_paths, output_dir: str | Path | None = None) -> list[dict]:
    """Build the side-by-side table for several report.json files, sorted by
    mean_tau descending. Optionally writes comparison.{csv,txt,png}."""
    rows = []
    seen_labels: set[str] = set()
    for path in report_paths:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        cfg = payload.get("config", {})
        if "scorer" in cfg and "orderer" in cfg:
            label = f"{cfg['scorer']}+{cfg['orderer']}"
        else:
            label = Path(path).stem
        base = label
        k = 2
        while label in seen_labels:
            label = f"{base} ({k})"
            k += 1
        seen_labels.add(label)
        rows.append(
            {
                "label": label,
                "mean_tau": payload.get("mean_tau"),
                "pmr": payload.get("pmr"),
                "mean_pairwise_accuracy": payload.get("mean_pairwise_accuracy"),
                "count": payload.get("count"),
            }
        )
    rows.sort(key=lambda r: (r["mean_tau"] is None, -(r["mean_tau"] or 0.0)))
    if output_dir is not None:
        out_dir = Path(output_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report_mod.write_comparison_csv(rows, out_dir / "comparison.csv")
        (out_dir / "comparison.txt").write_text(
            report_mod.render_comparison_table(rows), encoding="utf-8"
        )
        report_mod.render_comparison_chart(rows, out_dir / "comparison.png")
    return rows
