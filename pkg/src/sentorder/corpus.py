"""ROCStories-style corpus handling: CSV loading, seeded shuffles with the
gold permutation recorded, and deterministic train/valid/test splits."""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .rng import Pcg32, story_stream

logger = logging.getLogger("sentorder")

ID_COLUMN = "storyid"
TITLE_COLUMN = "storytitle"
_SENTENCE_COLUMN = re.compile(r"sentence(\d+)$")

# Stream selector for the split shuffle; any fixed constant works, it just
# has to stay fixed so splits reproduce across runs.
_SPLIT_STREAM = 0x5EED5117


@dataclass(frozen=True)
class Story:
    """One gold story: id, optional title, and its sentences in gold order."""

    id: str
    sentences: tuple[str, ...]
    title: str | None = None

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"story {self.id!r} has no sentences")
        for k, s in enumerate(self.sentences):
            if not s.strip():
                raise ValueError(f"story {self.id!r}: sentence {k} is empty")


@dataclass(frozen=True)
class ShuffledInstance:
    """A story as the orderer sees it.

    gold_perm[k] is the position in `shuffled` of the k-th gold sentence, so
    reading the shuffled list at positions gold_perm[0..n-1] recovers the
    gold order.
    """

    story_id: str
    shuffled: tuple[str, ...]
    gold_perm: tuple[int, ...]
    seed: int

    @property
    def n(self) -> int:
        return len(self.shuffled)

    def gold_order(self) -> tuple[str, ...]:
        return tuple(self.shuffled[p] for p in self.gold_perm)


@dataclass(frozen=True)
class SplitSpec:
    """Ratios for train/valid/test plus the seed driving the assignment."""

    ratios: tuple[float, float, float] = (0.8, 0.1, 0.1)
    seed: int = 42

    def __post_init__(self):
        if len(self.ratios) != 3 or any(r < 0 for r in self.ratios):
            raise ValueError(f"ratios must be three non-negative reals: {self.ratios}")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise ValueError(f"ratios must sum to 1, got {sum(self.ratios)}")


def load_corpus(path: str | Path, format: str = "csv") -> list[Story]:
    """Load stories from a ROCStories CSV (storyid, storytitle, sentence1..5).

    UTF-8, RFC-4180 quoting, header row required. Raises ValueError naming
    the offending row/column on malformed rows, empty sentence cells, or
    duplicate story ids.
    """
    if format != "csv":
        raise ValueError(f"unsupported corpus format: {format!r}")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"corpus file not found: {path}")

    stories: list[Story] = []
    seen_ids: set[str] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected a header row") from None
        columns = _resolve_columns(header, path)
        id_col, title_col, sentence_cols = columns

        for row_num, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"{path}: row {row_num} has {len(row)} cells, header has {len(header)}"
                )
            story_id = row[id_col].strip()
            if not story_id:
                raise ValueError(f"{path}: row {row_num} has an empty story id")
            if story_id in seen_ids:
                raise ValueError(f"{path}: row {row_num} duplicates story id {story_id!r}")
            seen_ids.add(story_id)
            sentences = []
            for k, col in enumerate(sentence_cols, start=1):
                cell = row[col].strip()
                if not cell:
                    raise ValueError(
                        f"{path}: row {row_num} column sentence{k} is empty"
                    )
                sentences.append(cell)
            title = row[title_col].strip() if title_col is not None else None
            stories.append(Story(id=story_id, sentences=tuple(sentences), title=title or None))
    logger.info("loaded %d stories from %s", len(stories), path)
    return stories


def _resolve_columns(header: list[str], path: Path):
    names = [h.strip().lower() for h in header]
    if ID_COLUMN not in names:
        raise ValueError(f"{path}: header is missing the {ID_COLUMN!r} column: {header}")
    id_col = names.index(ID_COLUMN)
    title_col = names.index(TITLE_COLUMN) if TITLE_COLUMN in names else None

    numbered: dict[int, int] = {}
    for idx, name in enumerate(names):
        m = _SENTENCE_COLUMN.match(name)
        if m:
            numbered[int(m.group(1))] = idx
    expected = list(range(1, 6))
    if sorted(numbered) != expected:
        raise ValueError(
            f"{path}: header must contain sentence1..sentence5, found "
            f"{sorted(numbered) or 'none'}"
        )
    return id_col, title_col, [numbered[k] for k in expected]


def shuffle_story(story: Story, seed: int) -> ShuffledInstance:
    """Fisher-Yates shuffle of a story's sentences under the per-story PCG32
    stream for (seed, story.id); records gold_perm so the shuffle inverts."""
    n = len(story.sentences)
    origin = list(range(n))  # origin[i] = gold index of the sentence now at i
    story_stream(seed, story.id).shuffle(origin)
    shuffled = tuple(story.sentences[g] for g in origin)
    gold_perm = [0] * n
    for pos, g in enumerate(origin):
        gold_perm[g] = pos
    return ShuffledInstance(
        story_id=story.id, shuffled=shuffled, gold_perm=tuple(gold_perm), seed=seed
    )


def split_corpus(
    stories: list[Story], spec: SplitSpec
) -> tuple[list[Story], list[Story], list[Story]]:
    """Deterministic seeded split. Train and valid get floor(n*ratio) stories,
    the remainder goes to test; the three parts partition the input."""
    order = list(range(len(stories)))
    Pcg32(spec.seed, _SPLIT_STREAM).shuffle(order)
    n = len(stories)
    n_train = int(n * spec.ratios[0])
    n_valid = int(n * spec.ratios[1])
    train = [stories[i] for i in order[:n_train]]
    valid = [stories[i] for i in order[n_train : n_train + n_valid]]
    test = [stories[i] for i in order[n_train + n_valid :]]
    return train, valid, test


def write_shuffled(instances: list[ShuffledInstance], path: str | Path) -> None:
    """Write shuffled instances as JSON Lines (UTF-8, one object per line)."""
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(
                json.dumps(
                    {
                        "story_id": inst.story_id,
                        "seed": inst.seed,
                        "shuffled": list(inst.shuffled),
                        "gold_perm": list(inst.gold_perm),
                    },
                    ensure_ascii=False,
                )
            )
            fh.write("\n")


def read_shuffled(path: str | Path) -> list[ShuffledInstance]:
    """Read a shuffled-instance JSONL file written by write_shuffled."""
    instances = []
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {line_num} is not valid JSON: {exc}") from None
            inst = ShuffledInstance(
                story_id=obj["story_id"],
                shuffled=tuple(obj["shuffled"]),
                gold_perm=tuple(obj["gold_perm"]),
                seed=obj["seed"],
            )
            if sorted(inst.gold_perm) != list(range(inst.n)):
                raise ValueError(
                    f"{path}: line {line_num} gold_perm is not a permutation of 0..{inst.n - 1}"
                )
            instances.append(inst)
    return instances
