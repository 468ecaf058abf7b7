"""Ordering quality metrics: Kendall's tau via inversion counting, perfect
match ratio, and per-pair accuracy, with corpus-level aggregation.

Both the predicted and the gold ordering are sequences of shuffled-sentence
indices in reading order. tau for a single-sentence story is undefined; such
stories are excluded from the tau and pairwise means but still count toward
PMR (a 1-sentence prediction always matches exactly).
"""

from __future__ import annotations

import csv
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class StoryResult:
    story_id: str
    n: int
    tau: float | None
    inversions: int
    exact_match: bool
    pairwise_accuracy: float | None


@dataclass(frozen=True)
class MetricReport:
    mean_tau: float | None
    pmr: float
    mean_pairwise_accuracy: float | None
    count: int
    per_story: tuple[StoryResult, ...]

    def to_json_dict(self) -> dict:
        return {
            "mean_tau": self.mean_tau,
            "pmr": self.pmr,
            "mean_pairwise_accuracy": self.mean_pairwise_accuracy,
            "count": self.count,
        }


def _validate_perm(p, name: str) -> list[int]:
    p = list(p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{name} is not a permutation of 0..{len(p) - 1}: {p}")
    return p


def count_inversions(seq) -> int:
    """Number of pairs (a, b), a < b, with seq[a] > seq[b].

    Insertion into a sorted prefix keeps the comparison count at
    O(n log n); the list insert is O(n) but n here is a sentence count.
    """
    inversions = 0
    sorted_prefix: list[int] = []
    for i, value in enumerate(seq):
        j = bisect_right(sorted_prefix, value)
        inversions += i - j
        sorted_prefix.insert(j, value)
    return inversions


def kendall_tau(predicted, gold) -> tuple[float, int]:
    """Rank correlation of a predicted ordering against gold.

    The prediction is re-expressed as ranks in the gold frame; inversions
    are discordant pairs and tau = 1 - 2*inversions / (n*(n-1)/2).
    Returns (tau, inversions). n must be at least 2.
    """
    predicted = _validate_perm(predicted, "predicted")
    gold = _validate_perm(gold, "gold")
    n = len(predicted)
    if len(gold) != n:
        raise ValueError(f"length mismatch: predicted n={n}, gold n={len(gold)}")
    if n < 2:
        raise ValueError("tau is undefined for fewer than 2 sentences")
    pos_in_gold = [0] * n
    for rank, idx in enumerate(gold):
        pos_in_gold[idx] = rank
    ranks = [pos_in_gold[idx] for idx in predicted]
    inversions = count_inversions(ranks)
    pairs = n * (n - 1) // 2
    return 1.0 - 2.0 * inversions / pairs, inversions


def pairwise_accuracy(predicted, gold) -> float:
    """Fraction of sentence pairs whose relative order agrees with gold."""
    _, inversions = kendall_tau(predicted, gold)
    n = len(predicted)
    pairs = n * (n - 1) // 2
    return 1.0 - inversions / pairs


def score_story(story_id: str, predicted, gold) -> StoryResult:
    """All per-story metrics for one prediction."""
    predicted = _validate_perm(predicted, "predicted")
    gold = _validate_perm(gold, "gold")
    n = len(predicted)
    if len(gold) != n:
        raise ValueError(f"length mismatch: predicted n={n}, gold n={len(gold)}")
    exact = predicted == gold
    if n < 2:
        return StoryResult(
            story_id=story_id,
            n=n,
            tau=None,
            inversions=0,
            exact_match=exact,
            pairwise_accuracy=None,
        )
    tau, inversions = kendall_tau(predicted, gold)
    pairs = n * (n - 1) // 2
    return StoryResult(
        story_id=story_id,
        n=n,
        tau=tau,
        inversions=inversions,
        exact_match=exact,
        pairwise_accuracy=1.0 - inversions / pairs,
    )


def aggregate(results) -> MetricReport:
    """Corpus aggregates: PMR over all stories, arithmetic means of tau and
    pairwise accuracy over the stories where they are defined."""
    results = tuple(results)
    if not results:
        raise ValueError("cannot aggregate an empty result list")
    taus = [r.tau for r in results if r.tau is not None]
    pws = [r.pairwise_accuracy for r in results if r.pairwise_accuracy is not None]
    return MetricReport(
        mean_tau=sum(taus) / len(taus) if taus else None,
        pmr=sum(1 for r in results if r.exact_match) / len(results),
        mean_pairwise_accuracy=sum(pws) / len(pws) if pws else None,
        count=len(results),
        per_story=results,
    )


def write_per_story_csv(report: MetricReport, path: str | Path) -> None:
    """One CSV row per story, aligned with the aggregate report."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["story_id", "n", "tau", "inversions", "exact_match", "pairwise_accuracy"]
        )
        for r in report.per_story:
            writer.writerow(
                [
                    r.story_id,
                    r.n,
                    "" if r.tau is None else repr(r.tau),
                    r.inversions,
                    int(r.exact_match),
                    "" if r.pairwise_accuracy is None else repr(r.pairwise_accuracy),
                ]
            )
