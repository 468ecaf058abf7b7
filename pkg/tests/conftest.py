"""Shared fixtures and independent oracles for the test suite.

The oracles here are deliberately written differently from the library code
they check (recursive path enumeration, all-pairs counting) so the two sides
cannot share a bug.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np
import pytest

from sentorder.similarity import SimilarityMatrix


def make_matrix(n, rng, symmetric=True, dyadic=False, scorer_tag="test"):
    """Random similarity matrix with entries in [-1, 1] and a zero diagonal.

    dyadic=True snaps entries to multiples of 1/1024 so that sums of a few
    entries are exact in float64 (addition becomes order-independent).
    """
    scores = rng.uniform(-1.0, 1.0, size=(n, n))
    if dyadic:
        scores = np.round(scores * 1024.0) / 1024.0
    if symmetric:
        scores = np.triu(scores, 1)
        scores = scores + scores.T
    np.fill_diagonal(scores, 0.0)
    return SimilarityMatrix(n=n, scores=scores, symmetric=symmetric, scorer_tag=scorer_tag)


def enumerate_path_values(m):
    """Oracle: (objective, perm) for every permutation, via recursion.

    Objectives accumulate left to right, matching the library convention, so
    values are bit-comparable.
    """
    n = m.n
    scores = m.scores
    out = []

    if n == 1:
        return [(0.0, (0,))]

    def walk(perm, total):
        if len(perm) == n:
            out.append((total, tuple(perm)))
            return
        last = perm[-1]
        for j in range(n):
            if j not in perm:
                walk(perm + [j], total + scores[last][j])

    for first in range(n):
        walk([first], 0.0)
    return out


def argmax_set(m):
    """Oracle: the set of maximizing permutations and the maximum objective."""
    values = enumerate_path_values(m)
    best = max(v for v, _ in values)
    return best, {p for v, p in values if v == best}


def count_inversions_oracle(seq):
    """All-pairs inversion count."""
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return inv


WORDS = (
    "river bridge morning coffee letter garden window travel music winter "
    "market friend doctor school bottle animal yellow silver carpet candle "
    "hammer pencil dinner branch planet engine valley museum pocket ladder"
).split()


def synthetic_stories(n_stories, sentences_per_story=5, seed=0):
    """Deterministic synthetic story rows (id, title, sentences)."""
    rows = []
    for s in range(n_stories):
        sid = f"story-{s:05d}"
        title = f"Title {s}"
        sentences = []
        for k in range(sentences_per_story):
            w = [
                WORDS[(s * 7 + k * 3 + j) % len(WORDS)]
                for j in range(4 + (s + k) % 3)
            ]
            sentences.append(" ".join(w).capitalize() + ".")
        rows.append((sid, title, sentences))
    return rows


def write_corpus_csv(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["storyid", "storytitle", "sentence1", "sentence2", "sentence3", "sentence4", "sentence5"]
        )
        for sid, title, sentences in rows:
            writer.writerow([sid, title, *sentences])


def coherent_embedding(story_index, gold_index, dim=16, noise=0.25, rng=None):
    """Unit vector on a smooth per-story trajectory: consecutive gold
    sentences point in nearby directions, so similarity falls off with gold
    distance and the max-consecutive-similarity path tends to the gold order."""
    theta0 = 0.7 * story_index
    delta = 0.35
    v = np.zeros(dim)
    v[0] = math.cos(theta0 + gold_index * delta)
    v[1] = math.sin(theta0 + gold_index * delta)
    if rng is not None and noise > 0:
        v = v + noise * rng.standard_normal(dim)
    return v


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def build_fixture(root, n_stories=12, seed=42, dim=16, noise=0.25):
    """Write a synthetic corpus plus aligned sentence/token embedding files.

    Embeddings are generated for the shuffled order produced by
    shuffle_story(story, seed), which is exactly what a run with the same
    seed will see. Returns a dict of paths.
    """
    from sentorder.corpus import shuffle_story, Story
    from sentorder.embedding_io import (
        SentenceVectors,
        TokenVectors,
        write_sentence_vectors,
        write_token_vectors,
    )

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    rows = synthetic_stories(n_stories)
    corpus_path = root / "corpus.csv"
    write_corpus_csv(corpus_path, rows)

    noise_rng = np.random.default_rng(seed ^ 0xC0FFEE)
    sent_records = {}
    tok_records = {}
    for s_idx, (sid, title, sentences) in enumerate(rows):
        story = Story(id=sid, sentences=tuple(sentences), title=title)
        inst = shuffle_story(story, seed)
        origin = [0] * inst.n
        for k, p in enumerate(inst.gold_perm):
            origin[p] = k
        vecs = np.vstack(
            [coherent_embedding(s_idx, origin[p], dim=dim, noise=noise, rng=noise_rng) for p in range(inst.n)]
        )
        sent_records[sid] = SentenceVectors(
            story_id=sid, vectors=vecs, dim=dim, encoder_tag="synthetic"
        )
        tok_sentences = []
        for p in range(inst.n):
            base = coherent_embedding(s_idx, origin[p], dim=dim, noise=0.0)
            toks = tuple(
                (f"tok{p}{t}", base + noise * 0.5 * noise_rng.standard_normal(dim))
                for t in range(3)
            )
            tok_sentences.append(toks)
        tok_records[sid] = TokenVectors(
            story_id=sid, sentences=tuple(tok_sentences), dim=dim, encoder_tag="synthetic-tok"
        )

    sent_path = root / "sentence_vectors.jsonl"
    tok_path = root / "token_vectors.jsonl"
    write_sentence_vectors(sent_records, sent_path)
    write_token_vectors(tok_records, tok_path)
    return {
        "corpus": corpus_path,
        "sentence_vectors": sent_path,
        "token_vectors": tok_path,
        "n_stories": n_stories,
        "seed": seed,
    }
