"""Fixtures for the exporter tests: tiny shuffled files, a word-vector file,
and deterministic stub encoders for exercising the pipeline without any
pretrained artifacts."""

from __future__ import annotations

import hashlib
import json

import numpy as np
import pytest


STORIES = [
    ("st-0", ["Anna packed her bag.", "The train left at dawn.", "She slept through the ride."]),
    ("st-1", ["Rain hit the window.", "The cat watched the drops.", "It purred quietly."]),
]


def write_shuffled(path, stories=None):
    stories = stories if stories is not None else STORIES
    with open(path, "w", encoding="utf-8") as fh:
        for story_id, sentences in stories:
            fh.write(
                json.dumps(
                    {
                        "story_id": story_id,
                        "seed": 42,
                        "shuffled": sentences,
                        "gold_perm": list(range(len(sentences))),
                    }
                )
            )
            fh.write("\n")
    return path


@pytest.fixture
def shuffled_file(tmp_path):
    return write_shuffled(tmp_path / "shuffled.jsonl")


def _hash_vector(text, dim):
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    seed = int.from_bytes(digest[:8], "big")
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


class StubSentenceEncoder:
    """Deterministic text-hash sentence encoder; records what it encoded."""

    def __init__(self, dim):
        self.dim = dim
        self.seen = []

    def encode_batch(self, sentences):
        self.seen.extend(sentences)
        return [_hash_vector(s, self.dim) for s in sentences]


class StubTokenEncoder:
    def __init__(self, dim):
        self.dim = dim

    def encode_batch(self, sentences):
        from sentorder_exporter.encoders import tokenize

        return [
            [(tok, _hash_vector(tok, self.dim)) for tok in tokenize(s)] for s in sentences
        ]


VOCAB = [
    "anna", "packed", "her", "bag", "the", "train", "left", "at", "dawn",
    "she", "slept", "through", "ride", "rain", "hit", "window", "cat",
    "watched", "drops", "it", "purred", "quietly", ".", ",",
]


def write_word_vectors(path, dim=8, vocab=VOCAB):
    with open(path, "w", encoding="utf-8") as fh:
        for word in vocab:
            vec = _hash_vector(word, dim)
            fh.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")
    return path


@pytest.fixture
def vectors_file(tmp_path):
    return write_word_vectors(tmp_path / "vectors.txt")
