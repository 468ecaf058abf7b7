"""Pairwise sentence similarity scorers.

Every scorer produces a SimilarityMatrix whose [i][j] entry scores sentence i
against sentence j. The diagonal is 0 by convention and ignored by all
consumers; orderers must skip i == j.
"""

from __future__ import annotations

import json
import math
import string
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedding_io import SentenceVectors, TokenVectors

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SimilarityMatrix:
    n: int
    scores: np.ndarray
    symmetric: bool
    scorer_tag: str

    def __post_init__(self):
        if self.scores.shape != (self.n, self.n):
            raise ValueError(f"scores shape {self.scores.shape} does not match n={self.n}")
        if self.symmetric:
            if not np.allclose(self.scores, self.scores.T, rtol=0.0, atol=_SYMMETRY_TOL):
                raise ValueError("matrix flagged symmetric but scores[i][j] != scores[j][i]")

    def dump_json(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(
                {"n": self.n, "scores": self.scores.tolist(), "symmetric": self.symmetric},
                fh,
            )


def cosine(u, v) -> float:
    """Cosine similarity dot(u,v)/(|u||v|), clamped into [-1, 1].

    Raises on length mismatch or zero-norm input; a zero vector has no
    direction and must never silently score 0.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"vector lengths differ: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValueError("cosine undefined for zero-norm vector")
    c = float(np.dot(u, v)) / (nu * nv)
    return max(-1.0, min(1.0, c))


def sentence_matrix(vecs: SentenceVectors) -> SimilarityMatrix:
    """Cosine similarity between every pair of sentence vectors.

    Each unordered pair is computed once and mirrored, so the matrix equals
    its transpose exactly.
    """
    n = vecs.n
    scores = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            c = cosine(vecs.vectors[i], vecs.vectors[j])
            scores[i, j] = c
            scores[j, i] = c
    return SimilarityMatrix(
        n=n, scores=scores, symmetric=True, scorer_tag=f"cosine:{vecs.encoder_tag}"
    )


def _max_cosine_to_sentence(w: np.ndarray, sentence) -> float:
    return max(cosine(w, t_vec) for _, t_vec in sentence)


def word_level_similarity(si, sj) -> float:
    """Bidirectional word-to-sentence similarity of two token lists.

    Each word contributes its best cosine match in the other sentence;
    the two directions are averaged:

        r = sum_{w in si} max_cos(w, sj) / (2|si|)
          + sum_{w in sj} max_cos(w, si) / (2|sj|)

    Symmetric in (si, sj) by construction. Inputs are sequences of
    (token, vector) pairs.
    """
    if not si or not sj:
        raise ValueError("word_level_similarity needs at least one token per sentence")
    left = 0.0
    for _, w in si:
        left += _max_cosine_to_sentence(w, sj)
    right = 0.0
    for _, w in sj:
        right += _max_cosine_to_sentence(w, si)
    return left / (2 * len(si)) + right / (2 * len(sj))


def word_level_matrix(toks: TokenVectors) -> SimilarityMatrix:
    """word_level_similarity over every sentence pair of a story."""
    n = toks.n
    scores = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            r = word_level_similarity(toks.sentences[i], toks.sentences[j])
            scores[i, j] = r
            scores[j, i] = r
    return SimilarityMatrix(
        n=n, scores=scores, symmetric=True, scorer_tag=f"word-level:{toks.encoder_tag}"
    )


def cbow_reduce(toks: TokenVectors) -> SentenceVectors:
    """Bag-of-words sentence vectors: the arithmetic mean of the token vectors."""
    means = []
    for idx, sentence in enumerate(toks.sentences):
        if not sentence:
            raise ValueError(f"story {toks.story_id!r}: sentence {idx} has no tokens")
        m = np.mean([v for _, v in sentence], axis=0)
        if not np.any(m):
            raise ValueError(
                f"story {toks.story_id!r}: sentence {idx} mean vector is zero (cosine undefined)"
            )
        means.append(m)
    return SentenceVectors(
        story_id=toks.story_id, vectors=np.vstack(means), dim=toks.dim, encoder_tag="cbow"
    )


_PUNCT = set(string.punctuation)


def tokenize(sentence: str) -> list[str]:
    """Lowercase, split on whitespace, and detach leading/trailing punctuation
    of each word into separate tokens ("Dog." -> ["dog", "."])."""
    tokens: list[str] = []
    for word in sentence.lower().split():
        head = []
        while word and word[0] in _PUNCT:
            head.append(word[0])
            word = word[1:]
        tail = []
        while word and word[-1] in _PUNCT:
            tail.append(word[-1])
            word = word[:-1]
        tokens.extend(head)
        if word:
            tokens.append(word)
        tokens.extend(reversed(tail))
    return tokens


def _ngram_counts(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def smoothed_bleu(candidate: list[str], reference: list[str], max_n: int = 4) -> float:
    """BLEU of a single candidate/reference pair with add-one smoothing.

    Precisions for orders 1..max_n use clipped n-gram matches; any order with
    zero matches is smoothed as (matches+1)/(total+1) so the geometric mean
    never collapses to 0. The brevity penalty exp(1 - r/c) applies when the
    candidate is shorter than the reference. Result is in (0, 1].
    """
    if not candidate or not reference:
        raise ValueError("smoothed_bleu needs non-empty token lists")
    log_sum = 0.0
    for order in range(1, max_n + 1):
        cand_counts = _ngram_counts(candidate, order)
        total = sum(cand_counts.values())
        if total:
            ref_counts = _ngram_counts(reference, order)
            matches = sum(min(c, ref_counts[g]) for g, c in cand_counts.items())
        else:
            matches = 0
        if matches == 0:
            p = (matches + 1) / (total + 1)
        else:
            p = matches / total
        log_sum += math.log(p) / max_n
    c, r = len(candidate), len(reference)
    bp = 1.0 if c > r else math.exp(1 - r / c)
    return bp * math.exp(log_sum)


def ngram_overlap_matrix(sentences, max_n: int = 4) -> SimilarityMatrix:
    """Smoothed-BLEU overlap between every ordered sentence pair.

    sentences are raw strings; scores[i][j] treats sentence i as the
    candidate and sentence j as the reference, which is not symmetric for
    different-length sentences.
    """
    token_lists = []
    for idx, s in enumerate(sentences):
        toks = tokenize(s)
        if not toks:
            raise ValueError(f"sentence {idx} tokenizes to nothing: {s!r}")
        token_lists.append(toks)
    n = len(token_lists)
    scores = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(n):
            if i != j:
                scores[i, j] = smoothed_bleu(token_lists[i], token_lists[j], max_n=max_n)
    return SimilarityMatrix(n=n, scores=scores, symmetric=False, scorer_tag="ngram-overlap")
