"""Sentence ordering toolkit: reorder shuffled sentences by maximizing the
summed similarity of consecutive pairs, plus metrics and an evaluation CLI."""

__version__ = "0.1.0"

from .corpus import Story, ShuffledInstance, SplitSpec, load_corpus, shuffle_story, split_corpus
from .embedding_io import SentenceVectors, TokenVectors, read_sentence_vectors, read_token_vectors
from .similarity import (
    SimilarityMatrix,
    cosine,
    sentence_matrix,
    word_level_similarity,
    word_level_matrix,
    cbow_reduce,
    ngram_overlap_matrix,
)
from .orderers import Ordering, brute_force_order, dp_order, nearest_neighbor_order
from .metrics import StoryResult, MetricReport, kendall_tau, pairwise_accuracy, aggregate
from .harness import RunConfig, run, compare

__all__ = [
    "Story",
    "ShuffledInstance",
    "SplitSpec",
    "load_corpus",
    "shuffle_story",
    "split_corpus",
    "SentenceVectors",
    "TokenVectors",
    "read_sentence_vectors",
    "read_token_vectors",
    "SimilarityMatrix",
    "cosine",
    "sentence_matrix",
    "word_level_similarity",
    "word_level_matrix",
    "cbow_reduce",
    "ngram_overlap_matrix",
    "Ordering",
    "brute_force_order",
    "dp_order",
    "nearest_neighbor_order",
    "StoryResult",
    "MetricReport",
    "kendall_tau",
    "pairwise_accuracy",
    "aggregate",
    "RunConfig",
    "run",
    "compare",
]
