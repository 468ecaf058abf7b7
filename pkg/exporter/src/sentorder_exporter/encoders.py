"""Encoder backends.

Each backend is a callable mapping a batch of sentences to embeddings:
sentence granularity returns one vector per sentence; token granularity
returns, per sentence, a list of (token, vector) pairs. Heavyweight runtimes
are imported lazily so the package works wherever at least one backend's
artifacts exist.
"""

from __future__ import annotations

import string
from pathlib import Path

import numpy as np

from .spec import ENCODERS, EncoderSpec, ModelUnavailableError

_PUNCT = set(string.punctuation)


def tokenize(sentence: str) -> list[str]:
    """Lowercase whitespace tokenization, leading/trailing punctuation split
    off; mirrors the token convention of the embedding file consumers."""
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


def _unavailable(name: str, cause: Exception) -> ModelUnavailableError:
    info = ENCODERS[name]
    return ModelUnavailableError(
        f"encoder {name!r} is unavailable: cannot load {info.artifact}; "
        f"underlying error: {cause}"
    )


def load_word_vectors(path: str | Path) -> tuple[dict[str, np.ndarray], int]:
    """Parse a `word v1 v2 ...` text file. Returns (table, dim)."""
    path = Path(path)
    if not path.exists():
        raise ModelUnavailableError(f"word-vector file not found: {path}")
    table: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            parts = line.rstrip("\n").split(" ")
            if len(parts) < 2 or not parts[0]:
                if not line.strip():
                    continue
                raise ValueError(f"{path}: line {line_num} is not `word v1 v2 ...`")
            word = parts[0]
            vec = np.array([float(x) for x in parts[1:]], dtype=np.float64)
            if dim is None:
                dim = len(vec)
            elif len(vec) != dim:
                raise ValueError(
                    f"{path}: line {line_num} has dim {len(vec)}, first line had {dim}"
                )
            if not np.any(vec):
                raise ValueError(f"{path}: word {word!r} has an all-zero vector")
            table[word] = vec
    if not table:
        raise ValueError(f"{path}: no word vectors found")
    return table, dim


class StaticWordEncoder:
    """Token backend over a fixed word-vector table; out-of-vocabulary tokens
    are dropped, and a sentence losing every token is an encoding failure."""

    def __init__(self, vectors_path):
        self.table, self.dim = load_word_vectors(vectors_path)

    def encode_batch(self, sentences):
        out = []
        for sentence in sentences:
            pairs = [
                (tok, self.table[tok]) for tok in tokenize(sentence) if tok in self.table
            ]
            out.append(pairs)
        return out


class SbertSentenceEncoder:
    """sentence-transformers backend for the SBERT-WK-style sentence model."""

    def __init__(self, model_path):
        if not model_path:
            raise ModelUnavailableError(
                "encoder 'sbert-wk' needs --model pointing at "
                + ENCODERS["sbert-wk"].artifact
            )
        try:
            from sentence_transformers import SentenceTransformer
        except ImportError as exc:
            raise _unavailable("sbert-wk", exc) from None
        try:
            self.model = SentenceTransformer(model_path)
        except Exception as exc:
            raise _unavailable("sbert-wk", exc) from None
        self.dim = int(self.model.get_sentence_embedding_dimension())

    def encode_batch(self, sentences):
        vecs = self.model.encode(list(sentences), show_progress_bar=False)
        return [np.asarray(v, dtype=np.float64) for v in vecs]


_USE_URL = "https://tfhub.dev/google/universal-sentence-encoder/4"


class UseSentenceEncoder:
    """tensorflow-hub backend for the universal sentence encoder."""

    def __init__(self, model_path):
        try:
            import tensorflow_hub as hub
        except ImportError as exc:
            raise _unavailable("use", exc) from None
        try:
            self.model = hub.load(model_path or _USE_URL)
        except Exception as exc:
            raise _unavailable("use", exc) from None
        self.dim = 512

    def encode_batch(self, sentences):
        vecs = self.model(list(sentences)).numpy()
        return [np.asarray(v, dtype=np.float64) for v in vecs]


_BERT_DEFAULT = "bert-base-uncased"


class BertWordEncoder:
    """transformers backend producing one contextual vector per word; a
    word's wordpiece vectors are mean-pooled."""

    def __init__(self, model_path):
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:
            raise _unavailable("bert-word", exc) from None
        name = model_path or _BERT_DEFAULT
        try:
            self.tokenizer = AutoTokenizer.from_pretrained(name)
            self.model = AutoModel.from_pretrained(name)
        except Exception as exc:
            raise _unavailable("bert-word", exc) from None
        self.model.eval()
        self._torch = torch
        self.dim = int(self.model.config.hidden_size)

    def encode_batch(self, sentences):
        torch = self._torch
        words_per_sentence = [tokenize(s) for s in sentences]
        out = []
        for words in words_per_sentence:
            if not words:
                out.append([])
                continue
            enc = self.tokenizer(
                words, is_split_into_words=True, return_tensors="pt", truncation=True
            )
            with torch.no_grad():
                hidden = self.model(**enc).last_hidden_state[0]
            word_ids = enc.word_ids(0)
            pairs = []
            for w_idx, word in enumerate(words):
                piece_rows = [k for k, wid in enumerate(word_ids) if wid == w_idx]
                if not piece_rows:
                    continue  # truncated away
                vec = hidden[piece_rows].mean(dim=0).numpy().astype(np.float64)
                pairs.append((word, vec))
            out.append(pairs)
        return out


def build_encoder(spec: EncoderSpec):
    if spec.name == "static-word":
        return StaticWordEncoder(spec.vectors_path)
    if spec.name == "sbert-wk":
        return SbertSentenceEncoder(spec.model_path)
    if spec.name == "use":
        return UseSentenceEncoder(spec.model_path)
    if spec.name == "bert-word":
        return BertWordEncoder(spec.model_path)
    raise ValueError(f"unknown encoder {spec.name!r}")
