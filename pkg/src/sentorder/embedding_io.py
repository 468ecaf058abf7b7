"""JSON Lines exchange format for sentence- and token-level embeddings.

Files start with a header line ``{"header": true, "dim": D, "encoder_tag": T}``
followed by one record per (story, sentence). Vectors are stored for the
SHUFFLED sentence order, keyed by shuffled position, so gold order never
reaches the orderer through the embedding file. Floats are serialized with
repr (shortest round-trip form, at most 17 significant digits), which makes
write-then-read bit-exact for 64-bit floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class SentenceVectors:
    """Dense vectors for one story, one per shuffled sentence position."""

    story_id: str
    vectors: np.ndarray  # shape (n, dim)
    dim: int
    encoder_tag: str

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class TokenVectors:
    """Per-token vectors for one story; sentences[i] is a list of (token, vector)."""

    story_id: str
    sentences: tuple[tuple[tuple[str, np.ndarray], ...], ...]
    dim: int
    encoder_tag: str = ""

    @property
    def n(self) -> int:
        return len(self.sentences)


def _read_header(fh, path):
    first = fh.readline()
    if not first.strip():
        raise ValueError(f"{path}: empty file, expected a header line")
    try:
        obj = json.loads(first)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: header line is not valid JSON: {exc}") from None
    if not obj.get("header"):
        raise ValueError(f'{path}: first line must be a header: {{"header": true, ...}}')
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim <= 0:
        raise ValueError(f"{path}: header dim must be a positive integer, got {dim!r}")
    return dim, str(obj.get("encoder_tag", ""))


def _check_vector(vec, dim, path, line_num, where):
    if len(vec) != dim:
        raise ValueError(
            f"{path}: line {line_num}: {where} has dim {len(vec)}, header says {dim}"
        )
    arr = np.asarray(vec, dtype=np.float64)
    if not np.any(arr):
        raise ValueError(f"{path}: line {line_num}: {where} is all-zero (cosine undefined)")
    return arr


def _assemble(per_story: dict, path, make):
    out = {}
    for story_id, by_index in per_story.items():
        n = len(by_index)
        missing = [i for i in range(n) if i not in by_index]
        if missing or max(by_index) != n - 1:
            got = sorted(by_index)
            raise ValueError(
                f"{path}: story {story_id!r} has sentence indices {got}, "
                f"expected contiguous 0..{max(got)}"
            )
        out[story_id] = make(story_id, [by_index[i] for i in range(n)])
    return out


def read_sentence_vectors(path: str | Path) -> dict[str, SentenceVectors]:
    """Parse a sentence-level embedding file into {story_id: SentenceVectors}.

    Hard errors on dimension mismatches, all-zero vectors, duplicate or
    missing sentence indices.
    """
    path = Path(path)
    per_story: dict[str, dict[int, np.ndarray]] = {}
    with open(path, encoding="utf-8") as fh:
        dim, tag = _read_header(fh, path)
        for line_num, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            story_id = obj["story_id"]
            idx = obj["sentence_index"]
            where = f"story {story_id!r} sentence {idx}"
            arr = _check_vector(obj["vector"], dim, path, line_num, where)
            slots = per_story.setdefault(story_id, {})
            if idx in slots:
                raise ValueError(f"{path}: line {line_num}: duplicate {where}")
            slots[idx] = arr

    def make(story_id, vecs):
        return SentenceVectors(
            story_id=story_id, vectors=np.vstack(vecs), dim=dim, encoder_tag=tag
        )

    return _assemble(per_story, path, make)


def read_token_vectors(path: str | Path) -> dict[str, TokenVectors]:
    """Parse a token-level embedding file into {story_id: TokenVectors}."""
    path = Path(path)
    per_story: dict[str, dict[int, tuple]] = {}
    with open(path, encoding="utf-8") as fh:
        dim, tag = _read_header(fh, path)
        for line_num, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            story_id = obj["story_id"]
            idx = obj["sentence_index"]
            tokens = obj["tokens"]
            if not tokens:
                raise ValueError(
                    f"{path}: line {line_num}: story {story_id!r} sentence {idx} has no tokens"
                )
            parsed = []
            for t_num, tok in enumerate(tokens):
                where = f"story {story_id!r} sentence {idx} token {t_num} ({tok['t']!r})"
                parsed.append((tok["t"], _check_vector(tok["v"], dim, path, line_num, where)))
            slots = per_story.setdefault(story_id, {})
            if idx in slots:
                raise ValueError(
                    f"{path}: line {line_num}: duplicate story {story_id!r} sentence {idx}"
                )
            slots[idx] = tuple(parsed)

    def make(story_id, sents):
        return TokenVectors(story_id=story_id, sentences=tuple(sents), dim=dim, encoder_tag=tag)

    return _assemble(per_story, path, make)


def write_sentence_vectors(
    stories: dict[str, SentenceVectors] | list[SentenceVectors],
    path: str | Path,
    *,
    dim: int | None = None,
    encoder_tag: str | None = None,
) -> None:
    """Write sentence vectors in the exchange format (header + one line per
    sentence). dim/encoder_tag default to the first record's values."""
    items = list(stories.values()) if isinstance(stories, dict) else list(stories)
    if not items:
        raise ValueError("nothing to write: no sentence vectors given")
    dim = dim if dim is not None else items[0].dim
    encoder_tag = encoder_tag if encoder_tag is not None else items[0].encoder_tag
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"header": True, "dim": dim, "encoder_tag": encoder_tag}))
        fh.write("\n")
        for sv in items:
            for idx in range(sv.n):
                rec = {
                    "story_id": sv.story_id,
                    "sentence_index": idx,
                    "vector": [float(x) for x in sv.vectors[idx]],
                }
                fh.write(json.dumps(rec, ensure_ascii=False))
                fh.write("\n")


def write_token_vectors(
    stories: dict[str, TokenVectors] | list[TokenVectors],
    path: str | Path,
    *,
    dim: int | None = None,
    encoder_tag: str | None = None,
) -> None:
    """Write token vectors in the exchange format."""
    items = list(stories.values()) if isinstance(stories, dict) else list(stories)
    if not items:
        raise ValueError("nothing to write: no token vectors given")
    dim = dim if dim is not None else items[0].dim
    encoder_tag = encoder_tag if encoder_tag is not None else items[0].encoder_tag
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"header": True, "dim": dim, "encoder_tag": encoder_tag}))
        fh.write("\n")
        for tv in items:
            for idx, sentence in enumerate(tv.sentences):
                rec = {
                    "story_id": tv.story_id,
                    "sentence_index": idx,
                    "tokens": [{"t": t, "v": [float(x) for x in v]} for t, v in sentence],
                }
                fh.write(json.dumps(rec, ensure_ascii=False))
                fh.write("\n")
