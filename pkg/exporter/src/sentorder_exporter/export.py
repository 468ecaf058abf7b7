"""Export pipeline: shuffled-instance JSONL -> embedding JSONL.

Output follows the embedding exchange format: a header line carrying dim and
encoder_tag, then one record per (story, sentence) keyed by shuffled
position. Only story_id and the shuffled sentences are read from the input;
the recorded gold permutation is deliberately ignored.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np

from .coref import default_resolver, replace_pronouns
from .encoders import build_encoder
from .spec import EncoderSpec

logger = logging.getLogger("sentorder_exporter")


def read_shuffled_sentences(path: str | Path) -> list[tuple[str, list[str]]]:
    """(story_id, shuffled sentences) per line of a shuffled-instance file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"shuffled file not found: {path}")
    out = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_num, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {line_num} is not valid JSON: {exc}") from None
            story_id = obj["story_id"]
            shuffled = obj["shuffled"]
            if story_id in seen:
                raise ValueError(f"{path}: line {line_num}: duplicate story {story_id!r}")
            if not shuffled:
                raise ValueError(f"{path}: line {line_num}: story {story_id!r} has no sentences")
            seen.add(story_id)
            out.append((story_id, list(shuffled)))
    return out


def _batched(items, size):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def export(
    shuffled_file: str | Path,
    spec: EncoderSpec,
    out_path: str | Path,
    *,
    encoder=None,
    resolver=None,
) -> int:
    """Encode every shuffled sentence and write the embedding file.

    Returns the number of records written. `encoder`/`resolver` accept
    injected substitutes (tests, custom backends); by default they come from
    the spec.
    """
    stories = read_shuffled_sentences(shuffled_file)
    if encoder is None:
        encoder = build_encoder(spec)

    if spec.coref:
        if resolver is None:
            resolver = default_resolver()
        stories = [
            (story_id, replace_pronouns(sentences, resolver))
            for story_id, sentences in stories
        ]

    flat = [
        (story_id, idx, sentence)
        for story_id, sentences in stories
        for idx, sentence in enumerate(sentences)
    ]
    encoded = []
    for batch in _batched(flat, spec.batch_size):
        encoded.extend(encoder.encode_batch([sentence for _, _, sentence in batch]))

    dim = getattr(encoder, "dim", None)
    if spec.expected_dim is not None and dim != spec.expected_dim:
        raise ValueError(
            f"encoder {spec.name!r} produced dim {dim}, expected {spec.expected_dim}; "
            "refusing to write a mislabeled export"
        )

    records = 0
    out_path = Path(out_path)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"header": True, "dim": int(dim), "encoder_tag": spec.name}))
        fh.write("\n")
        for (story_id, idx, _), emb in zip(flat, encoded):
            where = f"story {story_id!r} sentence {idx}"
            if spec.granularity == "sentence":
                vec = np.asarray(emb, dtype=np.float64)
                _check_vector(vec, dim, where)
                rec = {
                    "story_id": story_id,
                    "sentence_index": idx,
                    "vector": [float(x) for x in vec],
                }
            else:
                if not emb:
                    raise ValueError(
                        f"encoding failure: {where} produced no tokens "
                        "(out-of-vocabulary or truncated)"
                    )
                tokens = []
                for tok, vec in emb:
                    vec = np.asarray(vec, dtype=np.float64)
                    _check_vector(vec, dim, f"{where} token {tok!r}")
                    tokens.append({"t": tok, "v": [float(x) for x in vec]})
                rec = {"story_id": story_id, "sentence_index": idx, "tokens": tokens}
            fh.write(json.dumps(rec, ensure_ascii=False))
            fh.write("\n")
            records += 1
    logger.info("wrote %d records (%s, dim %d) to %s", records, spec.name, dim, out_path)
    return records


def _check_vector(vec, dim, where):
    if vec.ndim != 1 or len(vec) != dim:
        raise ValueError(f"encoding failure: {where} has shape {vec.shape}, expected ({dim},)")
    if not np.any(vec):
        raise ValueError(f"encoding failure: {where} is an all-zero vector")
    if not np.all(np.isfinite(vec)):
        raise ValueError(f"encoding failure: {where} contains non-finite values")
