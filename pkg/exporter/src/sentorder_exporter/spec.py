"""Encoder selection: names, granularities, and expected dimensions."""

from __future__ import annotations

from dataclasses import dataclass


class ModelUnavailableError(RuntimeError):
    """A pretrained artifact (weights, hub module, vector file) could not be
    loaded; the message names the artifact and how to provide it."""


@dataclass(frozen=True)
class EncoderInfo:
    granularity: str  # "sentence" | "token"
    expected_dim: int | None  # enforced on export when not None
    artifact: str  # what to install/download, used in error messages


ENCODERS = {
    "sbert-wk": EncoderInfo(
        granularity="sentence",
        expected_dim=768,
        artifact="a local SBERT-WK sentence-encoder model directory "
        "(pass --model; loaded via sentence-transformers)",
    ),
    "use": EncoderInfo(
        granularity="sentence",
        expected_dim=512,
        artifact="the universal-sentence-encoder module "
        "(https://tfhub.dev/google/universal-sentence-encoder/4, via tensorflow-hub)",
    ),
    "bert-word": EncoderInfo(
        granularity="token",
        expected_dim=768,
        artifact="the bert-base-uncased checkpoint (via transformers)",
    ),
    "static-word": EncoderInfo(
        granularity="token",
        expected_dim=None,  # whatever the vector file provides
        artifact="a word-vector text file: one `word v1 v2 ...` per line (pass --vectors)",
    ),
}


@dataclass(frozen=True)
class EncoderSpec:
    name: str
    coref: bool = False
    batch_size: int = 32
    model_path: str | None = None  # overrides the default artifact location
    vectors_path: str | None = None  # static-word only

    def __post_init__(self):
        if self.name not in ENCODERS:
            raise ValueError(f"unknown encoder {self.name!r}, expected one of {sorted(ENCODERS)}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be positive, got {self.batch_size}")
        if self.name == "static-word" and not self.vectors_path:
            raise ValueError("static-word needs a word-vector file (--vectors)")

    @property
    def granularity(self) -> str:
        return ENCODERS[self.name].granularity

    @property
    def expected_dim(self) -> int | None:
        return ENCODERS[self.name].expected_dim
