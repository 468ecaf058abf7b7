"""Encoder export pipeline: shuffled-instance JSONL in, embedding JSONL out.

Talks to the ordering toolkit purely through files; nothing here imports it.
"""

__version__ = "0.1.0"

from .spec import ENCODERS, EncoderSpec, ModelUnavailableError
from .export import export

__all__ = ["ENCODERS", "EncoderSpec", "ModelUnavailableError", "export"]
