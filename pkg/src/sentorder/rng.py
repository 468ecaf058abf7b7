"""Portable deterministic randomness.

Shuffles and splits must reproduce bit-for-bit across runs, platforms and
reimplementations, so everything here is pure 64/32-bit integer arithmetic
with no dependence on the host's random module:

* ``Pcg32`` is Melissa O'Neill's PCG-XSH-RR 64/32 generator (the reference
  ``pcg32`` stream), seeded exactly like ``pcg32_srandom``.
* ``fnv1a64`` is the 64-bit FNV-1a hash, used to derive an independent
  per-story stream from a story id.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_PCG_MULT = 6364136223846793005

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash of a byte string."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


class Pcg32:
    """PCG-XSH-RR 64/32: 64-bit state, 32-bit output, selectable stream.

    Matches the reference implementation's output sequence; seeding follows
    pcg32_srandom(seed, seq).
    """

    def __init__(self, seed: int, seq: int = 0):
        self.state = 0
        self.inc = ((seq << 1) | 1) & _MASK64
        self.next_u32()
        self.state = (self.state + seed) & _MASK64
        self.next_u32()

    def next_u32(self) -> int:
        old = self.state
        self.state = (old * _PCG_MULT + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound) without modulo bias.

        Rejection threshold per the reference pcg32_boundedrand.
        """
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        threshold = ((1 << 32) - bound) % bound
        while True:
            r = self.next_u32()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def story_stream(global_seed: int, story_id: str) -> Pcg32:
    """Per-story generator: state seeded by (global seed XOR FNV-1a of the id),
    with the id hash selecting the stream. Stories therefore shuffle
    independently of corpus order."""
    h = fnv1a64(story_id.encode("utf-8"))
    return Pcg32((global_seed ^ h) & _MASK64, h)
