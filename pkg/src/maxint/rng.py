"""Counter-derived SplitMix64 streams.

Every random object (document i of a collection, query of trial t) owns its
own stream, derived from a 64-bit seed and an integer index:

    derive_seed(seed, index) = mix64(seed ^ mix64((index + 1) * GOLDEN))

where mix64 is the SplitMix64 finalizer.  The stream then advances its state
by GOLDEN and outputs mix64(state).  Only integer arithmetic mod 2^64 and
IEEE double division are involved, so streams are identical on every
platform and independent of the order or thread in which they are consumed.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_TWO_M53 = 2.0 ** -53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    return mix64((seed & MASK64) ^ mix64(((index + 1) * GOLDEN) & MASK64))


class SplitMix64:
    """A small seedable generator; not thread-safe, give each task its own."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        """Uniform double in the open interval (0, 1)."""
        return ((self.next_u64() >> 11) + 0.5) * _TWO_M53

    def randbelow(self, n: int) -> int:
        """Integer in [0, n) by multiply-shift on the top 53 bits (n <= 2^53)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return ((self.next_u64() >> 11) * n) >> 53

    def __repr__(self):
        return f"SplitMix64(state={self.state:#018x})"


def derive_stream(seed: int, index: int) -> SplitMix64:
    return SplitMix64(derive_seed(seed, index))


# Salts separating the query streams and per-trial collections of an
# experiment from the document streams of a collection built with the same seed.
QUERY_SALT = 0x51A7E0F1
COLLECTION_SALT = 0xC011EC7
