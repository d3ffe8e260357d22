"""Deterministic random streams.

A :class:`RandomStream` names one reproducible stream of randomness by a
``(seed, substream)`` pair. Streams with the same pair yield bit-identical
draws; streams differing in either coordinate are statistically independent.
Composite samplers assign each independent source its own substream, so a
sampler's output is a pure function of its arguments and the stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_UINT64_MAX = 2**64 - 1

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class RandomStream:
    """Addressable source of reproducible randomness.

    seed
        Base seed, an integer in [0, 2**64).
    substream
        Nonnegative index selecting an independent stream under the seed.
    """

    seed: int
    substream: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.seed, (int, np.integer)):
            raise DomainError("seed must be an integer")
        if not 0 <= int(self.seed) <= _UINT64_MAX:
            raise DomainError("seed must lie in [0, 2**64)")
        if not isinstance(self.substream, (int, np.integer)) or self.substream < 0:
            raise DomainError("substream must be a nonnegative integer")

    def generator(self) -> np.random.Generator:
        """Fresh PCG64 generator for this (seed, substream) pair."""
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.substream),))
        return np.random.Generator(np.random.PCG64(ss))

    def shifted(self, offset: int) -> "RandomStream":
        """Stream at ``substream + offset`` under the same seed."""
        if offset < 0:
            raise DomainError("offset must be nonnegative")
        return RandomStream(self.seed, self.substream + int(offset))
