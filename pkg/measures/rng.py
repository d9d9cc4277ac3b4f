"""
Reproducible random streams.

A stream is identified by (seed, stream_id, path); each shard of an estimator
draws from its own child generator, so results depend only on the stream
identity and shard count and never on thread scheduling.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class RngStream:
    """A named, splittable random stream.

    Substreams extend `path` instead of renumbering `stream_id`, so the spawn
    key of a substream can never equal the key of another case's stream.
    """

    seed: int
    stream_id: int = 0
    path: Tuple[int, ...] = ()

    @property
    def spawn_key(self) -> Tuple[int, ...]:
        return (self.stream_id, *self.path)

    def generator(self, shard: int = 0) -> np.random.Generator:
        """Independent generator for one shard of this stream."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(*self.spawn_key, shard))
        return np.random.default_rng(sequence)

    def substream(self, offset: int) -> "RngStream":
        """A disjoint stream, e.g. one per estimator term."""
        if offset < 0:
            raise ValueError(f"Substream offset must be non-negative, got {offset}")
        return RngStream(seed=self.seed, stream_id=self.stream_id, path=(*self.path, offset))
