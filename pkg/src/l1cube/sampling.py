"""Reproducible generation of uniform points and distance samples.

Every stream is a counter-based Philox substream keyed by (seed, stream_id),
so any substream can be opened independently on any worker and the sampled
sequence never depends on scheduling order. Distance sampling is chunked at
a fixed size with chunk c drawn from stream_id = c; the output is therefore
bitwise identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .metric import Point

_MASK64 = (1 << 64) - 1

# Fixed chunk size: chunk boundaries (and therefore outputs) must never
# depend on the degree of parallelism.
CHUNK_PAIRS = 1024


def _splitmix64(z: int) -> int:
    """SplitMix64 finalizer; a bijective 64-bit mix."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(seed: int, key: int) -> int:
    """Deterministic 64-bit subseed for the substream family labeled `key`.

    Used to give each experiment dimension its own seed keyed by the
    dimension value, so adding or reordering dimensions never changes
    another row's samples.
    """
    return _splitmix64((seed ^ _splitmix64(key & _MASK64)) & _MASK64)


@dataclass(frozen=True)
class SampleSpec:
    """Full recipe for one Monte Carlo run: dimension, pair count, seed."""

    dim: int
    num_pairs: int
    seed: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if self.num_pairs < 1:
            raise ValueError(f"num_pairs must be >= 1, got {self.num_pairs}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class RandomStream:
    """Single-owner handle on one (seed, stream_id) substream.

    The generator state is mutable and must not be shared between
    concurrent callers; derive one stream per worker instead.
    """

    generator: np.random.Generator
    stream_id: int


def derive_stream(seed: int, stream_id: int) -> RandomStream:
    """Open the Philox substream for (seed, stream_id).

    The 128-bit Philox key is (stream_id << 64) | seed: distinct stream ids
    give statistically independent, non-overlapping sequences, and the same
    pair reproduces the same sequence on every platform.
    """
    if stream_id < 0:
        raise ValueError(f"stream_id must be >= 0, got {stream_id}")
    key = (seed & _MASK64) | ((stream_id & _MASK64) << 64)
    return RandomStream(np.random.Generator(np.random.Philox(key=key)), stream_id)


def generate_point(stream: RandomStream, dim: int) -> Point:
    """Draw one uniform point on [0, 1)^dim, advancing the stream by exactly dim draws."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    return Point(stream.generator.random(dim))


def _chunk_distances(spec: SampleSpec, chunk: int) -> np.ndarray:
    start = chunk * CHUNK_PAIRS
    m = min(CHUNK_PAIRS, spec.num_pairs - start)
    gen = derive_stream(spec.seed, chunk).generator
    # C-order fill: pair j consumes P's coordinates, then Q's, exactly as
    # sequential generate_point calls would.
    u = gen.random((m, 2, spec.dim))
    return np.abs(u[:, 0, :] - u[:, 1, :]).sum(axis=1)


def sample_distances(spec: SampleSpec, workers: int = 1) -> np.ndarray:
    """Manhattan distances of `spec.num_pairs` fresh uniform point pairs.

    A pure function of the spec: the returned sequence is bitwise identical
    for any `workers` value, because chunk c always draws from the
    substream (spec.seed, c) regardless of which worker runs it.
    """
    n_chunks = math.ceil(spec.num_pairs / CHUNK_PAIRS)
    if workers <= 1 or n_chunks == 1:
        parts = [_chunk_distances(spec, c) for c in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _chunk_distances(spec, c), range(n_chunks)))
    return np.concatenate(parts)
