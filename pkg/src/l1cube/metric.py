"""Points in the unit hypercube and the Manhattan (L1) distance kernel."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# A distance is a plain nonnegative float; dimension checks live at the
# operation boundaries, not on the value.
Distance = float


@dataclass(frozen=True, eq=False)
class Point:
    """Immutable point with every coordinate in [0, 1].

    Coordinates outside the unit interval are rejected at construction
    rather than clamped; the whole analysis assumes the unit hypercube.
    """

    coords: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.coords, dtype=np.float64, copy=True).ravel()
        if c.size < 1:
            raise ValueError("a point needs at least one coordinate")
        # NaN fails both comparisons, so it is rejected here too.
        if not (np.all(c >= 0.0) and np.all(c <= 1.0)):
            raise ValueError("coordinates must lie in [0, 1]")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return int(self.coords.size)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)


def manhattan_distance(p: Point, q: Point) -> Distance:
    """Sum of absolute coordinate differences between two points.

    Symmetric in its arguments; for points in [0, 1]^n the result lies in
    [0, n]. Raises ValueError on dimension mismatch.
    """
    if p.dim != q.dim:
        raise ValueError(
            f"dimension mismatch: first point has {p.dim} coordinates, "
            f"second has {q.dim}"
        )
    return float(np.sum(np.abs(p.coords - q.coords)))


def batch_distances(pairs: Sequence[tuple[Point, Point]]) -> np.ndarray:
    """Manhattan distance for each (p, q) pair, preserving input order.

    Raises ValueError naming the offending pair index on any dimension
    mismatch. Returns an empty array for an empty batch.
    """
    pairs = list(pairs)
    for i, (p, q) in enumerate(pairs):
        if p.dim != q.dim:
            raise ValueError(
                f"dimension mismatch at pair {i}: {p.dim} vs {q.dim}"
            )
    if not pairs:
        return np.empty(0, dtype=np.float64)
    dims = {p.dim for p, _ in pairs}
    if len(dims) == 1:
        # Uniform dimension: one vectorized pass.
        a = np.stack([p.coords for p, _ in pairs])
        b = np.stack([q.coords for _, q in pairs])
        return np.abs(a - b).sum(axis=1)
    return np.array([manhattan_distance(p, q) for p, q in pairs])
