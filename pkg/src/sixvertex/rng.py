"""Counter-based per-cell randomness.

Every lattice cell (x, y) of every replica owns two uniforms: u1 drives the
cross/continue coin (b1 axis) and u2 drives the nucleation/pass coin (b2
axis).  The stream is keyed by (seed, replica) and countered by the row
index, so draws depend only on the cell address: any traversal order,
chunking, or worker count reproduces identical samples, and different models
run with the same seed are coupled cell by cell.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def row_uniforms(seed: int, replica: int, row: int, width: int):
    """Uniform arrays (u1, u2), each of length width, for one lattice row.

    The row stream is consumed two doubles per cell, so column x (1-based)
    always sees the same pair (u1[x-1], u2[x-1]) no matter how wide the row
    was sampled.
    """
    if seed < 0 or replica < 0 or row < 1 or width < 1:
        raise ValueError("need seed >= 0, replica >= 0, row >= 1, width >= 1")
    key = np.array([seed & _MASK64, replica & _MASK64], dtype=np.uint64)
    counter = np.array([0, 0, row & _MASK64, 0], dtype=np.uint64)
    r = np.random.Generator(np.random.Philox(key=key, counter=counter)).random(2 * width)
    return r[0::2], r[1::2]


def cell_uniforms(seed: int, replica: int, x: int, y: int) -> tuple[float, float]:
    """The two uniforms owned by a single cell; matches row_uniforms column x."""
    u1, u2 = row_uniforms(seed, replica, y, x)
    return float(u1[x - 1]), float(u2[x - 1])
