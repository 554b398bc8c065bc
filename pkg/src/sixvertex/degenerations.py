"""Degenerations of the complemented model.

Two specializations of the parameters collapse the vertex dynamics onto
known growth models:

* b1 = 0, b2 = 1 - p: lines never cross, and the height of the complemented
  model equals the longest-chain (patience/last-passage) height of a
  Bernoulli(p) point set, both in law and pathwise under the shared-coin
  coupling;
* (b1, b2) = (t, 1): the ten-weight algebra collapses onto the four symbols
  {0, t, 1-t, 1}, where the level product becomes a modified minimum
  (complementary symbols t and 1-t meet in 0; otherwise the usual order
  0 < {t, 1-t} < 1 applies).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import rng
from .lattice import ParameterField, height_H, make_field, sample_cs6v
from .lmatrix import _ln_code, fold_projection, l1_weight
from .report import VerificationReport
from .weights import B1, ONE, ONE_MINUS_B1, W, Weight, ZERO, render

MAX_ENUM_CELLS = 12


# ---------------------------------------------------------------------------
# Point sets and the longest-chain height

@dataclass
class PointSet:
    """A 0/1 field over the cells of a width x height box.

    grid[x-1, y-1] marks a point at (x, y); coordinates are 1-based.
    """

    width: int
    height: int
    grid: np.ndarray

    def __post_init__(self):
        if self.grid.shape != (self.width, self.height):
            raise ValueError("grid shape must be (width, height)")

    def points(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(self.grid)
        return sorted(zip((xs + 1).tolist(), (ys + 1).tolist()))


def sample_pointset(width: int, height: int, p: float, seed: int,
                    replica: int = 0) -> PointSet:
    """Independent Bernoulli(p) points, one per cell.

    Membership of cell (x, y) is u2 >= 1 - p on the cell's second uniform,
    the same coin that decides nucleation for the complemented model at
    b2 = 1 - p, so point sets and lattice samples with equal seeds couple.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    grid = np.zeros((width, height), dtype=bool)
    for y in range(1, height + 1):
        _, u2 = rng.row_uniforms(seed, replica, y, width)
        grid[:, y - 1] = u2 >= 1.0 - p
    return PointSet(width, height, grid)


def hammersley_height(ps: PointSet) -> np.ndarray:
    """Longest-chain height: entry [x, y] is the maximal number of points of
    ps below-left of (x, y) forming a chain that strictly increases in both
    coordinates.  Shape (width+1, height+1)."""
    H = np.zeros((ps.width + 1, ps.height + 1), dtype=np.int64)
    xi = ps.grid.astype(np.int64)
    for y in range(1, ps.height + 1):
        prev = H[:, y - 1]
        cand = np.maximum(prev[1:], prev[:-1] + xi[:, y - 1])
        H[1:, y] = np.maximum.accumulate(cand)
    return H


def _longest_chain(points: list[tuple[int, int]], x: int, y: int) -> int:
    """Quadratic longest-chain oracle over the points dominated by (x, y)."""
    pts = sorted(p for p in points if p[0] <= x and p[1] <= y)
    best = []
    for i, (a, b) in enumerate(pts):
        best.append(1 + max((best[j] for j, (c, d) in enumerate(pts[:i])
                             if c < a and d < b), default=0))
    return max(best, default=0)


# ---------------------------------------------------------------------------
# Exact small-box distributions

def enumerate_cs6v_height_distribution(width: int, height: int,
                                       field: ParameterField) -> dict[int, float]:
    """Exact law of the complemented model's height at the top-right corner,
    by depth-first expansion of every vertex outcome (empty boundary)."""
    if width * height > MAX_ENUM_CELLS:
        raise ValueError(f"enumeration limited to {MAX_ENUM_CELLS} cells")
    dist: dict[int, float] = {}

    def outcomes(i: int, j: int, x: int, y: int):
        b1, b2 = field.at(x, y)
        if i != j:
            return (((i, j), 1.0),)
        if i:
            return tuple(o for o in (((1, 1), b1), ((0, 0), 1.0 - b1)) if o[1] > 0.0)
        return tuple(o for o in (((0, 0), b2), ((1, 1), 1.0 - b2)) if o[1] > 0.0)

    def rec(x: int, y: int, south: list[int], west: int, prob: float):
        if y > height:
            key = sum(south)
            dist[key] = dist.get(key, 0.0) + prob
            return
        for (k, l), p in outcomes(south[x - 1], west, x, y):
            saved = south[x - 1]
            south[x - 1] = k
            if x == width:
                rec(1, y + 1, south, 0, prob * p)
            else:
                rec(x + 1, y, south, l, prob * p)
            south[x - 1] = saved

    rec(1, 1, [0] * width, 0, 1.0)
    return dist


def enumerate_hammersley_distribution(width: int, height: int,
                                      p: float) -> dict[int, float]:
    """Exact law of the longest-chain height at (width, height) for the
    Bernoulli(p) point field, by summing over all point subsets."""
    cells = width * height
    if cells > MAX_ENUM_CELLS:
        raise ValueError(f"enumeration limited to {MAX_ENUM_CELLS} cells")
    dist: dict[int, float] = {}
    for bits in itertools.product((0, 1), repeat=cells):
        grid = np.array(bits, dtype=bool).reshape(width, height)
        ones = sum(bits)
        prob = (p ** ones) * ((1.0 - p) ** (cells - ones))
        h = int(hammersley_height(PointSet(width, height, grid))[width, height])
        dist[h] = dist.get(h, 0.0) + prob
    return dist


def verify_hammersley_equivalence(width: int, height: int, p: float,
                                  tol: float = 1e-12) -> VerificationReport:
    """The two exact corner laws agree: complemented model at (0, 1-p) versus
    longest-chain height of Bernoulli(p) points."""
    rep = VerificationReport(f"hammersley law {width}x{height} p={p}")
    da = enumerate_cs6v_height_distribution(width, height, make_field(0.0, 1.0 - p))
    db = enumerate_hammersley_distribution(width, height, p)
    for k in sorted(set(da) | set(db)):
        rep.cases += 1
        pa, pb = da.get(k, 0.0), db.get(k, 0.0)
        if abs(pa - pb) > tol:
            rep.fail(f"P(H={k}): {pa!r} vs {pb!r}")
    rep.details["law"] = {str(k): db.get(k, 0.0) for k in sorted(db)}
    return rep


def verify_hammersley_coupling(width: int, height: int, p: float,
                               seeds) -> VerificationReport:
    """Pathwise identity under the shared-coin coupling: for every seed, the
    complemented model at (0, 1-p) and the longest-chain height of the
    coupled point set agree at every lattice point."""
    rep = VerificationReport(f"hammersley coupling {width}x{height} p={p}")
    field = make_field(0.0, 1.0 - p)
    for seed in seeds:
        rep.cases += 1
        e = sample_cs6v(width, height, field, seed)
        ps = sample_pointset(width, height, p, seed)
        if not np.array_equal(height_H(e), hammersley_height(ps)):
            bad = np.argwhere(height_H(e) != hammersley_height(ps))[0]
            rep.fail(f"seed {seed}: heights differ first at {tuple(bad)}")
    return rep


# ---------------------------------------------------------------------------
# The four-symbol collapse at (b1, b2) = (t, 1)

_T_SYMBOLS = (ZERO, B1, ONE_MINUS_B1, ONE)  # read B1 as t, ONE_MINUS_B1 as 1-t


def specialize_t(w: Weight) -> Weight:
    """Image of a weight under b2 -> 1, with b1 read as the symbol t."""
    if w.zero or w.a2 == 2:
        return ZERO
    return (ONE, B1, ONE_MINUS_B1)[w.a1]


def modified_min(values) -> Weight:
    """Minimum on {0, t, 1-t, 1}, except that t and 1-t together give 0.

    Otherwise symbols are ordered 0 < {t, 1-t} < 1 (only comparable chains
    occur once the mixed case is excluded).  The empty minimum is 1.
    """
    seen = set()
    for w in values:
        if w not in _T_SYMBOLS:
            raise ValueError(f"not a collapsed symbol: {render(w)}")
        seen.add(w)
    if B1 in seen and ONE_MINUS_B1 in seen:
        return ZERO
    for w in (ZERO, B1, ONE_MINUS_B1):
        if w in seen:
            return w
    return ONE


def verify_tpng_equivalence(n: int) -> VerificationReport:
    """At (b1, b2) = (t, 1) the level product agrees with the modified minimum
    of the collapsed level weights, for every n-color vertex key."""
    if not 1 <= n <= 3:
        raise ValueError("equivalence enumeration limited to n <= 3")
    rep = VerificationReport(f"modified-min equivalence n={n}")
    size = 1 << n
    for i in range(size):
        for j in range(size):
            for k in range(size):
                for l in range(size):
                    rep.cases += 1
                    lhs = specialize_t(W[_ln_code(i, j, k, l, n)])
                    levels = [
                        specialize_t(l1_weight(
                            fold_projection(i, r), fold_projection(j, r),
                            fold_projection(k, r), fold_projection(l, r)))
                        for r in range(1, n + 1)
                    ]
                    rhs = modified_min(levels)
                    if lhs is not rhs:
                        rep.fail(f"key ({i},{j};{k},{l}): {render(lhs)} vs {render(rhs)}")
    return rep
