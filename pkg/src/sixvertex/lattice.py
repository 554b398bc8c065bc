"""Lattice dynamics on the positive quadrant.

Vertices live at integer points (x, y) with x, y >= 1.  Two single-color
models share one family of per-cell coins:

* the six vertex model with step data (one line entering every row from the
  left boundary), where a south line continues north with probability b1 and
  a west line continues east with probability b2;
* its horizontal complement (empty boundary), where two meeting lines cross
  with probability b1 and an empty vertex nucleates a corner with
  probability 1 - b2.

Flipping every horizontal occupancy maps one model onto the other, bit for
bit, when both are driven by the same coins.  The colored variant runs the
level-coupled multicolor rule blockwise: the quadrant is tiled by L-shaped
shells of blocks, each shell's vertices use the rule with as many colors as
the shell index, and nucleations emit the shell's own color, which has the
lowest priority among those already present.

Parameters are biperiodic: vertex (x, y) reads entry ((x-1) mod I,
(y-1) mod J) of two I x J matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import rng
from .lmatrix import MAX_COLORS, _ln_code, outcome_table
from .report import VerificationReport


# ---------------------------------------------------------------------------
# Parameters

@dataclass(frozen=True)
class ParameterField:
    """Biperiodic parameter matrices b1, b2 of shape (I, J), entries in [0, 1]."""

    b1: np.ndarray
    b2: np.ndarray

    def __post_init__(self):
        b1 = np.atleast_2d(np.asarray(self.b1, dtype=np.float64))
        b2 = np.atleast_2d(np.asarray(self.b2, dtype=np.float64))
        if b1.shape != b2.shape or b1.ndim != 2 or b1.size == 0:
            raise ValueError("b1 and b2 must be equal-shape nonempty 2d arrays")
        if not ((b1 >= 0).all() and (b1 <= 1).all() and (b2 >= 0).all() and (b2 <= 1).all()):
            raise ValueError("parameter entries must lie in [0, 1]")
        b1.setflags(write=False)
        b2.setflags(write=False)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)

    @property
    def I(self) -> int:
        return self.b1.shape[0]

    @property
    def J(self) -> int:
        return self.b1.shape[1]

    def at(self, x: int, y: int) -> tuple[float, float]:
        """Parameters of vertex (x, y), 1-based."""
        a, b = (x - 1) % self.I, (y - 1) % self.J
        return float(self.b1[a, b]), float(self.b2[a, b])

    def rows(self, y: int, width: int) -> tuple[np.ndarray, np.ndarray]:
        """Parameter arrays for columns 1..width of row y."""
        a = np.arange(width) % self.I
        b = (y - 1) % self.J
        return self.b1[a, b], self.b2[a, b]


def make_field(b1, b2) -> ParameterField:
    """Build a field from scalars (homogeneous) or I x J arrays."""
    b1 = np.asarray(b1, dtype=np.float64)
    b2 = np.asarray(b2, dtype=np.float64)
    if b1.ndim == 0:
        b1 = b1.reshape(1, 1)
    if b2.ndim == 0:
        b2 = b2.reshape(1, 1)
    if b1.shape != b2.shape:
        b1, b2 = np.broadcast_arrays(b1, b2)
    return ParameterField(b1.copy(), b2.copy())


# ---------------------------------------------------------------------------
# Path ensembles

# Ensembles may carry up to MAX_COLORS colors (e.g. read from files), but the
# table-driven colored sampler precomputes 4^k-entry outcome tables for every
# shell count k, so it stops where the tables do.
MAX_SAMPLER_COLORS = 12


def _mask_dtype(n_colors: int):
    return np.uint8 if n_colors <= 8 else np.uint32


@dataclass
class PathEnsemble:
    """Edge occupancies of one sampled configuration.

    v_edges[x-1, y-1] is the color mask on the north edge of vertex (x, y),
    h_edges[x-1, y-1] the mask on its east edge; bit c-1 carries the c-th
    highest priority color.  boundary_left[y-1] is the mask entering the west
    edge of (1, y), boundary_bottom[x-1] the mask entering the south edge of
    (x, 1).  variant is "s6v" or "cs6v" and records which vertex rules
    produced the sample.
    """

    variant: str
    n_colors: int
    width: int
    height: int
    v_edges: np.ndarray
    h_edges: np.ndarray
    boundary_left: np.ndarray
    boundary_bottom: np.ndarray

    def __post_init__(self):
        if self.variant not in ("s6v", "cs6v"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if not 1 <= self.n_colors <= MAX_COLORS:
            raise ValueError("n_colors out of range")
        if self.v_edges.shape != (self.width, self.height) or \
                self.h_edges.shape != (self.width, self.height):
            raise ValueError("edge array shapes must be (width, height)")
        if self.boundary_left.shape != (self.height,) or \
                self.boundary_bottom.shape != (self.width,):
            raise ValueError("boundary array shapes must be (height,)/(width,)")

    def inputs_at(self, x: int, y: int) -> tuple[int, int]:
        """(south, west) input masks of vertex (x, y)."""
        south = self.boundary_bottom[x - 1] if y == 1 else self.v_edges[x - 1, y - 2]
        west = self.boundary_left[y - 1] if x == 1 else self.h_edges[x - 2, y - 1]
        return int(south), int(west)

    def outputs_at(self, x: int, y: int) -> tuple[int, int]:
        """(north, east) output masks of vertex (x, y)."""
        return int(self.v_edges[x - 1, y - 1]), int(self.h_edges[x - 1, y - 1])


def _empty_boundary(width: int, height: int, dtype) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros(height, dtype=dtype), np.zeros(width, dtype=dtype)


def _scan_row(south: np.ndarray, force0: np.ndarray, force1: np.ndarray,
              west0: bool) -> np.ndarray:
    """East-edge occupancies of one row from its columnwise transfer maps.

    Each column acts on the incoming horizontal occupancy as the identity,
    the constant 0, or the constant 1; the row output is determined by the
    last forcing column at or before each position.
    """
    width = south.shape[0]
    idx = np.arange(width)
    forced = force0 | force1
    last = np.maximum.accumulate(np.where(forced, idx, -1))
    return np.where(last >= 0, force1[np.maximum(last, 0)], west0)


def sample_s6v(width: int, height: int, field: ParameterField, seed: int,
               replica: int = 0) -> PathEnsemble:
    """Sample the six vertex model with step initial data on a width x height box.

    One line enters each row from the left; none enter from below.  Row y,
    column x consumes the cell uniforms (u1, u2): the south line continues
    north iff u1 < b1, the west line continues east iff u2 < b2.
    """
    v = np.zeros((width, height), dtype=np.uint8)
    hE = np.zeros((width, height), dtype=np.uint8)
    south = np.zeros(width, dtype=bool)
    for y in range(1, height + 1):
        u1, u2 = rng.row_uniforms(seed, replica, y, width)
        b1r, b2r = field.rows(y, width)
        X = u1 < b1r      # south line continues north
        P = u2 < b2r      # west line continues east
        force1 = south & ~X
        force0 = ~south & ~P
        east = _scan_row(south, force0, force1, True)
        west = np.empty(width, dtype=bool)
        west[0] = True
        west[1:] = east[:-1]
        north = np.where(south, west | X, west & ~P)
        v[:, y - 1] = north
        hE[:, y - 1] = east
        south = north
    left = np.ones(height, dtype=np.uint8)
    bottom = np.zeros(width, dtype=np.uint8)
    return PathEnsemble("s6v", 1, width, height, v, hE, left, bottom)


def sample_cs6v(width: int, height: int, field: ParameterField, seed: int,
                replica: int = 0) -> PathEnsemble:
    """Sample the complemented model with empty boundary on a width x height box.

    Same cell coins as sample_s6v: two meeting lines cross iff u1 < b1, an
    empty vertex nucleates a corner iff u2 >= b2.  Complementing the s6v
    sample's horizontal edges reproduces this sample exactly.
    """
    v = np.zeros((width, height), dtype=np.uint8)
    hE = np.zeros((width, height), dtype=np.uint8)
    south = np.zeros(width, dtype=bool)
    for y in range(1, height + 1):
        u1, u2 = rng.row_uniforms(seed, replica, y, width)
        b1r, b2r = field.rows(y, width)
        X = u1 < b1r      # meeting lines cross
        N = u2 >= b2r     # empty vertex nucleates
        force0 = south & ~X
        force1 = ~south & N
        east = _scan_row(south, force0, force1, False)
        west = np.empty(width, dtype=bool)
        west[0] = False
        west[1:] = east[:-1]
        v[:, y - 1] = np.where(south, np.where(west, X, True), np.where(west, False, N))
        hE[:, y - 1] = east
        south = v[:, y - 1].astype(bool)
    left, bottom = _empty_boundary(width, height, np.uint8)
    return PathEnsemble("cs6v", 1, width, height, v, hE, left, bottom)


def complement(e: PathEnsemble) -> PathEnsemble:
    """Flip every horizontal occupancy of a single-color ensemble.

    Vertical edges are untouched; the variant toggles between the two rule
    sets, for which the complemented configuration is admissible.
    """
    if e.n_colors != 1:
        raise ValueError("complementation is defined for single-color ensembles")
    variant = "cs6v" if e.variant == "s6v" else "s6v"
    return PathEnsemble(
        variant, 1, e.width, e.height,
        e.v_edges.copy(),
        (1 - e.h_edges).astype(e.h_edges.dtype),
        (1 - e.boundary_left).astype(e.boundary_left.dtype),
        e.boundary_bottom.copy(),
    )


# ---------------------------------------------------------------------------
# Height functions

def height_h(e: PathEnsemble) -> np.ndarray:
    """Height of the step-data model: an int array of shape (width+1, height+1).

    h[x, y] = y minus the number of vertical lines crossing row y at columns
    <= x; h[0, y] = y and h[x, 0] = 0.  Nonincreasing in x, nondecreasing in
    y, with unit steps.
    """
    if e.variant != "s6v" or e.n_colors != 1:
        raise ValueError("height_h needs a single-color s6v ensemble")
    if not (e.boundary_left == 1).all() or not (e.boundary_bottom == 0).all():
        raise ValueError("height_h assumes step boundary data")
    h = np.zeros((e.width + 1, e.height + 1), dtype=np.int64)
    ys = np.arange(1, e.height + 1, dtype=np.int64)
    h[0, 1:] = ys
    h[1:, 1:] = ys[None, :] - np.cumsum(e.v_edges.astype(np.int64), axis=0)
    return h


def height_H(e: PathEnsemble) -> np.ndarray:
    """Height of the complemented model: lines entering [1,x] x [1,y] from the
    left boundary plus lines exiting its top; shape (width+1, height+1).

    H[x, 0] = 0; H[0, y] counts left entries up to row y (zero for the empty
    boundary).  Nondecreasing in both coordinates with unit steps.
    """
    if e.variant != "cs6v" or e.n_colors != 1:
        raise ValueError("height_H needs a single-color cs6v ensemble")
    H = np.zeros((e.width + 1, e.height + 1), dtype=np.int64)
    left = np.cumsum(e.boundary_left.astype(np.int64))
    H[0, 1:] = left
    H[1:, 1:] = left[None, :] + np.cumsum(e.v_edges.astype(np.int64), axis=0)
    return H


# ---------------------------------------------------------------------------
# Color projections

def _parity_fold(arr: np.ndarray, mask: int) -> np.ndarray:
    out = np.zeros(arr.shape, dtype=np.uint8)
    b = 0
    m = mask
    while m:
        if m & 1:
            out ^= ((arr >> b) & 1).astype(np.uint8)
        b += 1
        m >>= 1
    return out


def _color_mask(e: PathEnsemble, colors) -> int:
    if colors is None:
        return (1 << e.n_colors) - 1
    mask = 0
    for c in colors:
        if not 1 <= c <= e.n_colors:
            raise ValueError(f"color {c} out of range 1..{e.n_colors}")
        mask |= 1 << (c - 1)
    return mask


def mod2_project(e: PathEnsemble, colors=None) -> PathEnsemble:
    """Merge a set of colors (default: all) into one by parity of occupancy."""
    mask = _color_mask(e, colors)
    return PathEnsemble(
        e.variant, 1, e.width, e.height,
        _parity_fold(e.v_edges, mask), _parity_fold(e.h_edges, mask),
        _parity_fold(e.boundary_left, mask), _parity_fold(e.boundary_bottom, mask),
    )


def select_color(e: PathEnsemble, color: int) -> PathEnsemble:
    """Keep only the lines of one color (1 = highest priority)."""
    return mod2_project(e, (color,))


# ---------------------------------------------------------------------------
# Block coloring of the quadrant

@dataclass(frozen=True)
class ColoringScheme:
    """Directional block tiling of the quadrant.

    For a direction (x, y) given as positive rationals and a field with
    periods (I, J), N is the least positive integer making both N*x/I and
    N*y/J integers; blocks have extents (bx, by) = (N*x, N*y).  The vertex
    (a, b) belongs to shell k = min(ceil(a/bx), ceil(b/by)); shell k's own
    color is the k-th in priority order among the colors present there.
    """

    x: Fraction
    y: Fraction
    N: int
    bx: int
    by: int

    def block(self, a: int, b: int) -> int:
        """Shell index (1-based) of vertex (a, b)."""
        if a < 1 or b < 1:
            raise ValueError("vertex coordinates are 1-based")
        return min(-(-a // self.bx), -(-b // self.by))


def make_coloring(x, y, field: ParameterField) -> ColoringScheme:
    """Build the block scheme for direction (x, y) over the field's periods."""
    x, y = Fraction(x), Fraction(y)
    if x <= 0 or y <= 0:
        raise ValueError("direction components must be positive")
    N = math.lcm((x / field.I).denominator, (y / field.J).denominator)
    bx, by = N * x, N * y
    assert bx.denominator == 1 and by.denominator == 1
    return ColoringScheme(x, y, N, int(bx), int(by))


# ---------------------------------------------------------------------------
# Multicolor samplers

def _flat_outcome_table(k: int):
    """Flattened packed-outcome lookup for the scalar inner loop.

    A Python list indexes fastest for the common small color counts; above 8
    colors the list's per-element objects would dominate memory, so the
    ndarray is kept instead (4 bytes per entry).
    """
    flat = outcome_table(k).reshape(-1)
    return flat.tolist() if k <= 8 else flat


def sample_colored_cs6v(n_blocks: int, scheme: ColoringScheme, field: ParameterField,
                        seed: int, replica: int = 0) -> PathEnsemble:
    """Sample the colored complemented model on n_blocks shells of the scheme.

    The grid is (bx * n_blocks) x (by * n_blocks) with empty boundary.  A
    shell-k vertex applies the k-color rule to the k highest-priority global
    colors; nucleations emit shell k's own color.  Bit p-1 of the returned
    masks carries the p-th priority color, so shell k's color sits at bit
    n_blocks - k.
    """
    if not 1 <= n_blocks <= MAX_SAMPLER_COLORS:
        raise ValueError(
            f"n_blocks must be in 1..{MAX_SAMPLER_COLORS}: the sampler is "
            "driven by precomputed outcome tables of 4^k entries")
    width, height = scheme.bx * n_blocks, scheme.by * n_blocks
    dtype = _mask_dtype(n_blocks)
    tables = {k: _flat_outcome_table(k) for k in range(1, n_blocks + 1)}
    xblocks = [min(-(-x // scheme.bx), n_blocks) for x in range(1, width + 1)]
    v = np.zeros((width, height), dtype=dtype)
    hE = np.zeros((width, height), dtype=dtype)
    south = [0] * width
    east_row = [0] * width
    for y in range(1, height + 1):
        u1, u2 = rng.row_uniforms(seed, replica, y, width)
        b1r, b2r = field.rows(y, width)
        X = (u1 < b1r).tolist()
        N = (u2 >= b2r).tolist()
        yblock = -(-y // scheme.by)
        west = 0
        for ix in range(width):
            k = xblocks[ix] if xblocks[ix] < yblock else yblock
            shift = n_blocks - k
            code = int(tables[k][((((south[ix] >> shift) << k) | (west >> shift)) << 2)
                                 | (X[ix] << 1) | N[ix]])
            south[ix] = (code >> k) << shift
            west = (code & ((1 << k) - 1)) << shift
            east_row[ix] = west
        v[:, y - 1] = south
        hE[:, y - 1] = east_row
    left, bottom = _empty_boundary(width, height, dtype)
    return PathEnsemble("cs6v", n_blocks, width, height, v, hE, left, bottom)


def sample_two_colored_with_boundary(width: int, height: int, field: ParameterField,
                                     boundary_left, boundary_bottom, seed: int,
                                     replica: int = 0) -> PathEnsemble:
    """Sample the two-color complemented model with deterministic second-color
    boundary lines entering from the left and bottom.

    Boundary masks may only contain color 2 (bit 1); nucleations emit color 1.
    """
    left = np.asarray(boundary_left, dtype=np.uint8)
    bottom = np.asarray(boundary_bottom, dtype=np.uint8)
    if left.shape != (height,) or bottom.shape != (width,):
        raise ValueError("boundary mask shapes must be (height,) and (width,)")
    for arr in (left, bottom):
        if (arr & 0b01).any() or (arr & ~np.uint8(0b11)).any():
            raise ValueError("boundary lines may only carry color 2")
    table = _flat_outcome_table(2)
    v = np.zeros((width, height), dtype=np.uint8)
    hE = np.zeros((width, height), dtype=np.uint8)
    south = bottom.tolist()
    east_row = [0] * width
    for y in range(1, height + 1):
        u1, u2 = rng.row_uniforms(seed, replica, y, width)
        b1r, b2r = field.rows(y, width)
        X = (u1 < b1r).tolist()
        N = (u2 >= b2r).tolist()
        west = int(left[y - 1])
        for ix in range(width):
            code = table[(((south[ix] << 2) | west) << 2) | (X[ix] << 1) | N[ix]]
            south[ix] = code >> 2
            west = code & 0b11
            east_row[ix] = west
        v[:, y - 1] = south
        hE[:, y - 1] = east_row
    return PathEnsemble("cs6v", 2, width, height, v, hE, left.copy(), bottom.copy())


# ---------------------------------------------------------------------------
# Configuration checks

def admissibility_violations(e: PathEnsemble, scheme: "ColoringScheme | None" = None) -> list[str]:
    """Vertices whose (inputs; outputs) key has zero weight under the rule set.

    For the s6v variant the key is checked after complementing the horizontal
    edges (the rule sets are horizontal complements of each other).  For a
    blockwise colored sample pass its scheme: a shell-k vertex is then checked
    against the k-color rule on its local color window, and colors of later
    shells must be absent there.
    """
    bad = []
    flip = (1 << e.n_colors) - 1 if e.variant == "s6v" else 0
    for y in range(1, e.height + 1):
        for x in range(1, e.width + 1):
            i, j = e.inputs_at(x, y)
            k, l = e.outputs_at(x, y)
            if scheme is None:
                n, shift = e.n_colors, 0
            else:
                n = min(scheme.block(x, y), e.n_colors)
                shift = e.n_colors - n
                if (i | j | k | l) & ((1 << shift) - 1):
                    bad.append(f"vertex ({x},{y}): later-shell color present")
                    continue
            if _ln_code(i >> shift, (j >> shift) ^ flip, k >> shift, (l >> shift) ^ flip, n) == 0:
                bad.append(f"vertex ({x},{y}): key ({i},{j};{k},{l}) unsupported")
    return bad


def verify_monotonicity(trials: int, max_size: int, field: ParameterField,
                        seed: int) -> VerificationReport:
    """Second-color boundary lines never lower the folded height below the
    first-color height at the top-right corner.

    Each trial draws a box size, a second-color boundary subset, and a fresh
    replica; violations list any trial with H1 > H2.
    """
    rep = VerificationReport("boundary monotonicity")
    geom = np.random.default_rng(seed)
    for t in range(trials):
        w = int(geom.integers(1, max_size + 1))
        h = int(geom.integers(1, max_size + 1))
        left = (geom.random(h) < 0.5).astype(np.uint8) * 2
        bottom = (geom.random(w) < 0.5).astype(np.uint8) * 2
        e = sample_two_colored_with_boundary(w, h, field, left, bottom, seed, replica=t)
        h1 = int(height_H(select_color(e, 1))[w, h])
        h2 = int(height_H(mod2_project(e))[w, h])
        rep.cases += 1
        if h1 > h2:
            rep.fail(f"trial {t}: H1={h1} > H2={h2} on {w}x{h}")
    return rep
