"""Colored vertex transition weights built level by level.

A vertex key is four color vectors (i, j; k, l) = (south, west; north, east),
each an n-bit occupancy word with bit r-1 recording presence of color r
(color 1 has the highest priority).  The n-color weight is the product of
single-color weights of the r-fold projections: level r sees the parity of
the first r colors on each edge, and the ten-element symbolic algebra from
`weights` multiplies the level weights together, so shared randomness shows
up as idempotence and contradictory demands annihilate to 0.

The same structure yields an exact sampler driven by two coins per vertex:
one cross/continue coin on the b1 axis shared by all both-occupied levels,
and one nucleation coin on the b2 axis shared by all empty levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import fsum

import numpy as np

from . import weights
from .report import VerificationReport
from .weights import (
    B1,
    B1_B2,
    B1_ONE_MINUS_B2,
    B2,
    ONE,
    ONE_MINUS_B1,
    ONE_MINUS_B1_B2,
    ONE_MINUS_B1_ONE_MINUS_B2,
    ONE_MINUS_B2,
    Weight,
    ZERO,
)

MAX_COLORS = 32

# Default parameter grid for numeric verifiers: the coarse lattice
# {0, 0.3, 0.7, 1}^2, which includes the degenerate corners (0,1) and (1,0).
DEFAULT_GRID: tuple[tuple[float, float], ...] = tuple(
    itertools.product((0.0, 0.3, 0.7, 1.0), repeat=2)
)

VERIFY_TOL = 1e-12


# ---------------------------------------------------------------------------
# Color vectors

def format_colors(bits: int, n: int) -> str:
    """Render an occupancy word as a bit string, color 1 first: (1,0) -> '10'."""
    return "".join("1" if (bits >> r) & 1 else "0" for r in range(n))


def parse_colors(text: str) -> tuple[int, int]:
    """Inverse of format_colors; returns (bits, n)."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"not a color bit string: {text!r}")
    bits = 0
    for r, c in enumerate(text):
        if c == "1":
            bits |= 1 << r
    return bits, len(text)


def fold_projection(bits: int, r: int) -> int:
    """Parity of the first r colors: the level-r occupancy of an edge."""
    if r < 0:
        raise ValueError("projection level must be nonnegative")
    return (bits & ((1 << r) - 1)).bit_count() & 1


def _check_key(n: int, *vecs: int) -> None:
    if not 1 <= n <= MAX_COLORS:
        raise ValueError(f"color count must be in 1..{MAX_COLORS}, got {n}")
    for v in vecs:
        if not 0 <= v < (1 << n):
            raise ValueError(f"color vector {v} out of range for n={n}")


# ---------------------------------------------------------------------------
# Single-color weights and their level products

def _build_l1() -> tuple[Weight, ...]:
    table = [ZERO] * 16
    entries = {
        (1, 0, 1, 0): ONE,            # south line continues north
        (0, 1, 0, 1): ONE,            # west line continues east
        (0, 0, 0, 0): B2,             # stay empty
        (0, 0, 1, 1): ONE_MINUS_B2,   # nucleate a corner
        (1, 1, 1, 1): B1,             # two lines cross
        (1, 1, 0, 0): ONE_MINUS_B1,   # two lines annihilate
    }
    for (i, j, k, l), w in entries.items():
        table[(i << 3) | (j << 2) | (k << 1) | l] = w
    return tuple(table)


_L1 = _build_l1()
_L1_CODES = tuple(w.code for w in _L1)
_STAR_CODES = tuple(tuple(weights.star(a, b).code for b in weights.W) for a in weights.W)


def l1_weight(i: int, j: int, k: int, l: int) -> Weight:
    """Single-color vertex weight for occupation bits (south, west; north, east)."""
    for v in (i, j, k, l):
        if v not in (0, 1):
            raise ValueError("single-color occupations must be 0 or 1")
    return _L1[(i << 3) | (j << 2) | (k << 1) | l]


def _ln_code(i: int, j: int, k: int, l: int, n: int) -> int:
    si = sj = sk = sl = 0
    code = 1  # ONE
    star = _STAR_CODES
    l1 = _L1_CODES
    for r in range(n):
        si ^= (i >> r) & 1
        sj ^= (j >> r) & 1
        sk ^= (k >> r) & 1
        sl ^= (l >> r) & 1
        code = star[code][l1[(si << 3) | (sj << 2) | (sk << 1) | sl]]
        if code == 0:
            return 0
    return code


def ln_weight(i: int, j: int, k: int, l: int, n: int) -> Weight:
    """n-color vertex weight: the product over levels r of the single-color
    weight of the r-fold projections of (i, j; k, l)."""
    _check_key(n, i, j, k, l)
    return weights.W[_ln_code(i, j, k, l, n)]


@dataclass(frozen=True)
class OutcomeDistribution:
    """Output law of one vertex given inputs: aligned outcome/probability lists.

    outcomes are (north, east) occupancy-word pairs sorted lexicographically
    by color tuples; probabilities are the evaluated weights and sum to 1.
    """

    n: int
    outcomes: tuple[tuple[int, int], ...]
    probs: tuple[float, ...]

    def as_dict(self) -> dict[tuple[int, int], float]:
        return dict(zip(self.outcomes, self.probs))


def _colors_sort_key(n):
    def key(pair):
        k, l = pair
        return (format_colors(k, n), format_colors(l, n))
    return key


@lru_cache(maxsize=4096)
def _ln_distribution_cached(i, j, n, b1, b2):
    support = []
    for k in range(1 << n):
        for l in range(1 << n):
            c = _ln_code(i, j, k, l, n)
            if c:
                support.append(((k, l), weights.W[c]))
    support.sort(key=lambda kv: _colors_sort_key(n)(kv[0]))
    outcomes = tuple(kv[0] for kv in support)
    probs = tuple(weights.evaluate(w, b1, b2) for _, w in support)
    return OutcomeDistribution(n, outcomes, probs)


def ln_distribution(i: int, j: int, n: int, b1: float, b2: float) -> OutcomeDistribution:
    """Exact output law at numeric parameters, by enumeration of all 4^n outputs."""
    _check_key(n, i, j)
    if n > 8:
        raise ValueError("distribution enumeration limited to n <= 8")
    if not (0.0 <= b1 <= 1.0 and 0.0 <= b2 <= 1.0):
        raise ValueError("parameters must lie in [0, 1]")
    return _ln_distribution_cached(i, j, n, float(b1), float(b2))


# ---------------------------------------------------------------------------
# Two-coin sampler

def vertex_outcome(i: int, j: int, n: int, cross: bool, nucleate: bool) -> tuple[int, int]:
    """Deterministic outcome of the two-coin rule.

    Level r with one input keeps it; with two inputs both continue iff
    `cross`; with no input both outputs appear iff `nucleate`.  The output
    words are recovered from the level occupancies by successive parity
    differences.
    """
    _check_key(n, i, j)
    si = sj = 0
    prev_k = prev_l = 0
    k = l = 0
    for r in range(n):
        si ^= (i >> r) & 1
        sj ^= (j >> r) & 1
        if si != sj:
            kr, lr = si, sj
        elif si:
            kr = lr = 1 if cross else 0
        else:
            kr = lr = 1 if nucleate else 0
        k |= (kr ^ prev_k) << r
        l |= (lr ^ prev_l) << r
        prev_k, prev_l = kr, lr
    return k, l


def sample_vertex(i: int, j: int, n: int, b1: float, b2: float,
                  u1: float, u2: float) -> tuple[int, int]:
    """One exact draw from the vertex law using two uniforms in [0, 1).

    u1 drives the cross coin (crosses with probability b1); u2 drives the
    nucleation coin (nucleates with probability 1 - b2).
    """
    return vertex_outcome(i, j, n, u1 < b1, u2 >= b2)


def coin_law(i: int, j: int, n: int, b1: float, b2: float) -> dict[tuple[int, int], float]:
    """Law induced by the two-coin sampler, accumulated over the 4 coin combos."""
    out: dict[tuple[int, int], float] = {}
    for cross in (False, True):
        for nuc in (False, True):
            p = (b1 if cross else 1.0 - b1) * ((1.0 - b2) if nuc else b2)
            key = vertex_outcome(i, j, n, cross, nuc)
            out[key] = out.get(key, 0.0) + p
    return {k: v for k, v in out.items() if v > 0.0}


@lru_cache(maxsize=None)
def outcome_table(n: int) -> np.ndarray:
    """Packed outcome lookup for the two-coin rule.

    Shape (2^n, 2^n, 2, 2), indexed [i, j, cross, nucleate]; each entry holds
    (north << n) | east as uint32.  Built vectorized; agrees with
    vertex_outcome entrywise.
    """
    if not 1 <= n <= 12:
        raise ValueError("outcome tables limited to 1 <= n <= 12")
    size = 1 << n
    bits = (np.arange(size, dtype=np.uint32)[:, None] >> np.arange(n, dtype=np.uint32)) & 1
    par = np.bitwise_and(np.cumsum(bits, axis=1), 1).astype(np.uint8)
    pi = par[:, None, :, None, None]  # i, j, level, cross, nucleate
    pj = par[None, :, :, None, None]
    coin = np.zeros((1, 1, n, 2, 2), dtype=np.uint8)
    coin[..., 1, :] = 1  # cross axis
    nuc = np.zeros((1, 1, n, 2, 2), dtype=np.uint8)
    nuc[..., :, 1] = 1
    shared = np.where(pi == 1, coin, nuc)
    K = np.where(pi != pj, pi, shared)
    L = np.where(pi != pj, pj, shared)
    kb = K ^ np.concatenate([np.zeros_like(K[..., :1, :, :]), K[..., :-1, :, :]], axis=2)
    lb = L ^ np.concatenate([np.zeros_like(L[..., :1, :, :]), L[..., :-1, :, :]], axis=2)
    pos = (1 << np.arange(n, dtype=np.uint32))[None, None, :, None, None]
    k = (kb.astype(np.uint32) * pos).sum(axis=2)
    l = (lb.astype(np.uint32) * pos).sum(axis=2)
    table = (k << np.uint32(n)) | l
    table.setflags(write=False)
    return table


# ---------------------------------------------------------------------------
# Partitions into consecutive color blocks

def validate_partition(cuts: tuple[int, ...], n: int) -> None:
    """Cut points r_1 < ... < r_m = n with r_1 >= 1 define consecutive blocks."""
    if not cuts or list(cuts) != sorted(set(cuts)) or cuts[0] < 1 or cuts[-1] != n:
        raise ValueError(f"invalid block partition {cuts} for n={n}")


def contiguous_partitions(n: int):
    """All partitions of colors 1..n into consecutive blocks, as cut tuples."""
    for inner in itertools.chain.from_iterable(
        itertools.combinations(range(1, n), r) for r in range(n)
    ):
        yield inner + (n,)


def partition_projection(bits: int, cuts: tuple[int, ...], n: int) -> int:
    """Merge each consecutive color block to its parity; block b -> bit b-1."""
    validate_partition(cuts, n)
    _check_key(n, bits)
    out = 0
    prev = 0
    for b, r in enumerate(cuts):
        out |= (fold_projection(bits, r) ^ prev) << b
        prev = fold_projection(bits, r)
    return out


# ---------------------------------------------------------------------------
# Exhaustive verifiers

_ROW_FAMILIES = (
    (ONE.code,),
    tuple(sorted((B1.code, ONE_MINUS_B1.code))),
    tuple(sorted((B2.code, ONE_MINUS_B2.code))),
    tuple(sorted((B1_B2.code, B1_ONE_MINUS_B2.code,
                  ONE_MINUS_B1_B2.code, ONE_MINUS_B1_ONE_MINUS_B2.code))),
)


def verify_stochastic(n: int, grid=DEFAULT_GRID) -> VerificationReport:
    """Row sums of the n-color weights equal 1 with nonnegative entries.

    Checks every (south, west) input pair: numerically on each grid parameter
    pair (exact-rounded fsum within 1e-12), and symbolically (the multiset of
    nonzero row weights is one of the four partition-of-unity families).
    """
    if not 1 <= n <= 4:
        raise ValueError("stochasticity enumeration limited to n <= 4 (16^n keys)")
    rep = VerificationReport(f"stochasticity n={n}")
    tables = [weights.eval_table(b1, b2) for b1, b2 in grid]
    size = 1 << n
    for i in range(size):
        for j in range(size):
            row = [
                _ln_code(i, j, k, l, n)
                for k in range(size)
                for l in range(size)
            ]
            nonzero = tuple(sorted(c for c in row if c))
            rep.cases += 1
            if nonzero not in _ROW_FAMILIES:
                rep.fail(f"row ({format_colors(i, n)},{format_colors(j, n)}): "
                         f"weights not a unity family: {nonzero}")
            for (b1, b2), tbl in zip(grid, tables):
                rep.cases += 1
                vals = [tbl[c] for c in row]
                if min(vals) < 0.0:
                    rep.fail(f"negative weight in row ({i},{j}) at ({b1},{b2})")
                total = fsum(vals)
                if abs(total - 1.0) > VERIFY_TOL:
                    rep.fail(f"row ({format_colors(i, n)},{format_colors(j, n)}) "
                             f"sums to {total!r} at (b1,b2)=({b1},{b2})")
    rep.details["grid"] = list(grid)
    return rep


def verify_color_ignorance(n: int, m: int, grid=DEFAULT_GRID) -> VerificationReport:
    """Summing the n-color law over the last n-m colors gives the m-color law.

    For every input pair and every prefix output pair, the sum of evaluated
    n-color weights over all completions of the outputs' trailing colors
    matches the m-color weight of the prefixes within 1e-12 on the grid.
    """
    if not 1 <= n <= 3 or not 1 <= m <= n:
        raise ValueError("color-ignorance enumeration limited to 1 <= m <= n <= 3")
    rep = VerificationReport(f"color ignorance n={n} m={m}")
    tables = [weights.eval_table(b1, b2) for b1, b2 in grid]
    size, psize, tails = 1 << n, 1 << m, 1 << (n - m)
    pmask = psize - 1
    for i in range(size):
        for j in range(size):
            for kp in range(psize):
                for lp in range(psize):
                    mcode = _ln_code(i & pmask, j & pmask, kp, lp, m)
                    codes = [
                        _ln_code(i, j, kp | (kt << m), lp | (lt << m), n)
                        for kt in range(tails)
                        for lt in range(tails)
                    ]
                    for (b1, b2), tbl in zip(grid, tables):
                        rep.cases += 1
                        got = fsum(tbl[c] for c in codes)
                        want = tbl[mcode]
                        if abs(got - want) > VERIFY_TOL:
                            rep.fail(
                                f"marginal mismatch i={format_colors(i, n)} "
                                f"j={format_colors(j, n)} prefix=({format_colors(kp, m)},"
                                f"{format_colors(lp, m)}) at ({b1},{b2}): {got!r} vs {want!r}")
    return rep


def verify_mod2_erasure(n: int, cuts: tuple[int, ...], grid=DEFAULT_GRID) -> VerificationReport:
    """Merging consecutive color blocks by parity maps the n-color law to the
    m-block law: summing over fibers of the block projection matches the
    m-color weight of the projected key within 1e-12 on the grid."""
    if not 1 <= n <= 3:
        raise ValueError("erasure enumeration limited to n <= 3")
    validate_partition(cuts, n)
    m = len(cuts)
    rep = VerificationReport(f"mod-2 erasure n={n} cuts={cuts}")
    tables = [weights.eval_table(b1, b2) for b1, b2 in grid]
    size = 1 << n
    proj = [partition_projection(v, cuts, n) for v in range(size)]
    fibers: dict[int, list[int]] = {}
    for v in range(size):
        fibers.setdefault(proj[v], []).append(v)
    for i in range(size):
        for j in range(size):
            for kp in range(1 << m):
                for lp in range(1 << m):
                    mcode = _ln_code(proj[i], proj[j], kp, lp, m)
                    codes = [
                        _ln_code(i, j, k, l, n)
                        for k in fibers.get(kp, ())
                        for l in fibers.get(lp, ())
                    ]
                    for (b1, b2), tbl in zip(grid, tables):
                        rep.cases += 1
                        got = fsum(tbl[c] for c in codes)
                        want = tbl[mcode]
                        if abs(got - want) > VERIFY_TOL:
                            rep.fail(
                                f"erasure mismatch cuts={cuts} i={format_colors(i, n)} "
                                f"j={format_colors(j, n)} target=({format_colors(kp, m)},"
                                f"{format_colors(lp, m)}) at ({b1},{b2}): {got!r} vs {want!r}")
    return rep


def verify_sampler_matrix(n: int, grid=DEFAULT_GRID) -> VerificationReport:
    """The two-coin sampler induces exactly the enumerated vertex law.

    For every input pair and grid parameter pair, the law accumulated over
    the four coin combinations matches ln_distribution entrywise within
    1e-12.
    """
    if not 1 <= n <= 3:
        raise ValueError("sampler-law comparison limited to n <= 3")
    rep = VerificationReport(f"sampler law n={n}")
    size = 1 << n
    for i in range(size):
        for j in range(size):
            for b1, b2 in grid:
                law = coin_law(i, j, n, b1, b2)
                dist = ln_distribution(i, j, n, b1, b2).as_dict()
                for key in set(law) | set(dist):
                    rep.cases += 1
                    if abs(law.get(key, 0.0) - dist.get(key, 0.0)) > VERIFY_TOL:
                        rep.fail(
                            f"law mismatch i={format_colors(i, n)} j={format_colors(j, n)} "
                            f"outcome={key} at ({b1},{b2}): "
                            f"{law.get(key, 0.0)!r} vs {dist.get(key, 0.0)!r}")
    return rep


# ---------------------------------------------------------------------------
# Two-color golden table

def l2_golden_table() -> list[tuple[int, int, int, int, Weight]]:
    """All nonzero two-color keys with weights, in canonical bit-string order."""
    rows = []
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    w = weights.W[_ln_code(i, j, k, l, 2)]
                    if not w.zero:
                        rows.append((i, j, k, l, w))
    rows.sort(key=lambda r: tuple(format_colors(v, 2) for v in r[:4]))
    return rows


def golden_table_lines() -> list[str]:
    """Text form of the two-color table: 'i j k l weight' per line."""
    return [
        f"{format_colors(i, 2)} {format_colors(j, 2)} "
        f"{format_colors(k, 2)} {format_colors(l, 2)} {weights.render(w)}"
        for i, j, k, l, w in l2_golden_table()
    ]


#: Expected multiplicity of each weight among the 32 nonzero two-color keys.
GOLDEN_WEIGHT_COUNTS = {
    "1": 4, "b1": 5, "b2": 5, "1-b1": 5, "1-b2": 5,
    "b1*b2": 2, "b1*(1-b2)": 2, "(1-b1)*b2": 2, "(1-b1)*(1-b2)": 2,
}


def verify_golden_table() -> VerificationReport:
    """Internal consistency of the two-color table.

    Checks the entry count, the absence of the two keys whose coin demands
    contradict across levels, level-parity conservation on every entry, and
    the weight multiset.
    """
    rep = VerificationReport("two-color table")
    rows = l2_golden_table()
    rep.cases += 1
    if len(rows) != 32:
        rep.fail(f"expected 32 nonzero keys, found {len(rows)}")
    keys = {(i, j, k, l) for i, j, k, l, _ in rows}
    # (10,10;11,11): needs a level-1 cross and a level-2 annihilation at once.
    # (00,00;11,11): creation at level 2 demands nucleation, level 1 forbids it.
    for bad in ((0b01, 0b01, 0b11, 0b11), (0b00, 0b00, 0b11, 0b11)):
        rep.cases += 1
        if bad in keys:
            rep.fail(f"contradictory key present: {bad}")
    for i, j, k, l, _ in rows:
        for r in (1, 2):
            rep.cases += 1
            # Creation/annihilation happens in pairs, so level occupancy is
            # conserved mod 2 only.
            if (fold_projection(i, r) ^ fold_projection(j, r)
                    != fold_projection(k, r) ^ fold_projection(l, r)):
                rep.fail(f"level-{r} parity not conserved on key {(i, j, k, l)}")
    counts: dict[str, int] = {}
    for _, _, _, _, w in rows:
        counts[weights.render(w)] = counts.get(weights.render(w), 0) + 1
    rep.cases += 1
    if counts != GOLDEN_WEIGHT_COUNTS:
        rep.fail(f"weight multiset mismatch: {counts}")
    return rep
