"""Law-of-large-numbers checks: limit shapes, diagonal line counts, and
convergence experiments.

The homogeneous step-data model has an explicit hydrodynamic limit
h(nx, ny)/n -> g(x, y); its complement correspondingly approaches y - g.
The longest-chain height has the classical parabolic limit, which is the
b1 = 0 specialization of the same formula.  For periodic parameters no
closed form is claimed: the superadditive line counts X along a rational
direction certify that the ergodic-theorem hypotheses hold empirically, and
convergence experiments report Cauchy gaps and replica spread instead of a
reference value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

import numpy as np
from scipy import stats

from . import pool
from .degenerations import hammersley_height, sample_pointset
from .lattice import (
    ColoringScheme,
    ParameterField,
    PathEnsemble,
    height_H,
    make_coloring,
    mod2_project,
    sample_colored_cs6v,
    sample_cs6v,
    sample_s6v,
)
from .report import VerificationReport


# ---------------------------------------------------------------------------
# Closed-form limits

def limit_shape_g(x: float, y: float, b1: float, b2: float) -> float:
    """Hydrodynamic limit of h(nx, ny)/n for the homogeneous step-data model.

    For b1 < b2 the plane splits at the slopes (1-b2)/(1-b1) and its
    reciprocal: flat facets g = 0 and g = y - x outside, a parabolic bulk
    (sqrt(y(1-b1)) - sqrt(x(1-b2)))^2 / (b2 - b1) between.  For b1 >= b2
    only the facets survive: g = max(y - x, 0).
    """
    if not (0.0 <= b1 <= 1.0 and 0.0 <= b2 <= 1.0):
        raise ValueError("parameters must lie in [0, 1]")
    if x < 0 or y < 0:
        raise ValueError("direction components must be nonnegative")
    if b1 >= b2:
        return max(y - x, 0.0)
    a1, a2 = 1.0 - b1, 1.0 - b2
    if x * a2 >= y * a1:
        return 0.0
    if x * a1 <= y * a2:
        return y - x
    return (math.sqrt(y * a1) - math.sqrt(x * a2)) ** 2 / (b2 - b1)


def hammersley_limit(x: float, y: float, p: float) -> float:
    """Limit of the longest-chain height H(nx, ny)/n for Bernoulli(p) points.

    Equals y - limit_shape_g(x, y, 0, 1-p): a parabolic bulk
    (2 sqrt(pxy) - (x+y)p)/(1-p) when p < min(x/y, y/x), saturating at
    min(x, y) outside.
    """
    if not 0.0 <= p < 1.0:
        raise ValueError("p must lie in [0, 1)")
    if x < 0 or y < 0:
        raise ValueError("direction components must be nonnegative")
    if p * y < x and p * x < y:
        return (2.0 * math.sqrt(p * x * y) - (x + y) * p) / (1.0 - p)
    return min(x, y)


# ---------------------------------------------------------------------------
# Diagonal line counts

def compute_X(e: PathEnsemble, scheme: ColoringScheme, m: int, n: int) -> int:
    """Number of lines of the shells m+1..n crossing row n*by at columns
    m*bx+1 .. n*bx, counted mod 2 per edge.

    Shell k's color sits at bit e.n_colors - k of the masks, so the counted
    colors occupy bits e.n_colors - n .. e.n_colors - m - 1.
    """
    if not 0 <= m <= n <= e.n_colors:
        raise ValueError("need 0 <= m <= n <= n_colors")
    if m == n:
        return 0
    row = scheme.by * n
    if row > e.height or scheme.bx * n > e.width:
        raise ValueError("ensemble too small for the requested shells")
    arr = e.v_edges[scheme.bx * m: scheme.bx * n, row - 1].astype(np.int64)
    par = np.zeros(arr.shape, dtype=np.int64)
    for b in range(e.n_colors - n, e.n_colors - m):
        par ^= (arr >> b) & 1
    return int(par.sum())


def verify_superadditivity(ensembles, scheme: ColoringScheme,
                           n_max: int) -> VerificationReport:
    """X(0, n) >= X(0, m) + X(m, n) on every sampled trajectory and pair m <= n."""
    rep = VerificationReport(f"superadditivity n_max={n_max}")
    for idx, e in enumerate(ensembles):
        if e.n_colors < n_max:
            raise ValueError("ensemble has fewer shells than n_max")
        X0 = {n: compute_X(e, scheme, 0, n) for n in range(n_max + 1)}
        for m in range(n_max + 1):
            for n in range(m, n_max + 1):
                rep.cases += 1
                lhs = X0[n]
                rhs = X0[m] + compute_X(e, scheme, m, n)
                if lhs < rhs:
                    rep.fail(f"replica {idx}: X(0,{n})={lhs} < X(0,{m})+X({m},{n})={rhs}")
    return rep


def verify_prop_X_height(e: PathEnsemble, scheme: ColoringScheme) -> VerificationReport:
    """X(0, k) equals the folded height at the block corner (k*bx, k*by),
    exactly, for every k up to the ensemble's shell count."""
    rep = VerificationReport("X equals corner height")
    H = height_H(mod2_project(e))
    for k in range(e.n_colors + 1):
        rep.cases += 1
        x_val = compute_X(e, scheme, 0, k)
        h_val = int(H[scheme.bx * k, scheme.by * k])
        if x_val != h_val:
            rep.fail(f"k={k}: X(0,k)={x_val} != H={h_val}")
    return rep


def _superadditive_task(args):
    b1, b2, x, y, n_blocks, seed, replica = args
    field = ParameterField(np.asarray(b1), np.asarray(b2))
    scheme = make_coloring(Fraction(x), Fraction(y), field)
    return sample_colored_cs6v(n_blocks, scheme, field, seed, replica)


def sample_shell_ensembles(direction, field: ParameterField, n_blocks: int,
                           replicas: int, seed: int, workers: int = 1):
    """Colored samples with n_blocks shells for replicas 0..replicas-1."""
    x, y = direction
    args = [(field.b1.tolist(), field.b2.tolist(), str(Fraction(x)), str(Fraction(y)),
             n_blocks, seed, r) for r in range(replicas)]
    return pool.run_tasks(_superadditive_task, args, workers)


def verify_ergodic_hypotheses(direction, field: ParameterField, k: int,
                              replicas: int, seed: int, alpha: float = 0.01,
                              workers: int = 1) -> VerificationReport:
    """Empirical check of the superadditive ergodic theorem's hypotheses for
    the array X(m, n) along a rational direction.

    Samples 2k-shell ensembles and tests: distributional invariance of
    X(m, m+k) under m -> m+k and under m -> m+1 (two-sample KS at the given
    significance), nonnegativity, and finite means (reported).
    """
    scheme = make_coloring(*direction, field)
    ens = sample_shell_ensembles(direction, field, 2 * k, replicas, seed, workers)
    x0k = np.array([compute_X(e, scheme, 0, k) for e in ens])
    xk2k = np.array([compute_X(e, scheme, k, 2 * k) for e in ens])
    x1k1 = np.array([compute_X(e, scheme, 1, k + 1) for e in ens])
    rep = VerificationReport(f"ergodic hypotheses k={k}")
    rep.cases = 3
    if min(x0k.min(), xk2k.min(), x1k1.min()) < 0:
        rep.fail("negative line count")
    p_shift_k = stats.ks_2samp(x0k, xk2k, method="asymp").pvalue
    if p_shift_k <= alpha:
        rep.fail(f"X(0,k) vs X(k,2k): KS p={p_shift_k:.4g} <= {alpha}")
    p_shift_1 = stats.ks_2samp(x0k, x1k1, method="asymp").pvalue
    if p_shift_1 <= alpha:
        rep.fail(f"X(0,k) vs X(1,k+1): KS p={p_shift_1:.4g} <= {alpha}")
    rep.details.update({
        "mean_X0k": float(x0k.mean()),
        "mean_Xk2k": float(xk2k.mean()),
        "mean_X1k1": float(x1k1.mean()),
        "ks_p_shift_k": float(p_shift_k),
        "ks_p_shift_1": float(p_shift_1),
        "replicas": replicas,
    })
    return rep


# ---------------------------------------------------------------------------
# Convergence experiments

@dataclass
class ConvergenceReport:
    """Height ratios h(nx, ny)/n across sizes and replicas.

    ratios has shape (replicas, len(sizes)).  reference is the closed-form
    limit when one exists (homogeneous parameters), else None; the running
    value at the largest size is reported either way, with no claim that it
    equals the ergodic constant in the periodic case.
    """

    model: str
    direction: tuple[str, str]
    sizes: list[int]
    ratios: np.ndarray
    reference: float | None
    seed: int
    extra: dict = dataclass_field(default_factory=dict)

    @property
    def final_mean(self) -> float:
        return float(self.ratios[:, -1].mean())

    @property
    def replica_std(self) -> float:
        return float(self.ratios[:, -1].std())

    def cauchy_gaps(self) -> np.ndarray:
        """|ratio(size_i) - ratio(size_{i-1})| per replica, consecutive sizes."""
        return np.abs(np.diff(self.ratios, axis=1))

    def abs_errors(self) -> np.ndarray | None:
        if self.reference is None:
            return None
        return np.abs(self.ratios - self.reference)

    def to_csv(self, meta: dict | None = None) -> str:
        import json

        lines = []
        if meta is not None:
            lines.append("# " + json.dumps(meta, sort_keys=True))
        lines.append("size,replica,ratio,reference,abs_error")
        ref = "" if self.reference is None else repr(float(self.reference))
        for si, size in enumerate(self.sizes):
            for r in range(self.ratios.shape[0]):
                ratio = float(self.ratios[r, si])
                err = "" if self.reference is None else repr(abs(ratio - self.reference))
                lines.append(f"{size},{r},{ratio!r},{ref},{err}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self, meta: dict | None = None) -> dict:
        out = {
            "model": self.model,
            "direction": list(self.direction),
            "sizes": list(self.sizes),
            "ratios": self.ratios.tolist(),
            "reference": self.reference,
            "final_mean": self.final_mean,
            "replica_std": self.replica_std,
            "max_last_cauchy_gap": (
                float(self.cauchy_gaps()[:, -1].max()) if len(self.sizes) > 1 else None
            ),
            "seed": self.seed,
        }
        if meta is not None:
            out["meta"] = meta
        out.update(self.extra)
        return out


def _floor_point(x: Fraction, y: Fraction, n: int) -> tuple[int, int]:
    return int(n * x // 1), int(n * y // 1)


def _ratio_task(args):
    model, b1, b2, xs, ys, sizes, seed, replica = args
    field = ParameterField(np.asarray(b1), np.asarray(b2))
    x, y = Fraction(xs), Fraction(ys)
    wmax, hmax = _floor_point(x, y, max(sizes))
    out = []
    if model == "hammersley":
        p = 1.0 - float(field.b2[0, 0])
        ps = sample_pointset(wmax, hmax, p, seed, replica)
        H = hammersley_height(ps)
        for n in sizes:
            px, py = _floor_point(x, y, n)
            out.append(float(H[px, py]) / n)
        return out
    if model == "s6v":
        e = sample_s6v(wmax, hmax, field, seed, replica)
    elif model == "cs6v":
        e = sample_cs6v(wmax, hmax, field, seed, replica)
    else:
        raise ValueError(f"unknown model {model!r}")
    v = e.v_edges.astype(np.int64)
    for n in sizes:
        px, py = _floor_point(x, y, n)
        crossings = int(v[:px, py - 1].sum()) if py >= 1 else 0
        val = (py - crossings) if model == "s6v" else crossings
        out.append(val / n)
    return out


def convergence_experiment(direction, field: ParameterField, sizes, replicas: int,
                           seed: int, model: str = "s6v",
                           workers: int = 1) -> ConvergenceReport:
    """Sample height ratios h(floor(nx), floor(ny))/n for each size and replica.

    Each replica draws one box at the largest size and reads every smaller
    size from the same realization, so per-replica gaps measure actual
    Cauchy behavior along a growing sample.  With homogeneous parameters the
    closed-form limit is attached as reference.
    """
    x, y = Fraction(direction[0]), Fraction(direction[1])
    if x <= 0 or y <= 0:
        raise ValueError("direction components must be positive")
    sizes = sorted(int(n) for n in sizes)
    if not sizes or sizes[0] < 1:
        raise ValueError("sizes must be positive")
    if _floor_point(x, y, sizes[0]) < (1, 1):
        raise ValueError("smallest size yields an empty box")
    if model not in ("s6v", "cs6v", "hammersley"):
        raise ValueError(f"unknown model {model!r}")
    reference = None
    if field.I == 1 and field.J == 1:
        b1v, b2v = float(field.b1[0, 0]), float(field.b2[0, 0])
        g = limit_shape_g(float(x), float(y), b1v, b2v)
        if model == "s6v":
            reference = g
        elif model == "cs6v":
            reference = float(y) - g
        else:
            reference = hammersley_limit(float(x), float(y), 1.0 - b2v)
    args = [(model, field.b1.tolist(), field.b2.tolist(), str(x), str(y),
             sizes, seed, r) for r in range(replicas)]
    rows = pool.run_tasks(_ratio_task, args, workers)
    ratios = np.array(rows, dtype=np.float64)
    return ConvergenceReport(model, (str(x), str(y)), sizes, ratios, reference, seed)
