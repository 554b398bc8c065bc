"""Colored ensembles, projections, and the superadditive crossing counts.

Stacking n copies of the one-line vertex rule — with a single shared crossing
coin and a single shared nucleation coin per vertex — yields an n-color model
whose edges carry sets of colors.  Colors are assigned to L-shaped shells of
the quadrant by a coloring scheme, and two projections tie the construction
back to simpler objects:

  * forgetting colors mod 2 collapses an n-color sample to a one-color
    complemented sample, coin for coin;
  * selecting the highest-priority color recovers a plain sample untouched
    by the others.

The crossing count X(m, n) — lines of the intermediate colors leaving shell m
that make it past shell n — is superadditive, X(m,n) >= X(m,k) + X(k,n), and
X(0, k) equals the folded corner height exactly.  These are the facts that
drive the law-of-large-numbers machinery.

Run:  python3 demos/03_colored_shells.py
"""

import numpy as np

from sixvertex import (
    admissibility_violations,
    compute_X,
    format_colors,
    make_coloring,
    make_field,
    mod2_project,
    sample_cs6v,
    sample_colored_cs6v,
    sample_shell_ensembles,
    sample_two_colored_with_boundary,
    select_color,
    verify_ergodic_hypotheses,
    verify_prop_X_height,
    verify_superadditivity,
)


def main() -> None:
    field = make_field(0.3, 0.7)

    print("Coloring schemes")
    print("----------------")
    inhomog = make_field([[0.1, 0.4], [0.3, 0.2], [0.25, 0.35]],
                         [[0.7, 0.8], [0.6, 0.9], [0.75, 0.65]])
    for direction, fld, label in [((1, 1), field, "homogeneous"),
                                  ((2, 1), field, "homogeneous"),
                                  ((3, 2), field, "homogeneous"),
                                  ((2, 1), inhomog, "3 x 2 periodic")]:
        s = make_coloring(*direction, fld)
        print(f"  direction {direction} over a {label} field: "
              f"blocks of {s.bx} x {s.by} cells, {s.N} color(s) per period")
    scheme = make_coloring(2, 1, field)
    print("  shell labels near the origin for direction (2, 1):")
    for b in range(3, 0, -1):
        print("   ", [scheme.block(a, b) for a in range(1, 7)])

    print()
    print("A colored sample and its projections")
    print("------------------------------------")
    n_blocks = 4
    e = sample_colored_cs6v(n_blocks, scheme, field, seed=11)
    print(f"  {e.n_colors} colors on a {e.width} x {e.height} box")
    assert admissibility_violations(e, scheme) == []
    print("  shell-wise admissibility: OK")
    masks = sorted(set(np.unique(e.v_edges)) | set(np.unique(e.h_edges)))
    shown = ", ".join(format_colors(int(m), e.n_colors) for m in masks[:8])
    print(f"  edge color sets seen (low bit = highest priority): {shown}...")

    folded = mod2_project(e)
    plain = sample_cs6v(e.width, e.height, field, seed=11)
    assert np.array_equal(folded.v_edges, plain.v_edges)
    assert np.array_equal(folded.h_edges, plain.h_edges)
    print("  mod-2 projection == one-color sample with the same coins: OK")

    # Two colors with color-2 lines injected on both boundaries: the
    # highest-priority plane never feels them.
    left = np.full(12, 2, dtype=np.uint8)
    bottom = np.zeros(18, dtype=np.uint8)
    bottom[::3] = 2
    two = sample_two_colored_with_boundary(18, 12, field, left, bottom, seed=11)
    first = select_color(two, 1)
    lone = sample_cs6v(18, 12, field, seed=11)
    assert np.array_equal(first.v_edges, lone.v_edges)
    assert np.array_equal(first.h_edges, lone.h_edges)
    print("  color 1 plane is unperturbed by injected color-2 lines: OK")

    print()
    print("Crossing counts X(m, n)")
    print("-----------------------")
    for m in range(n_blocks):
        row = [compute_X(e, scheme, m, n) for n in range(m, n_blocks + 1)]
        cells = "  ".join(f"X({m},{n})={v}" for n, v in enumerate(row, start=m))
        print(f"  {cells}")
    rep = verify_prop_X_height(e, scheme)
    print(f"  X(0, k) equals the folded corner height: {rep.summary()}")

    print()
    print("Superadditivity over replicas")
    print("-----------------------------")
    ens = sample_shell_ensembles((2, 1), field, n_blocks=5, replicas=12, seed=42)
    rep = verify_superadditivity(ens, make_coloring(2, 1, field), n_max=5)
    print(f"  {rep.summary()}")

    print()
    print("Hypotheses of the subadditive ergodic theorem (statistical)")
    print("-----------------------------------------------------------")
    rep = verify_ergodic_hypotheses((1, 1), field, k=2, replicas=120, seed=5)
    print(f"  {rep.summary()}")
    for key, val in rep.details.items():
        print(f"    {key}: {val}")


if __name__ == "__main__":
    main()
