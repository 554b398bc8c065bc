"""The discrete longest-chain degeneration.

Set b1 = 0 and drop independent Bernoulli(p) points into the cells of a box.
The complemented model's corner height then has the same law as the longest
strictly-increasing chain of points dominated by the corner — the discrete
planar last-passage / Ulam-type quantity.  The two sides are linked at three
levels of strength:

  1. exact equality of the closed-form limits,
  2. equality of the exact finite-box laws (enumerated by transfer),
  3. a pathwise coupling: with shared coins the lattice height *equals* the
     longest chain, realization by realization.

Run:  python3 demos/04_hammersley.py
"""

from fractions import Fraction

from sixvertex import (
    enumerate_cs6v_height_distribution,
    enumerate_hammersley_distribution,
    hammersley_height,
    hammersley_limit,
    limit_shape_g,
    make_field,
    sample_pointset,
    verify_hammersley_coupling,
    verify_hammersley_equivalence,
)


def ascii_points(ps) -> str:
    rows = []
    for y in range(ps.height, 0, -1):
        rows.append(" ".join("o" if ps.grid[x - 1, y - 1] else "."
                             for x in range(1, ps.width + 1)))
    return "\n".join(rows)


def main() -> None:
    p = 0.25

    print(f"A Bernoulli({p}) point field and its longest-chain height")
    print("----------------------------------------------------------")
    ps = sample_pointset(14, 10, p, seed=9)
    print(ascii_points(ps))
    H = hammersley_height(ps)
    print(f"corner height H({ps.width}, {ps.height}) = {H[-1, -1]} "
          f"(longest chain of points increasing in both coordinates)")

    print()
    print("Exact finite-box laws agree")
    print("---------------------------")
    field = make_field(0.0, 1.0 - p)
    for w, h in [(2, 2), (3, 3), (2, 3)]:
        lat = enumerate_cs6v_height_distribution(w, h, field)
        cha = enumerate_hammersley_distribution(w, h, p)
        print(f"  {w} x {h} box:")
        for k in sorted(set(lat) | set(cha)):
            print(f"    P(H = {k}) lattice {lat.get(k, 0.0):.6f}   "
                  f"chains {cha.get(k, 0.0):.6f}")
        rep = verify_hammersley_equivalence(w, h, p)
        print(f"    {rep.summary()}")

    print()
    print("Pathwise coupling under shared randomness")
    print("-----------------------------------------")
    rep = verify_hammersley_coupling(40, 30, p, seeds=range(10))
    print(f"  {rep.summary()}")
    print("  (the lattice corner height equals the longest chain for every")
    print("   seed, not just in distribution)")

    print()
    print("Closed-form limit")
    print("-----------------")
    print("  normalized corner height along direction (x, y), density p:")
    for x, y in [(1, 1), (2, 1), (1, 3)]:
        val = hammersley_limit(x, y, p)
        print(f"    limit({x}, {y}) = {val:.6f}")
    print(f"  at (1, 1), p = {p}: "
          f"{hammersley_limit(1, 1, p):.6f} (= 2/3 exactly: "
          f"{abs(hammersley_limit(1, 1, 0.25) - Fraction(2, 3)) < 1e-12})")
    g = limit_shape_g(1.0, 1.0, 0.0, 1.0 - p)
    print("  consistency with the general limit shape at b1=0, b2=1-p:")
    print(f"    y - g(x, y) = {1.0 - g:.6f} == hammersley limit "
          f"{hammersley_limit(1, 1, p):.6f}")


if __name__ == "__main__":
    main()
