"""Tour of the symbolic weight algebra.

Every vertex weight in this toolkit is one of ten closed-form expressions in
the two parameters (b1, b2).  The set is closed under a commutative,
associative, idempotent "star" product with an annihilating zero, which is
exactly the structure needed to compose one-line vertex rules into multi-line
rules level by level.  This script walks the algebra: the elements, the
product table, evaluation at numeric parameters, and the partition-of-unity
property that makes each row of a transition matrix a probability law.

Run:  python3 demos/01_weight_algebra.py
"""

import itertools

from sixvertex import (
    B1,
    B2,
    ONE,
    W,
    W_PRIME,
    ZERO,
    evaluate,
    is_partition_of_unity,
    parse,
    render,
    star,
    star_product,
)


def main() -> None:
    print("The ten weights")
    print("---------------")
    for w in W:
        tag = "  (product form)" if w not in W_PRIME else ""
        print(f"  code {w.code}: {render(w)}{tag}")

    print()
    print("Star product table (rows * columns)")
    print("-----------------------------------")
    names = [render(w) for w in W]
    width = max(len(n) for n in names)
    print(" " * (width + 2) + "  ".join(n.ljust(width) for n in names))
    for a in W:
        row = [render(star(a, b)).ljust(width) for b in W]
        print(f"{render(a).ljust(width)}  " + "  ".join(row))

    print()
    print("Algebraic laws (checked exhaustively)")
    print("-------------------------------------")
    assert all(star(a, b) is star(b, a) for a, b in itertools.product(W, W))
    print("  commutative: yes")
    assert all(
        star(star(a, b), c) is star(a, star(b, c))
        for a, b, c in itertools.product(W, repeat=3)
    )
    print("  associative: yes")
    assert all(star(a, a) is a for a in W)
    print("  idempotent:  yes (every element squares to itself)")
    assert all(star(a, ZERO) is ZERO for a in W)
    print("  annihilator: yes (0 absorbs everything)")
    assert all(star(a, ONE) is a for a in W)
    print("  identity:    yes (1 is neutral)")

    print()
    print("Folding many factors at once")
    print("----------------------------")
    w = star_product([B1, ONE, B2])
    print(f"  b1 * 1 * b2            = {render(w)}")
    w = star_product([B1, parse("1-b1")])
    print(f"  b1 * (1-b1)            = {render(w)}  (contradictory demands)")
    w = star_product([])
    print(f"  empty product          = {render(w)}")

    print()
    print("Evaluation at numeric parameters")
    print("--------------------------------")
    b1, b2 = 0.3, 0.7
    for w in W:
        print(f"  {render(w):>15s} at (b1={b1}, b2={b2}) -> {evaluate(w, b1, b2):.4f}")

    print()
    print("Partitions of unity")
    print("-------------------")
    rows = [
        [parse("b2"), parse("1-b2")],
        [parse("b1"), parse("1-b1")],
        [parse("b1*b2"), parse("b1*(1-b2)"), parse("(1-b1)*b2"),
         parse("(1-b1)*(1-b2)")],
    ]
    for row in rows:
        txt = " + ".join(render(w) for w in row)
        print(f"  {txt:<55s} sums to 1: {is_partition_of_unity(row)}")
    bad = [parse("b1"), parse("b2")]
    print(f"  {'b1 + b2':<55s} sums to 1: {is_partition_of_unity(bad)}")

    print()
    print("Round trip through the canonical text form")
    print("------------------------------------------")
    assert all(parse(render(w)) is w for w in W)
    print("  parse(render(w)) is w for all ten elements")


if __name__ == "__main__":
    main()
