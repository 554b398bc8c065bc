"""Sampling lattice path ensembles and reading off height functions.

The basic model routes up-right lattice paths through a grid of vertices:
a path entering a vertex from the south continues north with probability b1
(else it turns east), and one entering from the west continues east with
probability b2 (else it turns north).  Two entering paths always cross.  The
complemented variant flips the meaning of every horizontal edge, which turns
the fully-packed west boundary into an empty one and produces sparse path
clouds whose density is controlled by nucleation events.

This script samples both variants, verifies the conservation laws on the
sample, demonstrates the exact pathwise duality between them, and prints the
two height functions together with the identity that links them.

Run:  python3 demos/02_sampling_and_heights.py
"""

import numpy as np

from sixvertex import (
    admissibility_violations,
    complement,
    height_H,
    height_h,
    make_field,
    sample_cs6v,
    sample_s6v,
)


def ascii_paths(e, max_size: int = 20) -> str:
    """Tiny ASCII picture: | for a vertical edge, - for horizontal, + both."""
    w, h = min(e.width, max_size), min(e.height, max_size)
    rows = []
    for y in range(h, 0, -1):
        line = []
        for x in range(1, w + 1):
            v = bool(e.v_edges[x - 1, y - 1])
            hz = bool(e.h_edges[x - 1, y - 1])
            line.append("+" if v and hz else "|" if v else "-" if hz else ".")
        rows.append(" ".join(line))
    return "\n".join(rows)


def main() -> None:
    field = make_field(0.3, 0.7)
    print(f"Parameters: b1={field.b1[0, 0]}, b2={field.b2[0, 0]}")

    print()
    print("Ordinary variant (paths enter from the full west boundary)")
    print("-----------------------------------------------------------")
    e = sample_s6v(16, 12, field, seed=7)
    print(ascii_paths(e))
    assert admissibility_violations(e) == []
    print("local admissibility: OK (every vertex is one of the six types)")

    # Conservation: lines in == lines out at every vertex.
    south = np.concatenate([e.boundary_bottom[:, None], e.v_edges[:, :-1]], axis=1)
    west = np.concatenate([e.boundary_left[None, :], e.h_edges[:-1, :]], axis=0)
    assert np.array_equal(south + west, e.v_edges + e.h_edges)
    print("line conservation:   OK (in-degree equals out-degree everywhere)")

    print()
    print("Complemented variant (same engine, horizontal edges flipped)")
    print("------------------------------------------------------------")
    c = sample_cs6v(16, 12, field, seed=7)
    print(ascii_paths(c))
    assert admissibility_violations(c) == []
    dual = complement(e)
    assert np.array_equal(dual.v_edges, c.v_edges)
    assert np.array_equal(dual.h_edges, c.h_edges)
    print("pathwise duality:    OK (complementing one sample gives the other,")
    print("                         coin for coin, edge for edge)")

    print()
    print("Height functions")
    print("----------------")
    e = sample_s6v(8, 6, field, seed=21)
    c = complement(e)
    h = height_h(e)
    H = height_H(c)
    print("h(x, y): y minus the vertical lines of the ordinary sample that")
    print("         cross row y at columns <= x (top row = largest y):")
    print(np.flipud(h.T))
    print("H(x, y): lines of the complemented sample entering the box")
    print("         [1,x] x [1,y] from the left plus lines exiting its top:")
    print(np.flipud(H.T))
    ys = np.arange(e.height + 1)[None, :]
    assert np.array_equal(H, ys - h)
    print("identity H = y - h:  OK at every lattice point")

    print()
    print("Extreme parameters")
    print("------------------")
    stair = sample_s6v(10, 10, make_field(1.0, 0.0), seed=3)
    xs = np.arange(1, 11)[:, None]
    ys = np.arange(1, 11)[None, :]
    assert np.array_equal(stair.v_edges != 0, xs <= ys)
    print("b1=1, b2=0: every path climbs the staircase (deterministic sample)")
    empty = sample_cs6v(10, 10, make_field(1.0, 1.0), seed=3)
    assert not empty.v_edges.any() and not empty.h_edges.any()
    print("b1=1, b2=1: the complemented model never nucleates (empty sample)")


if __name__ == "__main__":
    main()
