"""Render a small SVG gallery of sampled configurations.

Writes standalone SVG files to demos/output/: ordinary and complemented
samples at a few parameter pairs, a colored multi-shell sample, and the
deterministic staircase.  The renderer is deterministic, so re-running the
script reproduces the same bytes.

Run:  python3 demos/06_svg_gallery.py
"""

import json
from pathlib import Path

from sixvertex import (
    make_coloring,
    make_field,
    sample_colored_cs6v,
    sample_cs6v,
    sample_s6v,
    write_svg,
)

OUT = Path(__file__).resolve().parent / "output"


def main() -> None:
    OUT.mkdir(exist_ok=True)
    jobs = []

    for b1, b2 in [(0.3, 0.7), (0.7, 0.3), (0.5, 0.5)]:
        field = make_field(b1, b2)
        e = sample_s6v(48, 36, field, seed=2)
        jobs.append((f"ordinary_b1_{b1}_b2_{b2}.svg", e,
                     {"model": "s6v", "b1": b1, "b2": b2, "seed": 2}))
        c = sample_cs6v(48, 36, field, seed=2)
        jobs.append((f"complemented_b1_{b1}_b2_{b2}.svg", c,
                     {"model": "cs6v", "b1": b1, "b2": b2, "seed": 2}))

    stair = sample_s6v(24, 24, make_field(1.0, 0.0), seed=0)
    jobs.append(("staircase.svg", stair,
                 {"model": "s6v", "b1": 1.0, "b2": 0.0, "seed": 0}))

    inhomog = make_field([[0.2, 0.35], [0.3, 0.25]],
                         [[0.6, 0.7], [0.65, 0.75]])
    scheme = make_coloring(1, 1, inhomog)
    colored = sample_colored_cs6v(10, scheme, inhomog, seed=6)
    jobs.append(("colored_shells.svg", colored,
                 {"model": "colored", "shells": 10, "seed": 6}))

    for name, e, meta in jobs:
        path = OUT / name
        write_svg(e, path, comment=json.dumps(meta, sort_keys=True))
        print(f"  wrote {path.relative_to(OUT.parent.parent)} "
              f"({path.stat().st_size} bytes, {e.width}x{e.height}, "
              f"{e.n_colors} color(s))")

    print()
    print(f"Open the files under {OUT} in a browser to view them.")


if __name__ == "__main__":
    main()
