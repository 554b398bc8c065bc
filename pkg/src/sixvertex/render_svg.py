"""SVG rendering of path ensembles.

Lines of each color are drawn as unit segments between vertex centers, with
a small per-color perpendicular offset so co-traveling lines of different
colors stay visible side by side.  Boundary entries and top/right exits are
drawn as half-length stubs.  Output is deterministic byte for byte.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .lattice import PathEnsemble

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def ensemble_svg(e: PathEnsemble, cell: int = 24, margin: int = 16,
                 offset: float = 2.5, comment: str | None = None) -> str:
    """Render an ensemble to an SVG string."""
    w_px = 2 * margin + (e.width + 1) * cell
    h_px = 2 * margin + (e.height + 1) * cell

    def X(x: float) -> float:
        return margin + x * cell

    def Y(y: float) -> float:
        return h_px - margin - y * cell

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": str(w_px), "height": str(h_px),
        "viewBox": f"0 0 {w_px} {h_px}",
    })
    if comment is not None:
        svg.append(ET.Comment(comment.replace("--", "- -")))
    ET.SubElement(svg, "rect", {
        "x": "0", "y": "0", "width": str(w_px), "height": str(h_px),
        "fill": "white",
    })
    # vertex dots
    dots = ET.SubElement(svg, "g", {"fill": "#cccccc"})
    for x in range(1, e.width + 1):
        for y in range(1, e.height + 1):
            ET.SubElement(dots, "circle", {
                "cx": _fmt(X(x)), "cy": _fmt(Y(y)), "r": "1.5",
            })
    for c in range(1, e.n_colors + 1):
        color = PALETTE[(c - 1) % len(PALETTE)]
        d = (c - (e.n_colors + 1) / 2.0) * offset
        g = ET.SubElement(svg, "g", {
            "stroke": color, "stroke-width": "2", "stroke-linecap": "round",
        })

        def seg(x0, y0, x1, y1):
            ET.SubElement(g, "line", {
                "x1": _fmt(X(x0)), "y1": _fmt(Y(y0)),
                "x2": _fmt(X(x1)), "y2": _fmt(Y(y1)),
            })

        bit = c - 1
        dx = d / cell  # offsets in lattice units
        for x in range(1, e.width + 1):
            for y in range(1, e.height + 1):
                if (int(e.v_edges[x - 1, y - 1]) >> bit) & 1:
                    top = y + 1 if y < e.height else y + 0.5
                    seg(x + dx, y, x + dx, top)
                if (int(e.h_edges[x - 1, y - 1]) >> bit) & 1:
                    right = x + 1 if x < e.width else x + 0.5
                    seg(x, y + dx, right, y + dx)
        for y in range(1, e.height + 1):
            if (int(e.boundary_left[y - 1]) >> bit) & 1:
                seg(0.5, y + dx, 1, y + dx)
        for x in range(1, e.width + 1):
            if (int(e.boundary_bottom[x - 1]) >> bit) & 1:
                seg(x + dx, 0.5, x + dx, 1)
    return ET.tostring(svg, encoding="unicode")


def write_svg(e: PathEnsemble, path, **kwargs) -> None:
    with open(path, "w") as f:
        f.write(ensemble_svg(e, **kwargs))
