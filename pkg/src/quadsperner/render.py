"""SVG drawings of labelled planar complexes."""
from __future__ import annotations

import xml.etree.ElementTree as ET

from .central import CentralScan
from .complex import ComplexError
from .labelling import Labelling

PALETTE = {1: "#d62728", 2: "#1f77b4", 3: "#2ca02c", 4: "#ff7f0e"}
UNIT = 60
MARGIN = 40


def hole_squares(labelling: Labelling) -> list[tuple[int, int]]:
    """Unit squares missing from the complex although all four sides are present."""
    comp = labelling.complex
    present = {tuple(sorted(comp.coords[v] for v in c.slots)) for c in comp.cells(1)}
    squares = {tuple(sorted(comp.coords[v] for v in c.slots)) for c in comp.cells(2)}
    xs = [p[0] for p in comp.coords]
    ys = [p[1] for p in comp.coords]
    holes = []
    for x in range(min(xs), max(xs)):
        for y in range(min(ys), max(ys)):
            corners = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
            if tuple(sorted(corners)) in squares:
                continue
            sides = [((x, y), (x + 1, y)), ((x, y + 1), (x + 1, y + 1)), ((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1))]
            if all(tuple(sorted(s)) in present for s in sides):
                holes.append((x, y))
    return holes


def render_svg(labelling: Labelling, scan: CentralScan | None = None) -> str:
    comp = labelling.complex
    if comp.dim != 2 or comp.coords is None:
        raise ComplexError("rendering needs a two-dimensional complex with integer coordinates")
    colors = labelling.colors()
    xs = [p[0] for p in comp.coords]
    ys = [p[1] for p in comp.coords]
    x0, y1 = min(xs), max(ys)
    width = (max(xs) - x0) * UNIT + 2 * MARGIN
    height = (y1 - min(ys)) * UNIT + 2 * MARGIN

    def pos(v):
        x, y = comp.coords[v]
        return MARGIN + (x - x0) * UNIT, MARGIN + (y1 - y) * UNIT

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                     width=str(width), height=str(height))
    defs = ET.SubElement(svg, "defs")
    pattern = ET.SubElement(defs, "pattern", id="hatch", width="8", height="8",
                            patternUnits="userSpaceOnUse", patternTransform="rotate(45)")
    ET.SubElement(pattern, "line", x1="0", y1="0", x2="0", y2="8", stroke="#555", **{"stroke-width": "2"})

    central = scan.yes if scan is not None else []
    for cell, _ in central:
        if cell.dim == 2 and len({colors[v] for v in cell.slots}) == 4:
            a, b, c, d = (pos(v) for v in (cell.slots[0], cell.slots[1], cell.slots[3], cell.slots[2]))
            ET.SubElement(svg, "polygon", points=" ".join(f"{x},{y}" for x, y in (a, b, c, d)),
                          fill="#cccccc", **{"class": "central-quad"})
    for hx, hy in hole_squares(labelling):
        px, py = MARGIN + (hx - x0) * UNIT, MARGIN + (y1 - hy - 1) * UNIT
        ET.SubElement(svg, "rect", x=str(px), y=str(py), width=str(UNIT), height=str(UNIT),
                      fill="url(#hatch)", **{"class": "hole"})
    bold = {c.vertices for c, _ in central if c.dim == 1}
    for edge in comp.cells(1):
        (ax, ay), (bx, by) = pos(edge.slots[0]), pos(edge.slots[1])
        thick = edge.vertices in bold
        ET.SubElement(svg, "line", x1=str(ax), y1=str(ay), x2=str(bx), y2=str(by), stroke="black",
                      **{"stroke-width": "5" if thick else "1", "class": "central-edge" if thick else "edge"})
    for v in range(comp.n_vertices):
        x, y = pos(v)
        ET.SubElement(svg, "circle", cx=str(x), cy=str(y), r="9", fill=PALETTE[colors[v]], stroke="black")
        label = ET.SubElement(svg, "text", x=str(x), y=str(y + 4), fill="white",
                              **{"text-anchor": "middle", "font-size": "11", "font-family": "sans-serif"})
        label.text = str(colors[v])
    return ET.tostring(svg, encoding="unicode")
