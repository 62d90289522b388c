"""Built-in instances.

``figure1``
    Sperner labelling of the 4 x 3 pile.  Rows from bottom to top::

        y=3:  4 3 3 4 3
        y=2:  4 4 3 3 3
        y=1:  1 1 1 2 2
        y=0:  1 2 2 1 2

    The edge between grid points (2,1) and (2,2) is the (1,3) edge.

``figure2``
    A 4 x 3 block of squares (columns c0..c4, rows r0..r3) with one square
    glued on the left at rows r1-r2 and two squares glued on the right at
    rows r1-r3.  Grid x coordinates are shifted by one so the left appendage
    sits at x = 0..1; the complex is the 6 x 3 pile with the squares at
    (x,y) = (0,0), (0,2), (5,0) removed.  Colors per grid point::

        row  x=0 x=1 x=2 x=3 x=4 x=5 x=6
        r3    .   1   4   3   2   1   2
        r2    3   2   1   1   1   1   1
        r1    3   2   1   4   1   4   1
        r0    .   1   2   3   4   1   .

    The point (x,y) = (2,3) gets color 4: color 1 there would put the
    opposite pair (1,3) on the top boundary edge.  The marked square
    [x=2..3] x [y=0..1] touches the outer contour and is a four-colored
    square (colors 2,3,4,1 around it), not a hole.  The marked edge is the
    vertical (1,3) edge at x = 3 between rows r2 and r3.

``holed``
    The 3 x 3 pile with its central square removed: one outer contour and
    one hole contour.  The pile carries a random Sperner labelling except on
    the hole corners (1,1), (2,1), (2,2), (1,2), which get colors 1, 2, 3, 4.
    The hole contour runs clockwise, so the two components cancel.

``moebius``
    Five quads in a strip closed with a half twist.  Bottom vertices
    b0..b4 are 0..4, top vertices t0..t4 are 5..9; quad i joins
    (b_i, b_{i+1}, t_{i+1}, t_i) for i < 4 and the last quad is
    (b4, t0, b0, t4).  The boundary is the single cycle b0..b4 t0..t4 with
    colors 1,2,3,4,4 then 4,4,4,4,4, so one 1-2 step occurs on it.

``torus``
    The 3 x 3 periodic grid of quads; it has no boundary.
"""
from __future__ import annotations

from .complex import CubicalComplex, build_2complex, build_pile, carve
from .labelling import COLOR_TO_ALIAS, Labelling, random_sperner

FIGURE1_ROWS = (
    (1, 2, 2, 1, 2),
    (1, 1, 1, 2, 2),
    (4, 4, 3, 3, 3),
    (4, 3, 3, 4, 3),
)
FIGURE1_EDGE = ((2, 1), (2, 2))

FIGURE2_COLORS = {
    (1, 3): 1, (2, 3): 4, (3, 3): 3, (4, 3): 2, (5, 3): 1, (6, 3): 2,
    (0, 2): 3, (1, 2): 2, (2, 2): 1, (3, 2): 1, (4, 2): 1, (5, 2): 1, (6, 2): 1,
    (0, 1): 3, (1, 1): 2, (2, 1): 1, (3, 1): 4, (4, 1): 1, (5, 1): 4, (6, 1): 1,
    (1, 0): 1, (2, 0): 2, (3, 0): 3, (4, 0): 4, (5, 0): 1,
}
FIGURE2_REMOVED = ((0, 0), (0, 2), (5, 0))
FIGURE2_EDGE = ((3, 2), (3, 3))
FIGURE2_QUAD = ((2, 0), (3, 0), (3, 1), (2, 1))

HOLE_CORNERS = ((1, 1), (2, 1), (2, 2), (1, 2))
MOEBIUS_COLORS = (1, 2, 3, 4, 4, 4, 4, 4, 4, 4)


def figure1() -> Labelling:
    pile = build_pile((4, 3))
    colors = [c for row in FIGURE1_ROWS for c in row]
    return Labelling.from_colors(pile, colors)


def figure2() -> Labelling:
    pile = build_pile((6, 3))
    removed = [x + 6 * y for x, y in FIGURE2_REMOVED]
    region = carve(pile, removed, drop_orphans=True)
    colors = [FIGURE2_COLORS[tuple(p)] for p in region.coords]
    return Labelling.from_colors(region, colors)


def holed(seed: int = 0) -> Labelling:
    pile = build_pile((3, 3))
    labels = list(random_sperner(pile, seed).labels)
    for point, color in zip(HOLE_CORNERS, (1, 2, 3, 4)):
        labels[pile.vertex_at(point)] = COLOR_TO_ALIAS[color]
    return Labelling(carve(pile, [4]), tuple(labels))


def moebius_complex() -> CubicalComplex:
    quads = [(i, i + 1, 6 + i, 5 + i) for i in range(4)]
    quads.append((4, 5, 0, 9))
    return build_2complex(quads)


def moebius() -> Labelling:
    return Labelling.from_colors(moebius_complex(), MOEBIUS_COLORS)


def torus_complex(n: int = 3) -> CubicalComplex:
    def vid(i, j):
        return (i % n) + n * (j % n)

    quads = [(vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
             for j in range(n) for i in range(n)]
    return build_2complex(quads)


def torus(n: int = 3) -> Labelling:
    """Torus labelled with colors 1..4 cycling along one direction."""
    comp = torus_complex(n)
    colors = [1 + (v % n) % 4 for v in range(comp.n_vertices)]
    return Labelling.from_colors(comp, colors)


FIXTURES = {
    "figure1": figure1,
    "figure2": figure2,
    "holed": holed,
    "moebius": moebius,
    "torus": torus,
}


def vertex_at(labelling: Labelling, point) -> int:
    return labelling.complex.vertex_at(point)
