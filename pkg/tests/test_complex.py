from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadsperner.complex import (ComplexError, CubicalComplex, build_2complex, build_pile, carve,
                                 relative_orientation)
from quadsperner.fixtures import figure2, holed, moebius_complex, torus_complex


def test_pile_4x3_counts():
    pile = build_pile((4, 3))
    assert pile.f_vector() == (20, 31, 12)
    assert pile.euler_characteristic() == 1


def test_pile_unit_square():
    pile = build_pile((1, 1))
    assert pile.n_vertices == 4
    assert pile.f_vector() == (4, 4, 1)


def test_pile_2x2x2_boundary():
    pile = build_pile((2, 2, 2))
    assert pile.n_vertices == 27
    assert len(pile.top_cells) == 8
    assert len(pile.boundary_facets) == 24
    assert len(pile.boundary()) == 1


def test_unit_cube_boundary_is_one_component():
    (comp,) = build_pile((1, 1, 1)).boundary()
    assert len(comp.facets) == 6


def test_pile_boundary_cycle_is_counterclockwise():
    pile = build_pile((4, 3))
    (comp,) = pile.boundary()
    assert len(comp.cycle) == 14
    pts = [pile.coords[v] for v in comp.cycle]
    area2 = sum(a[0] * b[1] - b[0] * a[1] for a, b in zip(pts, pts[1:] + pts[:1]))
    assert area2 == 2 * 12


@pytest.mark.parametrize("dims", [(1,), (3,), (2, 5), (3, 1, 2), (1, 1, 1, 1)])
def test_pile_euler_characteristic_is_one(dims):
    assert build_pile(dims).euler_characteristic() == 1


def test_pile_rejects_bad_extents():
    with pytest.raises(ComplexError):
        build_pile((0, 3))
    with pytest.raises(ComplexError):
        build_pile(())


def test_carve_empty_is_identity():
    pile = build_pile((2, 1))
    assert carve(pile, []) is pile
    assert carve(pile, set()).to_dict() == pile.to_dict()


def test_carve_everything_fails():
    with pytest.raises(ComplexError, match="empty"):
        carve(build_pile((2, 2)), range(4))


def test_carve_dangling_vertices_fail():
    with pytest.raises(ComplexError, match="dangling"):
        carve(build_pile((2, 1)), [0])


def test_carve_pinch_fails():
    # removing two diagonal squares of a 2x2 pile leaves squares meeting at a point
    with pytest.raises(ComplexError):
        carve(build_pile((2, 2)), [1, 2])


def test_carve_out_of_range():
    with pytest.raises(ComplexError):
        carve(build_pile((2, 2)), [7])


def test_carve_drop_orphans_renumbers():
    comp = carve(build_pile((2, 1)), [0], drop_orphans=True)
    assert comp.n_vertices == 4
    assert sorted(comp.coords) == [(1, 0), (1, 1), (2, 0), (2, 1)]


def test_holed_pile_has_two_boundary_components():
    comps = holed().complex.boundary()
    assert sorted(len(c.cycle) for c in comps) == [4, 12]


def test_figure2_region():
    comp = figure2().complex
    assert comp.f_vector()[2] == 15
    assert len(comp.boundary()) == 1


def test_single_quad():
    comp = build_2complex([(0, 1, 2, 3)])
    assert comp.orientable
    (b,) = comp.boundary()
    assert len(b.cycle) == 4


def test_moebius_strip():
    comp = moebius_complex()
    assert not comp.orientable
    (b,) = comp.boundary()
    assert len(b.cycle) == 10
    assert comp.euler_characteristic() == 0


def test_torus_has_no_boundary():
    comp = torus_complex(3)
    assert comp.orientable
    assert comp.boundary() == []
    assert comp.euler_characteristic() == 0


def test_build_2complex_errors():
    with pytest.raises(ComplexError, match="repeats"):
        build_2complex([(0, 1, 1, 2)])
    with pytest.raises(ComplexError, match="shared"):
        build_2complex([(0, 1, 2, 3), (1, 0, 4, 5), (0, 1, 6, 7)])


def _abstract_quads(pile):
    return [(t[0], t[1], t[3], t[2]) for t in pile.top_cells]


def test_abstract_pile_matches_build_pile_up_to_relabelling():
    pile = build_pile((2, 2))
    rng = random.Random(0)
    perm = list(range(pile.n_vertices))
    rng.shuffle(perm)
    quads = [tuple(perm[v] for v in q) for q in _abstract_quads(pile)]
    comp = build_2complex(quads)
    assert comp.orientable
    assert comp.f_vector() == pile.f_vector()
    faces = {frozenset(perm[v] for v in c.vertices) for c in pile.all_cells()}
    assert faces == {c.vertices for c in comp.all_cells()}
    (b1,), (b2,) = pile.boundary(), comp.boundary()
    assert {frozenset(perm[v] for v in b1.cycle)} == {frozenset(b2.cycle)}


def test_orientation_reversal_reverses_cycles():
    pile = build_pile((3, 2))
    flipped = CubicalComplex(2, pile.n_vertices, pile.top_cells, [-1] * len(pile.top_cells), pile.coords)
    (a,), (b,) = pile.boundary(), flipped.boundary()
    start = a.cycle.index(b.cycle[0])
    rotated = a.cycle[start:] + a.cycle[:start]
    assert b.cycle == (rotated[0],) + tuple(reversed(rotated[1:]))
    for fa, fb in zip(sorted(pile.boundary_facets, key=lambda f: sorted(f.cell.slots)),
                      sorted(flipped.boundary_facets, key=lambda f: sorted(f.cell.slots))):
        assert fa.sign == -fb.sign


def test_inconsistent_orientation_rejected():
    pile = build_pile((2, 1))
    with pytest.raises(ComplexError, match="orientation"):
        CubicalComplex(2, pile.n_vertices, pile.top_cells, [1, -1], pile.coords)


def test_relative_orientation_of_square_symmetries():
    base = (0, 1, 2, 3)
    assert relative_orientation(base, base) == 1
    assert relative_orientation((0, 2, 1, 3), base) == -1
    assert relative_orientation((1, 0, 3, 2), base) == -1
    assert relative_orientation((3, 2, 1, 0), base) == 1
    with pytest.raises(ComplexError):
        relative_orientation((0, 3, 1, 2), base)


dims_strategy = st.lists(st.integers(1, 3), min_size=1, max_size=3)


@given(dims_strategy)
def test_ridge_count_invariant(dims):
    pile = build_pile(dims)
    total = sum(2 - len(adj) for adj in pile.incidence.values())
    assert total == len(pile.boundary_facets)


@given(dims_strategy)
def test_faces_are_closed_under_taking_faces(dims):
    pile = build_pile(dims)
    for cell in pile.all_cells():
        if cell.dim == 0:
            continue
        for v in cell.slots:
            assert pile.has_cell([v])
        for axis in range(cell.dim):
            axes = [a for a in range(cell.dim) if a != axis]
            for value in (0, 1):
                sub = [cell.slots[w] for w in range(1 << cell.dim) if ((w >> axis) & 1) == value]
                assert pile.has_cell(sub)
                assert pile.cell(sub).dim == len(axes)


@given(dims_strategy)
def test_pile_f_vector_formula(dims):
    from itertools import combinations
    from math import prod

    pile = build_pile(dims)
    d = len(dims)
    for k in range(d + 1):
        expected = 0
        for axes in combinations(range(d), k):
            expected += prod(n if i in axes else n + 1 for i, n in enumerate(dims))
        assert pile.f_vector()[k] == expected


def test_json_round_trip():
    for comp in (build_pile((3, 2)), moebius_complex(), figure2().complex, build_pile((1, 2, 1))):
        doc = json.loads(json.dumps(comp.to_dict()))
        assert CubicalComplex.from_dict(doc) == comp


def test_from_dict_missing_field():
    with pytest.raises(ComplexError):
        CubicalComplex.from_dict({"dim": 2})


def test_vertex_at_and_corner_tags():
    pile = build_pile((4, 3))
    assert pile.vertex_at((0, 0)) == 0
    assert pile.vertex_at((4, 3)) == 19
    tags = pile.corner_tags()
    assert tags == {0: 0, 4: 1, 15: 2, 19: 3}


def test_boundary_cells():
    pile = build_pile((2, 2))
    center = pile.vertex_at((1, 1))
    assert not pile.is_boundary_cell(pile.cell([center]))
    assert pile.is_boundary_cell(pile.cell([0, 1]))
    assert not pile.is_boundary_cell(pile.cell([1, center]))
