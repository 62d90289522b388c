from __future__ import annotations

import pytest

from quadsperner.central import enumerate_central_cells
from quadsperner.complex import build_pile
from quadsperner.fixtures import figure1, figure2, holed, moebius, torus
from quadsperner.labelling import COLOR_TO_ALIAS, Labelling, random_sperner
from quadsperner.theorems import (FAIL, PASS, check_all, check_sperner_theorems, check_theorem1,
                                  check_theorem2, minimal_cells, theorem_a_class)


def test_figure1_theorems():
    lab = figure1()
    t1 = check_theorem1(lab.complex, lab)
    assert t1.passed
    assert t1.details["degree"] == 1
    assert t1.details["multiplicity"]["matches_degree"]
    sp = check_sperner_theorems(lab.complex, lab)
    assert sp.passed and sp.details["theorem_a"]
    assert [c["class"] for c in sp.details["found_cells"]] == ["edge13"]


def test_figure2_theorems():
    lab = figure2()
    t1 = check_theorem1(lab.complex, lab)
    assert t1.passed
    assert t1.details["degree"] == 2
    assert t1.details["central_cells"] >= 2
    assert t1.details["witness_on_boundary"] == []
    t2 = check_theorem2(lab.complex, lab)
    assert t2.passed and t2.details["deg_mod2"] == 0


def test_holed_instance_has_nothing_to_prove():
    lab = holed()
    t1 = check_theorem1(lab.complex, lab)
    assert t1.passed and t1.details["degree"] == 0


def test_constant_labelling():
    pile = build_pile((3, 3))
    lab = Labelling(pile, (0,) * pile.n_vertices)
    assert check_theorem1(pile, lab).passed
    assert check_theorem2(pile, lab).passed
    sp = check_sperner_theorems(pile, lab)
    assert sp.status == FAIL and not sp.details["sperner"]


def test_moebius_theorem2():
    lab = moebius()
    t2 = check_theorem2(lab.complex, lab)
    assert t2.passed
    assert t2.details["deg_mod2"] == 1 and t2.details["central_cells"] >= 1
    t1 = check_theorem1(lab.complex, lab)
    assert t1.status == FAIL and "oriented" in t1.details["error"]


def test_torus_theorems():
    lab = torus()
    doc = check_all(lab.complex, lab)
    assert doc["degree"] == 0 and doc["status"] == PASS


def test_nl_violation_fails():
    pile = build_pile((1, 1))
    lab = Labelling.from_colors(pile, [1, 3, 4, 2])
    assert check_theorem1(pile, lab).status == FAIL
    assert check_theorem2(pile, lab).status == FAIL
    assert check_all(pile, lab)["status"] == FAIL


def test_sperner_pile_2d():
    pile = build_pile((5, 4))
    lab = random_sperner(pile, 7)
    sp = check_sperner_theorems(pile, lab)
    assert sp.passed
    assert sp.details["degree"] == 1
    assert all(c["class"] != "other" for c in sp.details["found_cells"])


@pytest.mark.parametrize("dims,seed", [((2, 2, 2), 1), ((3, 2, 1), 0)])
def test_sperner_pile_3d(dims, seed):
    pile = build_pile(dims)
    lab = random_sperner(pile, seed)
    sp = check_sperner_theorems(pile, lab)
    assert sp.passed
    assert sp.details["degree"] == 1 and sp.details["central_cells"] >= 1


def test_degenerate_quad_inside_a_pile():
    pile = build_pile((3, 3))
    labels = list(random_sperner(pile, 2).labels)
    square = [(1, 1), (2, 1), (2, 2), (1, 2)]
    for point, color in zip(square, (1, 3, 2, 4)):
        labels[pile.vertex_at(point)] = COLOR_TO_ALIAS[color]
    lab = Labelling(pile, tuple(labels))
    scan = enumerate_central_cells(pile, lab)
    quad = pile.cell([pile.vertex_at(p) for p in square])
    certs = {c.vertices: cert for c, cert in scan.yes}
    assert certs[quad.vertices].degenerate
    assert quad not in [c for c, _ in minimal_cells(pile, scan.yes)]
    sp = check_sperner_theorems(pile, lab, scan=scan)
    assert sp.passed and sp.details["theorem_a"]
    assert check_theorem1(pile, lab, scan=scan).passed


def test_theorem_a_classes():
    lab = figure2()
    comp = lab.complex
    classes = {theorem_a_class(lab, c) for c, _ in enumerate_central_cells(comp, lab).yes}
    assert classes == {"edge13", "quad4"}


def test_check_all_document():
    lab = figure1()
    doc = check_all(lab.complex, lab)
    assert doc["status"] == PASS and doc["nl"] and doc["degree"] == 1 and doc["deg_mod2"] == 1
    assert {t["theorem"] for t in doc["theorems"]} == {"theorem1", "theorem2", "sperner"}
    assert len(doc["instance"]) == 64
