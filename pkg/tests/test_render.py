from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from quadsperner.central import enumerate_central_cells
from quadsperner.complex import ComplexError, build_pile
from quadsperner.fixtures import figure1, figure2, holed
from quadsperner.labelling import random_sperner
from quadsperner.render import hole_squares, render_svg

NS = "{http://www.w3.org/2000/svg}"


def _parse(lab):
    scan = enumerate_central_cells(lab.complex, lab)
    return ET.fromstring(render_svg(lab, scan)), scan


def _classes(root, tag):
    return [el.get("class") for el in root.iter(NS + tag)]


def test_figure1_svg():
    lab = figure1()
    root, _ = _parse(lab)
    assert len(list(root.iter(NS + "circle"))) == 20
    assert _classes(root, "line").count("central-edge") == 1
    assert "central-quad" not in _classes(root, "polygon")
    texts = sorted(t.text for t in root.iter(NS + "text"))
    assert texts == sorted(str(c) for c in lab.colors())


def test_figure2_svg_marks_quad_and_edge():
    root, _ = _parse(figure2())
    assert _classes(root, "polygon").count("central-quad") == 1
    assert _classes(root, "line").count("central-edge") >= 1
    assert "hole" not in _classes(root, "rect")


def test_holed_svg_hatches_the_hole():
    lab = holed()
    assert hole_squares(lab) == [(1, 1)]
    root, _ = _parse(lab)
    assert _classes(root, "rect").count("hole") == 1


def test_render_without_scan():
    lab = random_sperner(build_pile((2, 2)), 0)
    root = ET.fromstring(render_svg(lab))
    assert "central-edge" not in _classes(root, "line")


def test_render_requires_planar_coordinates():
    lab = random_sperner(build_pile((1, 1, 1)), 0)
    with pytest.raises(ComplexError):
        render_svg(lab)
