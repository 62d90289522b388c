from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quadsperner.central import Verdict, classify_labels
from quadsperner.labelling import ALIAS_TO_COLOR, COLOR_TO_ALIAS
from quadsperner.oracle import (classify_2cell, classify_all_2cells_d2, cyclic_to_slots, golden_document,
                                grid_classify, load_golden, table_hash, winding_number)


@pytest.fixture(scope="module")
def golden():
    return load_golden()


def test_golden_table_matches_regeneration(golden):
    regenerated = golden_document(classify_all_2cells_d2())
    assert regenerated == golden


def test_golden_table_shape(golden):
    assert len(golden["entries"]) == 256
    assert golden["sha256"] == table_hash(golden["entries"])
    assert golden["yes_count"] == sum(v == "yes" for v in golden["entries"].values())
    assert set(golden["entries"].values()) <= {"yes", "no"}


def test_golden_marks_cyclic_four_colorings(golden):
    entries = golden["entries"]
    assert entries["1,2,3,4"] == "yes"
    assert entries["1,4,3,2"] == "yes"
    assert entries["1,3,2,4"] == "yes"
    assert entries["1,1,1,1"] == "no"
    assert entries["1,2,2,1"] == "no"


def _square_symmetries(colors):
    out = []
    seq = list(colors)
    for _ in range(4):
        seq = seq[1:] + seq[:1]
        out.append(tuple(seq))
        out.append(tuple(reversed(seq)))
    return out


def _label_symmetries(colors):
    out = []
    for flip in range(4):
        for swap in (False, True):
            mapped = []
            for c in colors:
                a = COLOR_TO_ALIAS[c] ^ flip
                if swap:
                    a = ((a & 1) << 1) | (a >> 1)
                mapped.append(ALIAS_TO_COLOR[a])
            out.append(tuple(mapped))
    return out


def test_golden_invariant_under_symmetries(golden):
    entries = golden["entries"]
    for key, verdict in entries.items():
        colors = tuple(int(c) for c in key.split(","))
        for image in _square_symmetries(colors) + _label_symmetries(colors):
            assert entries[",".join(map(str, image))] == verdict


def test_cyclic_to_slots():
    assert cyclic_to_slots((1, 2, 3, 4)) == (1, 2, 4, 3)


def test_classify_2cell_examples():
    assert classify_2cell([0, 1, 2, 3]).verdict is Verdict.YES
    assert classify_2cell([0, 0, 0, 0]).verdict is Verdict.NO
    degenerate = classify_2cell([COLOR_TO_ALIAS[c] for c in cyclic_to_slots((1, 3, 2, 4))])
    assert degenerate.verdict is Verdict.YES and degenerate.degenerate


def test_grid_classify_examples():
    assert grid_classify([0, 3], 2).witness == (F(1, 2),)
    assert grid_classify([0, 1], 2).verdict is Verdict.NO
    assert grid_classify(list(range(8)), 3).verdict is Verdict.YES
    # the witness (1/2, 1/2, 2/3) is off the dyadic lattice; the surviving boxes bracket it
    cert = grid_classify([0, 1, 2, 3, 4, 5, 6, 3], 3)
    assert cert.verdict is Verdict.UNKNOWN
    witness = (F(1, 2), F(1, 2), F(2, 3))
    assert any(all(lo <= w <= hi for (lo, hi), w in zip(box, witness)) for box in cert.boxes)
    with pytest.raises(ValueError):
        grid_classify(list(range(16)), 4)


def test_grid_agrees_with_central_on_random_3cells():
    rng = random.Random(17)
    for _ in range(12):
        labels = [rng.randrange(8) for _ in range(8)]
        grid = grid_classify(labels, 3, depth=6).verdict
        fast = classify_labels(labels, 3).verdict
        if Verdict.UNKNOWN not in (grid, fast):
            assert grid is fast


points = st.tuples(st.fractions(-3, 3, max_denominator=20), st.fractions(-3, 3, max_denominator=20))
polygons = st.lists(points, min_size=3, max_size=8)


@given(polygons, points, st.integers(0, 10))
def test_winding_invariant_under_rotation_and_subdivision(poly, point, shift):
    try:
        base = winding_number(poly, point)
    except ValueError:
        assume(False)
    shift %= len(poly)
    assert winding_number(poly[shift:] + poly[:shift], point) == base
    refined = []
    for a, b in zip(poly, poly[1:] + poly[:1]):
        refined.append(a)
        refined.append(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
    assert winding_number(refined, point) == base
    assert winding_number(poly[::-1], point) == -base


def test_winding_examples():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert winding_number(square, (F(1, 2), F(1, 2))) == 1
    assert winding_number(square[::-1], (F(1, 2), F(1, 2))) == -1
    assert winding_number(square, (2, 2)) == 0
    assert winding_number(square + square, (F(1, 3), F(1, 2))) == 2
    with pytest.raises(ValueError):
        winding_number(square, (F(1, 2), 0))
