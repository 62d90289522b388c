from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadsperner.multilinear import (MultilinearMap, box_corners, coefficients, corner_range,
                                     evaluate, evaluate_corner_average, jacobian, unit_box)


def test_coefficients_one_variable():
    assert coefficients([0, 1]) == [0, 1]


def test_coefficients_two_variables():
    assert coefficients([1, 0, 0, 1]) == [1, -1, -1, 2]


def test_coefficients_reject_bad_size():
    with pytest.raises(ValueError):
        coefficients([1, 2, 3])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_identity_labelling_has_unit_coefficients(k):
    fmap = MultilinearMap.from_labels(list(range(1 << k)), k)
    for i, row in enumerate(fmap.coeffs):
        assert row == tuple(int(w == 1 << i) for w in range(1 << k))


def test_identity_evaluates_to_itself():
    fmap = MultilinearMap.from_labels([0, 1, 2, 3], 2)
    assert evaluate(fmap, (F(1, 2), F(1, 2))) == (F(1, 2), F(1, 2))


def test_evaluation_on_degenerate_cell():
    # corners 00 -> (0,0), 10 -> (1,1), 01 -> (0,1), 11 -> (1,0)
    fmap = MultilinearMap.from_labels([0, 3, 2, 1], 2)
    point = (F(1, 2), F(1, 3))
    assert evaluate(fmap, point) == (F(1, 2), F(1, 2))
    assert evaluate_corner_average(fmap, point) == (F(1, 2), F(1, 2))


def test_jacobian_examples():
    assert jacobian(MultilinearMap.from_labels([0, 1, 2, 3], 2), (F(1, 5), F(2, 7))) == ((1, 0), (0, 1))
    fmap = MultilinearMap.from_labels([0, 3, 2, 1], 2)
    assert jacobian(fmap, (F(1, 2), F(1, 2)))[1] == (0, 0)
    assert jacobian(MultilinearMap(((0, 1),)), (F(1, 3),)) == ((1,),)


def test_corner_range_examples():
    xor = MultilinearMap(((0, 1, 1, 0),))
    assert corner_range(xor, unit_box(2)) == [(0, 1)]
    box = ((F(1, 4), F(1, 2)), (F(1, 4), F(1, 2)))
    assert corner_range(xor, box) == [(F(3, 8), F(1, 2))]
    assert corner_range(MultilinearMap.from_labels([0, 1, 2, 3], 2), unit_box(2)) == [(0, 1), (0, 1)]


def test_corner_range_rejects_box_outside_cube():
    with pytest.raises(ValueError):
        corner_range(MultilinearMap(((0, 1),)), ((F(-1, 2), F(1, 2)),))


def test_restrict_matches_evaluation():
    rng = random.Random(3)
    fmap = MultilinearMap(tuple(tuple(rng.randint(-5, 5) for _ in range(8)) for _ in range(2)))
    t = F(2, 7)
    sub = fmap.restrict(1, t)
    for x in [(F(1, 3), F(3, 4)), (F(0), F(1)), (F(5, 9), F(1, 8))]:
        assert evaluate(sub, x) == evaluate(fmap, (x[0], t, x[1]))


tables = st.integers(1, 5).flatmap(
    lambda k: st.lists(st.integers(-20, 20), min_size=1 << k, max_size=1 << k))
fractions01 = st.fractions(min_value=0, max_value=1, max_denominator=50)


@given(tables, st.data())
def test_interpolation_and_closed_form(values, data):
    k = len(values).bit_length() - 1
    fmap = MultilinearMap((tuple(values),))
    for w in range(1 << k):
        corner = tuple((w >> i) & 1 for i in range(k))
        assert evaluate(fmap, corner) == (values[w],)
    x = data.draw(st.lists(fractions01, min_size=k, max_size=k))
    assert evaluate(fmap, x) == evaluate_corner_average(fmap, x)


@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(0, 1), min_size=1 << k, max_size=1 << k)), st.data())
def test_strict_averaging(bits, data):
    k = len(bits).bit_length() - 1
    fmap = MultilinearMap((tuple(bits),))
    interior = st.fractions(min_value=F(1, 1000), max_value=F(999, 1000), max_denominator=1000)
    x = data.draw(st.lists(interior, min_size=k, max_size=k))
    (value,) = evaluate(fmap, x)
    if len(set(bits)) == 1:
        assert value == bits[0]
    else:
        assert 0 < value < 1


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(
    lambda k: st.lists(st.integers(-9, 9), min_size=1 << k, max_size=1 << k)))
def test_jacobian_matches_sympy(values):
    k = len(values).bit_length() - 1
    xs = sympy.symbols(f"x0:{k}")
    expr = 0
    for w, b in enumerate(values):
        term = b
        for i in range(k):
            term *= xs[i] if (w >> i) & 1 else 1 - xs[i]
        expr += term
    fmap = MultilinearMap((tuple(values),))
    point = tuple(F(i + 1, i + 3) for i in range(k))
    subs = {s: sympy.Rational(p.numerator, p.denominator) for s, p in zip(xs, point)}
    got = jacobian(fmap, point)[0]
    for j in range(k):
        want = sympy.diff(expr, xs[j]).subs(subs)
        assert F(int(want.p), int(want.q)) == got[j]


def test_box_corners_little_endian():
    box = ((F(0), F(1)), (F(2), F(3)))
    assert box_corners(box) == [(0, 2), (1, 2), (0, 3), (1, 3)]


def test_jacobian_matches_finite_differences():
    rng = random.Random(11)
    h = F(1, 1 << 20)
    for _ in range(50):
        k = rng.randint(1, 4)
        fmap = MultilinearMap(tuple(tuple(rng.randint(-3, 3) for _ in range(1 << k)) for _ in range(2)))
        x = [F(rng.randint(1, 99), 100) for _ in range(k)]
        jac = jacobian(fmap, x)
        for j in range(k):
            up = list(x)
            dn = list(x)
            up[j] += h
            dn[j] -= h
            fd = [(float(a) - float(b)) / float(2 * h) for a, b in zip(evaluate(fmap, up), evaluate(fmap, dn))]
            for i in range(2):
                assert abs(fd[i] - float(jac[i][j])) < 2 ** -18


def test_corner_range_dominates_grid():
    rng = random.Random(5)
    for _ in range(40):
        fmap = MultilinearMap(tuple(tuple(rng.randint(-4, 4) for _ in range(8)) for _ in range(3)))
        box = []
        for _ in range(3):
            a, b = sorted(F(rng.randint(0, 16), 16) for _ in range(2))
            box.append((a, b))
        ranges = corner_range(fmap, box)
        ticks = [[lo + (hi - lo) * F(j, 4) for j in range(5)] for lo, hi in box]
        for point in product(*ticks):
            for (lo, hi), v in zip(ranges, evaluate(fmap, point)):
                assert lo <= v <= hi
