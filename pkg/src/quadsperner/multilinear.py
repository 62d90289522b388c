"""Exact multilinear extension of vertex data on the unit cube C^k.

Corners of C^k are indexed little-endian: corner ``w`` has coordinate ``i``
equal to bit ``i`` of ``w``.  The same index names the monomial
``x^w = prod_{i in w} x_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

Rational = Fraction
Point = tuple  # tuple of Fractions
Box = tuple  # tuple of (lo, hi) pairs


def corner_bits(w: int, k: int) -> tuple[int, ...]:
    return tuple((w >> i) & 1 for i in range(k))


def _dimension_of(n: int) -> int:
    k = n.bit_length() - 1
    if n < 1 or (1 << k) != n:
        raise ValueError(f"table size {n} is not a power of two")
    return k


def coefficients(values: Sequence) -> list[Fraction]:
    """Monomial coefficients a_w of the multilinear function with corner values b.

    Uses the closed form ``a_w = sum_{u <= w} (-1)^{h(u, w)} b_u``, the sum
    running over the submasks ``u`` of ``w`` with ``h`` the Hamming distance.
    """
    n = len(values)
    _dimension_of(n)
    out = []
    for w in range(n):
        total = Fraction(0)
        u = w
        while True:
            if bin(w ^ u).count("1") & 1:
                total -= values[u]
            else:
                total += values[u]
            if u == 0:
                break
            u = (u - 1) & w
        out.append(total)
    return out


def _monomials(x: Sequence) -> list:
    k = len(x)
    mono = [Fraction(1)] * (1 << k)
    for w in range(1, 1 << k):
        low = (w & -w).bit_length() - 1
        mono[w] = mono[w & (w - 1)] * x[low]
    return mono


@dataclass(frozen=True)
class MultilinearMap:
    """Multilinear map C^k -> R^d given by its corner values.

    ``values[i][w]`` is output coordinate ``i`` at corner ``w``.
    """

    values: tuple[tuple[Fraction, ...], ...]
    coeffs: tuple[tuple[Fraction, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vals = tuple(tuple(Fraction(v) for v in row) for row in self.values)
        if not vals:
            raise ValueError("map needs at least one output coordinate")
        sizes = {len(row) for row in vals}
        if len(sizes) != 1:
            raise ValueError("output coordinates disagree on table size")
        _dimension_of(sizes.pop())
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "coeffs", tuple(tuple(coefficients(row)) for row in vals))

    @property
    def k(self) -> int:
        return len(self.values[0]).bit_length() - 1

    @property
    def d(self) -> int:
        return len(self.values)

    @classmethod
    def from_labels(cls, labels: Sequence[int], d: int) -> "MultilinearMap":
        """Map whose corner ``w`` goes to the cube vertex with integer alias ``labels[w]``."""
        return cls(tuple(tuple((lab >> i) & 1 for lab in labels) for i in range(d)))

    def shifted(self, target: Sequence) -> "MultilinearMap":
        """The map ``f - target``."""
        return MultilinearMap(
            tuple(tuple(v - Fraction(t) for v in row) for row, t in zip(self.values, target))
        )

    def restrict(self, axis: int, t) -> "MultilinearMap":
        """Restriction to the slice ``x_axis = t``, as a map of the other k-1 variables."""
        t = Fraction(t)
        k = self.k
        if not 0 <= axis < k:
            raise ValueError(f"axis {axis} out of range for k={k}")
        low_mask = (1 << axis) - 1
        rows = []
        for row in self.values:
            new = []
            for w in range(1 << (k - 1)):
                base = (w & low_mask) | ((w & ~low_mask) << 1)
                new.append((1 - t) * row[base] + t * row[base | (1 << axis)])
            rows.append(tuple(new))
        return MultilinearMap(tuple(rows))

    def select(self, outputs: Sequence[int]) -> "MultilinearMap":
        return MultilinearMap(tuple(self.values[i] for i in outputs))

    def constant_outputs(self) -> list[int]:
        """Output coordinates whose corner values are all equal."""
        return [i for i, row in enumerate(self.values) if len(set(row)) == 1]


def evaluate(fmap: MultilinearMap, x: Sequence) -> Point:
    """Exact value ``sum_w a_w x^w`` of every output coordinate."""
    if len(x) != fmap.k:
        raise ValueError(f"point has {len(x)} coordinates, map expects {fmap.k}")
    mono = _monomials([Fraction(v) for v in x])
    return tuple(sum((a * m for a, m in zip(row, mono) if a), Fraction(0)) for row in fmap.coeffs)


def evaluate_corner_average(fmap: MultilinearMap, x: Sequence) -> Point:
    """Value as the weighted corner average ``sum_w b_w prod x_i^{w_i} (1-x_i)^{1-w_i}``."""
    k = fmap.k
    x = [Fraction(v) for v in x]
    weights = []
    for w in range(1 << k):
        weight = Fraction(1)
        for i in range(k):
            weight *= x[i] if (w >> i) & 1 else 1 - x[i]
        weights.append(weight)
    return tuple(sum((b * wt for b, wt in zip(row, weights)), Fraction(0)) for row in fmap.values)


def jacobian(fmap: MultilinearMap, x: Sequence) -> tuple[tuple[Fraction, ...], ...]:
    """Exact d x k matrix of partial derivatives at ``x``."""
    k = fmap.k
    if len(x) != k:
        raise ValueError(f"point has {len(x)} coordinates, map expects {k}")
    mono = _monomials([Fraction(v) for v in x])
    rows = []
    for row in fmap.coeffs:
        grad = []
        for j in range(k):
            bit = 1 << j
            grad.append(sum((row[w] * mono[w ^ bit] for w in range(1 << k) if w & bit and row[w]),
                            Fraction(0)))
        rows.append(tuple(grad))
    return tuple(rows)


def box_corners(box: Box) -> list[Point]:
    """Corners of a box, little-endian like the cube corners."""
    k = len(box)
    return [tuple(box[i][(w >> i) & 1] for i in range(k)) for w in range(1 << k)]


def corner_range(fmap: MultilinearMap, box: Box) -> list[tuple[Fraction, Fraction]]:
    """Exact (min, max) of each output over ``box``.

    A multilinear function restricted to a box is multilinear in box
    coordinates, so its extremes sit at box corners.
    """
    if len(box) != fmap.k:
        raise ValueError("box dimension does not match map")
    for lo, hi in box:
        if not (0 <= lo <= hi <= 1):
            raise ValueError(f"box side [{lo}, {hi}] is not inside [0, 1]")
    vals = [evaluate(fmap, c) for c in box_corners(box)]
    return [(min(v[i] for v in vals), max(v[i] for v in vals)) for i in range(fmap.d)]


def unit_box(k: int) -> Box:
    return tuple((Fraction(0), Fraction(1)) for _ in range(k))


def grid_points(k: int, n: int):
    """All points ``(j_1/n, ..., j_k/n)`` with ``0 <= j_i <= n``."""
    ticks = [Fraction(j, n) for j in range(n + 1)]
    return product(ticks, repeat=k)
