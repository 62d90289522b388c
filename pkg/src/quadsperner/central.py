"""Deciding whether a cell is centrally labelled.

A cell is centrally labelled when the multilinear extension of its labels
hits the cube center z = (1/2, ..., 1/2) at a point of the open cell.  The
decision is layered: a pinned output coordinate rules the cell out, edges
need antipodal labels, 2-cells are settled by exact elimination, and cells of
dimension 3 or more get rational witness search, certified root isolation
and, as a last resort, a degree argument.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .complex import Cell, CubicalComplex, face_slots
from .labelling import Labelling, antipodal, constant_coordinate_mask
from .multilinear import Box, MultilinearMap, coefficients, evaluate, unit_box
from .preimages import NonGenericValue, isolate_roots, refine_root, search

HALF = Fraction(1, 2)
DEFAULT_DEPTH = 12
MAX_UNRESOLVED = 64
SLICE_TICKS = (HALF, Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4))


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class CentralCertificate:
    verdict: Verdict
    witness: tuple[Fraction, ...] | None = None
    degenerate: bool | None = None
    local_degree: int | None = None
    method: str = ""
    boxes: list[Box] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "degenerate": self.degenerate,
            "local_degree": self.local_degree,
            "method": self.method,
            "boxes": [[[str(lo), str(hi)] for lo, hi in b] for b in self.boxes],
        }


# -- bilinear systems on the open unit square ---------------------------------

def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_rem(a, b):
    a = _poly_trim(a)
    while len(a) >= len(b):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        a = _poly_sub(a, [Fraction(0)] * shift + [factor * c for c in b])
    return a


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    return [c / a[-1] for c in a] if a else []


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass
class BilinearFiber:
    """Interior solutions of a bilinear system on the open unit square.

    ``points`` are rational solutions, ``infinite`` flags a curve of
    solutions (``points`` then holds a witness on it) and
    ``irrational`` counts interior solutions with quadratic-irrational
    coordinates.
    """

    points: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    infinite: bool = False
    irrational: int = 0

    @property
    def empty(self) -> bool:
        return not self.points and not self.irrational


def _inside(x: Fraction) -> bool:
    return 0 < x < 1


def _surd_sign(p: Fraction, q: Fraction, disc: Fraction) -> int:
    """Sign of p + q*sqrt(disc), disc > 0 not a rational square."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or sp == sq:
        return sp or sq
    if sp == 0:
        return sq
    return sp if p * p > q * q * disc else sq


def _solve_on_vertical(eqs, x0: Fraction) -> BilinearFiber:
    """Solutions on the line x = x0 (already known to solve the pivot)."""
    fiber = BilinearFiber()
    y_value = None
    for c0, c1, c2, c3 in eqs:
        a = c0 + c1 * x0
        b = c2 + c3 * x0
        if b == 0:
            if a != 0:
                return fiber
            continue
        y = -a / b
        if y_value is None:
            y_value = y
        elif y != y_value:
            return fiber
    if y_value is None:
        fiber.infinite = True
        fiber.points.append((x0, HALF))
    elif _inside(y_value):
        fiber.points.append((x0, y_value))
    return fiber


def solve_bilinear(eqs: Sequence[Sequence]) -> BilinearFiber:
    """Interior solutions of ``c0 + c1 x + c2 y + c3 x y = 0`` for every equation.

    Each equation is given as its little-endian coefficient table
    ``(c0, c1, c2, c3)``.  The pivot equation is solved for y, which leaves
    a possible vertical line plus the graph of a Moebius function of x; the
    remaining equations restricted to the graph are quadratics in x whose
    common roots are the isolated solutions.
    """
    eqs = [tuple(Fraction(c) for c in e) for e in eqs]
    eqs = [e for e in eqs if any(e)]
    if any(e[1] == e[2] == e[3] == 0 for e in eqs):
        return BilinearFiber()
    if not eqs:
        return BilinearFiber([(HALF, HALF)], infinite=True)
    pivot = next((e for e in eqs if e[2] or e[3]), None)
    if pivot is None:
        roots = {-e[0] / e[1] for e in eqs}
        if len(roots) != 1:
            return BilinearFiber()
        x0 = roots.pop()
        if not _inside(x0):
            return BilinearFiber()
        return BilinearFiber([(x0, HALF)], infinite=True)
    p0, p1, p2, p3 = pivot
    others = [e for e in eqs if e is not pivot]
    fiber = BilinearFiber()
    pole = None
    if p3 != 0:
        pole = -p2 / p3
        if p0 + p1 * pole == 0 and _inside(pole):
            line = _solve_on_vertical(others, pole)
            fiber.points.extend(line.points)
            fiber.infinite = line.infinite

    def r(x):
        return -(p0 + p1 * x) / (p2 + p3 * x)

    num = [p0, p1]
    den = [p2, p3]
    residuals = []
    for c0, c1, c2, c3 in others:
        residuals.append(_poly_sub(_poly_mul([c0, c1], den), _poly_mul([c2, c3], num)))
    residuals = [q for q in residuals if q]
    if not residuals:
        # the whole graph solves the system: look for an interior stretch
        breaks = {Fraction(0), Fraction(1)}
        for a, b in ((p0, p1), (p0 + p2, p1 + p3), (p2, p3)):
            if b != 0:
                x = -a / b
                if 0 < x < 1:
                    breaks.add(x)
        breaks = sorted(breaks)
        for lo, hi in zip(breaks, breaks[1:]):
            x = (lo + hi) / 2
            if p2 + p3 * x == 0:
                continue
            y = r(x)
            if _inside(y):
                fiber.infinite = True
                fiber.points.insert(0, (x, y))
                break
        return fiber
    common = residuals[0]
    for q in residuals[1:]:
        common = _poly_gcd(common, q)
        if len(common) <= 1:
            return fiber
    common = _poly_trim(common)
    if len(common) <= 1:
        return fiber
    candidates = []
    surds = []
    if len(common) == 2:
        candidates.append(-common[0] / common[1])
    else:
        c, b, a = common
        disc = b * b - 4 * a * c
        if disc >= 0:
            root = _rational_sqrt(disc)
            if root is not None:
                candidates.extend({(-b + root) / (2 * a), (-b - root) / (2 * a)})
            else:
                surds.extend([(-b / (2 * a), 1 / (2 * a), disc), (-b / (2 * a), -1 / (2 * a), disc)])
    for x in sorted(candidates):
        if not _inside(x) or p2 + p3 * x == 0:
            continue
        y = r(x)
        if _inside(y) and (x, y) not in fiber.points:
            fiber.points.append((x, y))
    for u, v, disc in surds:
        # x = u + v sqrt(disc); test 0 < x < 1 and 0 < r(x) < 1 exactly
        def lin(a, b):
            return a + b * u, b * v

        def times(m, n):
            return m[0] * n[0] + m[1] * n[1] * disc, m[0] * n[1] + m[1] * n[0]

        x_pos = _surd_sign(u, v, disc) > 0
        x_lt1 = _surd_sign(u - 1, v, disc) < 0
        den_x = lin(p2, p3)
        y_pos = _surd_sign(*times(lin(p0, p1), den_x), disc) < 0
        y_lt1 = _surd_sign(*times(lin(p0 + p2, p1 + p3), den_x), disc) > 0
        if x_pos and x_lt1 and y_pos and y_lt1:
            fiber.irrational += 1
    return fiber


def _bilinear_equations(fmap: MultilinearMap, target: Sequence) -> list[tuple]:
    eqs = []
    for row, t in zip(fmap.coeffs, target):
        eqs.append((row[0] - t, row[1], row[2], row[3]))
    return eqs


# -- cell decision ------------------------------------------------------------

def _cell_map(cell_labels: Sequence[int], d: int) -> MultilinearMap:
    return MultilinearMap.from_labels(cell_labels, d)


def classify_labels(cell_labels: Sequence[int], d: int, depth: int = DEFAULT_DEPTH,
                    max_boxes: int = 20_000) -> CentralCertificate:
    """Decide centrality for a cell whose slots carry ``cell_labels``."""
    n = len(cell_labels)
    k = n.bit_length() - 1
    if n != 1 << k or k < 1:
        raise ValueError(f"a cell of positive dimension has 2^k slots, got {n}")
    if k > d:
        raise ValueError(f"cell dimension {k} exceeds label dimension {d}")
    if constant_coordinate_mask(cell_labels, d):
        return CentralCertificate(Verdict.NO, degenerate=False, method="constant-coordinate")
    if k == 1:
        if antipodal(cell_labels[0], cell_labels[1], d):
            return CentralCertificate(Verdict.YES, (HALF,), degenerate=False, method="antipodal")
        return CentralCertificate(Verdict.NO, degenerate=False, method="antipodal")
    fmap = _cell_map(cell_labels, d)
    if k == 2:
        fiber = solve_bilinear(_bilinear_equations(fmap, [HALF] * d))
        if fiber.points:
            return CentralCertificate(Verdict.YES, fiber.points[0], degenerate=fiber.infinite,
                                      method="elimination")
        if fiber.irrational:
            return CentralCertificate(Verdict.YES, None, degenerate=False, method="elimination")
        return CentralCertificate(Verdict.NO, degenerate=False, method="elimination")
    return _classify_high(fmap, depth, max_boxes)


def _reconstruct(fmap: MultilinearMap, target, approx: Sequence[float]):
    for bound in (8, 64, 512, 4096, 1 << 16, 1 << 20):
        cand = tuple(Fraction(x).limit_denominator(bound) for x in approx)
        if all(_inside(c) for c in cand) and evaluate(fmap, cand) == tuple(target):
            return cand
    return None


def _slice_witnesses(fmap: MultilinearMap, target, limit: int):
    """Rational interior solutions found on 2-dimensional slices solved exactly.

    Each slice fixes one axis at a tick value and, beyond k = 3, every other
    axis except the last two free ones at 1/2.
    """
    k = fmap.k
    witnesses = []
    infinite = False
    irrational = False
    for axis in range(k):
        for t in SLICE_TICKS:
            fixed = {axis: t}
            free = [i for i in range(k) if i != axis]
            for i in free[:-2]:
                fixed[i] = HALF
            sub = fmap
            for i in sorted(fixed, reverse=True):
                sub = sub.restrict(i, fixed[i])
            fiber = solve_bilinear(_bilinear_equations(sub, target))
            infinite |= fiber.infinite
            irrational |= bool(fiber.irrational)
            for p in fiber.points:
                it = iter(p)
                full = tuple(fixed[i] if i in fixed else next(it) for i in range(k))
                if full not in witnesses:
                    witnesses.append(full)
            if len(witnesses) > limit:
                return witnesses, infinite, irrational
    return witnesses, infinite, irrational


def _boundary_roots(fmap: MultilinearMap, target) -> tuple[list[tuple], bool]:
    """Exact isolated solutions on the edges and 2-faces of the cube, plus a curve flag."""
    from itertools import combinations, product as iproduct

    k = fmap.k
    roots: list[tuple] = []
    curve = False
    for free_dim in (1, 2):
        if free_dim >= k:
            continue
        for free in combinations(range(k), free_dim):
            fixed_axes = [i for i in range(k) if i not in free]
            for values in iproduct((0, 1), repeat=len(fixed_axes)):
                sub = fmap
                for axis, v in sorted(zip(fixed_axes, values), reverse=True):
                    sub = sub.restrict(axis, v)
                if free_dim == 1:
                    eqs = [(row[0] - t, row[1] - row[0]) for row, t in zip(sub.values, target)]
                    sols = {-a / b for a, b in eqs if b}
                    if any(b == 0 and a != 0 for a, b in eqs) or len(sols) != 1:
                        continue
                    points = [(sols.pop(),)]
                    points = [p for p in points if _inside(p[0])]
                else:
                    fiber = solve_bilinear(_bilinear_equations(sub, target))
                    curve |= fiber.infinite
                    points = [] if fiber.infinite else fiber.points
                for pt in points:
                    it = iter(pt)
                    fixed = dict(zip(fixed_axes, values))
                    full = tuple(Fraction(fixed[i]) if i in fixed else next(it) for i in range(k))
                    roots.append(full)
    return roots, curve


def _classify_high(fmap: MultilinearMap, depth: int, max_boxes: int) -> CentralCertificate:
    k, d = fmap.k, fmap.d
    target = [HALF] * d
    centre = tuple([HALF] * k)
    witnesses = []
    if evaluate(fmap, centre) == tuple(target):
        witnesses.append(centre)
    bezout = math.factorial(k)
    slice_hits, slice_infinite, slice_irrational = _slice_witnesses(fmap, target, bezout)
    for w in slice_hits:
        if w not in witnesses:
            witnesses.append(w)

    known, boundary_curve = _boundary_roots(fmap, target)
    result = search(fmap, target, max_depth=depth, max_boxes=max_boxes, known_roots=known,
                    max_unresolved=MAX_UNRESOLVED)
    resolved = result.complete
    degenerate = None
    if slice_infinite or len(witnesses) > bezout:
        degenerate = True
    elif resolved and k == d:
        degenerate = False

    if witnesses:
        return CentralCertificate(Verdict.YES, witnesses[0], degenerate=degenerate,
                                  method="rational-witness")
    if result.roots:
        root = result.roots[0]
        approx = refine_root(fmap, target, root)
        witness = _reconstruct(fmap, target, approx)
        return CentralCertificate(Verdict.YES, witness, degenerate=degenerate,
                                  local_degree=None, method="krawczyk", boxes=[root.box])
    if resolved:
        return CentralCertificate(Verdict.NO, degenerate=False, method="branch-and-prune")
    if slice_irrational:
        return CentralCertificate(Verdict.YES, None, degenerate=degenerate, method="slice-elimination")
    if k == d and not known and not boundary_curve:
        deg = _degree_certificate(fmap, depth, max_boxes)
        if deg:
            return CentralCertificate(Verdict.YES, None, degenerate=degenerate, local_degree=deg,
                                      method="degree")
    return CentralCertificate(Verdict.UNKNOWN, degenerate=degenerate, method="branch-and-prune",
                              boxes=list(result.unresolved))


# -- degree around the center -------------------------------------------------

def perturbation(key: str, d: int, attempt: int = 0, scale: int = 1 << 12) -> tuple[Fraction, ...]:
    """Deterministic generic offsets with denominator 2^16, magnitude below scale/2^16."""
    digest = hashlib.sha256(f"{key}:{attempt}".encode()).digest()
    out = []
    for i in range(d):
        raw = int.from_bytes(digest[4 * i:4 * i + 4], "little")
        num = (raw % scale) | 1
        if (raw >> 31) & 1:
            num = -num
        out.append(Fraction(num, 1 << 16))
    return tuple(out)


def _signed_count(fmap: MultilinearMap, target) -> int:
    return sum(r.sign for r in isolate_roots(fmap, target))


def _segment_avoids_boundary(fmap: MultilinearMap, start, end, depth: int, max_boxes: int) -> bool:
    """Exact check that no facet of the cell maps onto the segment [start, end]."""
    k, d = fmap.k, fmap.d
    for axis in range(k):
        for value in (0, 1):
            facet = fmap.restrict(axis, value)
            # g(x, s) = facet(x) - start - s * (end - start), multilinear in (x, s)
            rows = []
            for i in range(d):
                row = []
                for w in range(1 << k):
                    s = (w >> (k - 1)) & 1
                    base = facet.values[i][w & ((1 << (k - 1)) - 1)]
                    row.append(base - start[i] - s * (end[i] - start[i]))
                rows.append(tuple(row))
            g = MultilinearMap(tuple(rows))
            res = search(g, [0] * d, max_depth=depth, max_boxes=max_boxes, max_unresolved=1)
            if res.unresolved or res.roots or res.exhausted:
                return False
    return True


def _degree_certificate(fmap: MultilinearMap, depth: int, max_boxes: int) -> int:
    """Nonzero local degree around z, certified by a homotopy to a regular value."""
    d = fmap.d
    centre = [HALF] * d
    key = repr(fmap.values)
    for attempt in range(4):
        offsets = perturbation(key, d, attempt, scale=1 << 6)
        target = [HALF + o for o in offsets]
        try:
            deg = _signed_count(fmap, target)
        except NonGenericValue:
            continue
        if deg and _segment_avoids_boundary(fmap, centre, target, depth + 8, max_boxes):
            return deg
        return 0
    return 0


def is_centrally_labelled(cell: Cell, labelling: Labelling, depth: int = DEFAULT_DEPTH) -> CentralCertificate:
    return classify_labels(labelling.cell_labels(cell.slots), labelling.complex.dim, depth)


def instance_target(labelling: Labelling, attempt: int = 0) -> tuple[Fraction, ...]:
    """Generic interior value near the center, shared by every cell of an instance."""
    d = labelling.complex.dim
    return tuple(HALF + o for o in perturbation(labelling.instance_hash(), d, attempt))


def local_degree(cell: Cell, labelling: Labelling, target: Sequence | None = None,
                 attempts: int = 32) -> int:
    """Signed preimage count of a generic value near z inside ``cell``.

    For a top cell of an oriented complex the count is taken with the cell's
    orientation sign.
    """
    complex_ = labelling.complex
    d = complex_.dim
    if cell.dim != d:
        raise ValueError(f"local degree needs a {d}-cell, got dimension {cell.dim}")
    sign = 1
    if complex_.orientation is not None and cell.parent is not None:
        sign = complex_.orientation[cell.parent]
    labels = labelling.cell_labels(cell.slots)
    if constant_coordinate_mask(labels, d):
        return 0
    fmap = _cell_map(labels, d)
    if target is not None:
        return sign * _signed_count(fmap, target)
    for attempt in range(attempts):
        try:
            return sign * _signed_count(fmap, instance_target(labelling, attempt))
        except NonGenericValue:
            continue
    raise NonGenericValue(f"no regular value found after {attempts} attempts")


@dataclass
class CentralScan:
    yes: list[tuple[Cell, CentralCertificate]]
    unknown: list[tuple[Cell, CentralCertificate]]


def _classify_job(args):
    labels, d, depth = args
    return classify_labels(labels, d, depth)


def enumerate_central_cells(complex_: CubicalComplex, labelling: Labelling,
                            depth: int = DEFAULT_DEPTH, dims: Sequence[int] | None = None,
                            threads: int = 1) -> CentralScan:
    """Scan cells of dimensions 1..d (or ``dims``) in face-table order."""
    d = complex_.dim
    dims = range(1, d + 1) if dims is None else sorted(set(dims))
    cells = [c for k in dims for c in complex_.cells(k)]
    jobs = [(labelling.cell_labels(c.slots), d, depth) for c in cells]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            certs = list(pool.map(_classify_job, jobs, chunksize=16))
    else:
        cache = {}
        certs = []
        for job in jobs:
            key = (job[0], job[1], job[2])
            if key not in cache:
                cache[key] = _classify_job(job)
            certs.append(cache[key])
    yes = [(c, cert) for c, cert in zip(cells, certs) if cert.verdict is Verdict.YES]
    unknown = [(c, cert) for c, cert in zip(cells, certs) if cert.verdict is Verdict.UNKNOWN]
    return CentralScan(yes, unknown)
