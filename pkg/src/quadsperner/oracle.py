"""Slow, independently coded reference checks.

Nothing here calls the production solvers: values come from the
corner-average formula in scaled integer arithmetic, searches use plain
bisection with corner bounds and 2-cell ambiguities are settled with sympy.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Sequence

from .central import CentralCertificate, Verdict
from .multilinear import MultilinearMap

HALF = Fraction(1, 2)
GRID = 32
GOLDEN_FILE = "central_2cells_d2.json"


def winding_number(polyline: Sequence[Sequence], point: Sequence) -> int:
    """Winding number of a closed polyline around ``point`` by exact crossings."""
    px, py = (Fraction(c) for c in point)
    pts = [(Fraction(a), Fraction(b)) for a, b in polyline]
    n = len(pts)
    total = 0
    for i in range(n):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % n]
        cross = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)
        if cross == 0 and min(x0, x1) <= px <= max(x0, x1) and min(y0, y1) <= py <= max(y0, y1):
            raise ValueError(f"point {(px, py)} lies on segment {i}")
        if y0 <= py < y1 and cross > 0:
            total += 1
        elif y1 <= py < y0 and cross < 0:
            total -= 1
    return total


def boundary_image(labelling, cycle: Sequence[int]) -> list[tuple[int, int]]:
    """Image of a boundary vertex cycle: the label points of its vertices."""
    return [labelling.bits(v) for v in cycle]


def _scaled_values(cell_labels, d: int, k: int, point, scale: int) -> list[int]:
    """scale^k times each output of the corner average at ``point / scale``."""
    out = [0] * d
    for w, lab in enumerate(cell_labels):
        weight = 1
        for i in range(k):
            weight *= point[i] if (w >> i) & 1 else scale - point[i]
        for i in range(d):
            if (lab >> i) & 1:
                out[i] += weight
    return out


def _excluded(cell_labels, d: int, k: int, box, scale: int) -> bool:
    half = scale ** k // 2
    corners = [tuple(box[i][(w >> i) & 1] for i in range(k)) for w in range(1 << k)]
    vals = [_scaled_values(cell_labels, d, k, c, scale) for c in corners]
    return any(min(v[i] for v in vals) > half or max(v[i] for v in vals) < half for i in range(d))


def _prune(cell_labels, d: int, k: int, depth: int, cap: int = 1024):
    """Dyadic boxes (integer corners at scale 2^depth) that may still hold a solution."""
    scale = 1 << depth
    boxes = [tuple((0, scale) for _ in range(k))]
    for _ in range(depth):
        nxt = []
        for box in boxes:
            if _excluded(cell_labels, d, k, box, scale):
                continue
            mids = [(lo + hi) // 2 for lo, hi in box]
            for c in range(1 << k):
                nxt.append(tuple((box[i][0], mids[i]) if not (c >> i) & 1 else (mids[i], box[i][1])
                                 for i in range(k)))
        boxes = nxt
        if not boxes or len(boxes) > cap:
            break
    survivors = [b for b in boxes if not _excluded(cell_labels, d, k, b, scale)]
    return [tuple((Fraction(lo, scale), Fraction(hi, scale)) for lo, hi in b) for b in survivors]


def _grid_hits(cell_labels, d: int, k: int):
    """Lattice points j/GRID (0 < j < GRID) where every output equals 1/2.

    Works in integers: GRID^k times the corner average of 0/1 data.
    """
    half = GRID ** k // 2
    out = []
    for x in product(range(1, GRID), repeat=k):
        weights = []
        for w in range(1 << k):
            weight = 1
            for i in range(k):
                weight *= x[i] if (w >> i) & 1 else GRID - x[i]
            weights.append(weight)
        if all(sum(wt for wt, lab in zip(weights, cell_labels) if (lab >> i) & 1) == half
               for i in range(d)):
            out.append(x)
    return out


def grid_classify(cell_labels: Sequence[int], d: int, depth: int = 8) -> CentralCertificate:
    """Grid witness search on a 33^k lattice, then corner-bound bisection."""
    n = len(cell_labels)
    k = n.bit_length() - 1
    if k > 3:
        raise ValueError("grid classification handles cells of dimension at most 3")
    hits = [tuple(Fraction(j, GRID) for j in x) for x in _grid_hits(cell_labels, d, k)]
    if hits:
        return CentralCertificate(Verdict.YES, hits[0], degenerate=len(hits) > 1 or None, method="grid")
    boxes = _prune(cell_labels, d, k, depth)
    if not boxes:
        return CentralCertificate(Verdict.NO, degenerate=False, method="grid-prune")
    return CentralCertificate(Verdict.UNKNOWN, method="grid-prune", boxes=boxes)


def _sympy_2cell(cell_labels: Sequence[int]) -> CentralCertificate:
    import sympy

    x, y = sympy.symbols("x y")
    fmap = MultilinearMap.from_labels(cell_labels, 2)
    eqs = []
    for row in fmap.values:
        b00, b10, b01, b11 = (sympy.Rational(v.numerator, v.denominator) for v in row)
        expr = b00 * (1 - x) * (1 - y) + b10 * x * (1 - y) + b01 * (1 - x) * y + b11 * x * y
        eqs.append(sympy.expand(expr - sympy.Rational(1, 2)))
    eqs = [e for e in eqs if e != 0]
    sols = sympy.solve(eqs, [x, y], dict=True)

    def inside(v):
        return v.is_real and bool(v > 0) and bool(v < 1)

    for sol in sols:
        free = [s for s in (x, y) if s not in sol]
        if not free:
            vx, vy = sympy.nsimplify(sol[x]), sympy.nsimplify(sol[y])
            if inside(vx) and inside(vy):
                witness = (Fraction(str(vx)), Fraction(str(vy))) if vx.is_rational and vy.is_rational else None
                return CentralCertificate(Verdict.YES, witness, degenerate=False, method="sympy")
            continue
        s = free[0]
        for j in range(1, 128):
            t = sympy.Rational(j, 128)
            point = {s: t}
            for var, expr in sol.items():
                point[var] = expr.subs(s, t)
            if all(inside(point[v]) for v in (x, y)):
                witness = (Fraction(str(point[x])), Fraction(str(point[y])))
                return CentralCertificate(Verdict.YES, witness, degenerate=True, method="sympy")
    return CentralCertificate(Verdict.NO, degenerate=False, method="sympy")


def classify_2cell(cell_labels: Sequence[int]) -> CentralCertificate:
    """Decide a single d=2 quad: grid first, sympy for what the grid leaves open."""
    cert = grid_classify(cell_labels, 2)
    if cert.verdict is Verdict.UNKNOWN:
        cert = _sympy_2cell(cell_labels)
    return cert


def _table_key(colors_cyclic: Sequence[int]) -> str:
    return ",".join(str(c) for c in colors_cyclic)


def cyclic_to_slots(colors_cyclic: Sequence[int]) -> tuple[int, ...]:
    """Colors listed around the quad (00, 10, 11, 01) to little-endian slot order."""
    a, b, c, e = colors_cyclic
    return (a, b, e, c)


def classify_all_2cells_d2() -> dict:
    """Verdict for each of the 256 colorings of a quad, keyed in cyclic order."""
    from .labelling import COLOR_TO_ALIAS

    entries = {}
    for colors in product((1, 2, 3, 4), repeat=4):
        labels = tuple(COLOR_TO_ALIAS[c] for c in cyclic_to_slots(colors))
        entries[_table_key(colors)] = classify_2cell(labels).verdict.value
    return entries


def table_hash(entries: dict) -> str:
    payload = json.dumps(entries, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def golden_document(entries: dict) -> dict:
    return {
        "order": "colors around the quad: corner 00, 10, 11, 01",
        "yes_count": sum(v == "yes" for v in entries.values()),
        "sha256": table_hash(entries),
        "entries": entries,
    }


@lru_cache(maxsize=1)
def load_golden() -> dict:
    text = resources.files("quadsperner").joinpath("data", GOLDEN_FILE).read_text()
    doc = json.loads(text)
    if table_hash(doc["entries"]) != doc["sha256"]:
        raise ValueError("golden table content does not match its recorded hash")
    return doc
