"""Certified isolation of preimages of a point under a multilinear map on C^k.

Boxes are bisected along every axis.  A box is discarded when some output
keeps a strict sign on all its corners (exact, since corner values bound a
multilinear function on a box).  For square systems a box is accepted when
the exact Krawczyk test K(X) in int(X) holds: the box then holds exactly one
solution, it lies in the open box, and the Jacobian determinant has the
sign of det J(mid) throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .multilinear import Box, MultilinearMap, box_corners, evaluate, jacobian, unit_box

_Y_BITS = 32


class NonGenericValue(RuntimeError):
    """The target is (numerically) not a regular value; choose another one."""


@dataclass(frozen=True)
class IsolatedRoot:
    box: Box
    sign: int


@dataclass
class SearchResult:
    roots: list[IsolatedRoot] = field(default_factory=list)
    unresolved: list[Box] = field(default_factory=list)
    visited: int = 0
    exhausted: bool = False

    @property
    def complete(self) -> bool:
        return not self.unresolved and not self.exhausted


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(row) for row in matrix]
    n = len(a)
    out = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            out = -out
        out *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return out


def inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    n = len(matrix)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _round(x: Fraction) -> Fraction:
    return Fraction(round(x * (1 << _Y_BITS)), 1 << _Y_BITS)


def _excluded(vals, d: int) -> bool:
    for i in range(d):
        first = vals[0][i]
        if first > 0:
            if all(v[i] > 0 for v in vals):
                return True
        elif first < 0:
            if all(v[i] < 0 for v in vals):
                return True
    return False


def _preconditioner(vals, rad, k: int):
    """Rounded inverse of the Jacobian at the box midpoint, plus sign of its determinant."""
    n = len(vals)
    j_mid = []
    for i in range(k):
        row = []
        for j in range(k):
            bit = 1 << j
            total = sum(vals[w | bit][i] - vals[w][i] for w in range(n) if not w & bit)
            row.append(total / (n // 2) / (2 * rad[j]))
        j_mid.append(row)
    sign_det = det(j_mid)
    if sign_det == 0:
        return None, 0
    inv = inverse(j_mid)
    return [[_round(x) for x in row] for row in inv], (1 if sign_det > 0 else -1)


def _combine(y, vals, k: int):
    return [tuple(sum(y[i][l] * v[l] for l in range(k) if y[i][l]) for i in range(k)) for v in vals]


def krawczyk(box: Box, vals, y) -> bool:
    """Exact test K(X) in int(X) for g with corner values ``vals`` on ``box``.

    ``y`` is any matrix; success certifies a unique root in the open box and
    a nonsingular Jacobian on the whole box.
    """
    k = len(box)
    n = len(vals)
    mid = [(lo + hi) / 2 for lo, hi in box]
    rad = [(hi - lo) / 2 for lo, hi in box]
    g_mid = [sum(v[i] for v in vals) / n for i in range(k)]
    # Jacobian ranges from edge differences of corner values (exact for multilinear maps).
    j_lo = [[None] * k for _ in range(k)]
    j_hi = [[None] * k for _ in range(k)]
    for j in range(k):
        bit = 1 << j
        width = 2 * rad[j]
        for i in range(k):
            diffs = [vals[w | bit][i] - vals[w][i] for w in range(n) if not w & bit]
            j_lo[i][j] = min(diffs) / width
            j_hi[i][j] = max(diffs) / width
    for i in range(k):
        centre = mid[i] - sum(y[i][l] * g_mid[l] for l in range(k))
        spread = Fraction(0)
        for j in range(k):
            lo = hi = Fraction(int(i == j))
            for l in range(k):
                yl = y[i][l]
                if yl > 0:
                    lo -= yl * j_hi[l][j]
                    hi -= yl * j_lo[l][j]
                elif yl < 0:
                    lo -= yl * j_lo[l][j]
                    hi -= yl * j_hi[l][j]
            spread += max(abs(lo), abs(hi)) * rad[j]
        if abs(centre - mid[i]) + spread >= rad[i]:
            return False
    return True


def _split(box: Box, vals, k: int):
    """Children of ``box`` with their corner values, obtained by averaging."""
    grid = {}
    for w, v in enumerate(vals):
        grid[tuple(2 * ((w >> i) & 1) for i in range(k))] = v
    for axis in range(k):
        for key in [key for key in grid if key[axis] == 0]:
            hi_key = key[:axis] + (2,) + key[axis + 1:]
            mid_key = key[:axis] + (1,) + key[axis + 1:]
            a, b = grid[key], grid[hi_key]
            grid[mid_key] = tuple((x + y) / 2 for x, y in zip(a, b))
    mids = [(lo + hi) / 2 for lo, hi in box]
    out = []
    for c in range(1 << k):
        child = tuple((box[i][0], mids[i]) if not (c >> i) & 1 else (mids[i], box[i][1])
                      for i in range(k))
        cvals = [grid[tuple(((c >> i) & 1) + ((w >> i) & 1) for i in range(k))]
                 for w in range(1 << k)]
        out.append((child, cvals))
    return out


def _isolated_by_known(g: MultilinearMap, box: Box, roots) -> bool:
    k = g.k
    for p in roots:
        if not all(lo <= x <= hi for x, (lo, hi) in zip(p, box)):
            continue
        wide = tuple((x - (hi - lo), x + (hi - lo)) for x, (lo, hi) in zip(p, box))
        vals = [evaluate(g, c) for c in box_corners(wide)]
        rad = [hi - lo for lo, hi in box]
        y, _ = _preconditioner(vals, rad, k)
        if y is not None and krawczyk(wide, vals, y):
            return True
    return False


def search(
    fmap: MultilinearMap,
    target: Sequence,
    max_depth: int = 40,
    max_boxes: int = 50_000,
    box: Box | None = None,
    known_roots: Sequence = (),
    max_unresolved: int | None = None,
) -> SearchResult:
    """Branch-and-prune for ``fmap(x) = target`` over ``box`` (default the unit cube).

    Square systems get Krawczyk certification; over-determined ones are only
    pruned, so every surviving box ends up unresolved.  ``known_roots`` are
    exact solutions on the boundary of the cube: a box touching one of them
    is discarded when a box centred at the root passes the Krawczyk test,
    since that root is then the only solution nearby.  The search stops
    early once ``max_unresolved`` boxes have reached ``max_depth``.
    """
    g = fmap.shifted(target)
    k, d = g.k, g.d
    square = k == d
    start = box or unit_box(k)
    result = SearchResult()
    stack = [(start, [evaluate(g, c) for c in box_corners(start)], 0)]
    while stack:
        current, vals, level = stack.pop()
        result.visited += 1
        if result.visited > max_boxes:
            result.exhausted = True
            result.unresolved.append(current)
            result.unresolved.extend(b for b, _, _ in stack)
            break
        if _excluded(vals, d):
            continue
        if square:
            rad = [(hi - lo) / 2 for lo, hi in current]
            y, sign = _preconditioner(vals, rad, k)
            if y is not None:
                if _excluded(_combine(y, vals, k), k):
                    continue
                if krawczyk(current, vals, y):
                    result.roots.append(IsolatedRoot(current, sign))
                    continue
            if known_roots and _isolated_by_known(g, current, known_roots):
                continue
        if level >= max_depth:
            result.unresolved.append(current)
            if max_unresolved is not None and len(result.unresolved) >= max_unresolved:
                result.exhausted = True
                result.unresolved.extend(b for b, _, _ in stack)
                break
            continue
        for child, cvals in reversed(_split(current, vals, k)):
            stack.append((child, cvals, level + 1))
    return result


def isolate_roots(fmap: MultilinearMap, target: Sequence, max_depth: int = 40,
                  max_boxes: int = 50_000) -> list[IsolatedRoot]:
    """All solutions of ``fmap(x) = target`` in the open unit cube, each certified.

    Raises NonGenericValue if some box can be neither discarded nor certified,
    which happens when the target is a critical value or the image of a face.
    """
    if fmap.k != fmap.d:
        raise ValueError(f"system is not square: {fmap.d} equations in {fmap.k} unknowns")
    result = search(fmap, target, max_depth, max_boxes)
    if not result.complete:
        raise NonGenericValue(
            f"{len(result.unresolved)} boxes unresolved after {result.visited} visits"
        )
    return result.roots


def refine_root(fmap: MultilinearMap, target: Sequence, root: IsolatedRoot, steps: int = 60):
    """Float Newton approximation of the certified root, for rational reconstruction."""
    k = fmap.k
    x = [float((lo + hi) / 2) for lo, hi in root.box]
    g = fmap.shifted(target)
    for _ in range(steps):
        xf = [Fraction(v) for v in x]
        val = [float(v) for v in evaluate(g, xf)]
        jac = jacobian(g, xf)
        inv = inverse(jac)
        if inv is None:
            break
        step = [sum(float(inv[i][j]) * val[j] for j in range(k)) for i in range(k)]
        x = [a - b for a, b in zip(x, step)]
        if max(abs(s) for s in step) < 1e-15:
            break
    return x
