"""Boundary degree of a labelling, its mod-2 version and the interior signed count.

The boundary map sends each boundary cell into the boundary of C^d.  Its
degree is read off at a generic point y of the open facet x_{d-1} = 0 of
C^d: every boundary cell whose labels sit on that facet (and on no other)
contributes the signed count of its exact preimages of y, weighted by the
cell's induced orientation relative to the facet's own.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .central import HALF, instance_target, perturbation
from .complex import BoundaryFacet, ComplexError, CubicalComplex, induced_sign
from .labelling import COLOR_TO_ALIAS, Labelling, LabellingError, constant_coordinate_mask, validate_nl
from .multilinear import MultilinearMap
from .preimages import NonGenericValue, isolate_roots

REGULAR_VALUE_ATTEMPTS = 32
TRANSITION_PAIRS = ((1, 2), (2, 3), (3, 4), (4, 1))


class DegreeError(ValueError):
    pass


@dataclass
class DegreeReport:
    total: int
    per_component: list[int] = field(default_factory=list)
    method: str = ""
    regular_value: tuple[Fraction, ...] | None = None
    mod2: bool = False

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "per_component": list(self.per_component),
            "method": self.method,
            "regular_value": None if self.regular_value is None else [str(x) for x in self.regular_value],
            "mod2": self.mod2,
        }


def boundary_degree_2d(cycle: Sequence[int], pair: tuple[int, int] = (1, 2), strict: bool = False) -> int:
    """Net number of ``pair[0] -> pair[1]`` steps around a closed color cycle.

    With ``strict`` a step between opposite colors (1,3) or (2,4) is an
    error; such cycles do not come from neighboring labellings and the count
    then depends on ``pair``.
    """
    n = len(cycle)
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if a not in COLOR_TO_ALIAS or b not in COLOR_TO_ALIAS:
            raise LabellingError(f"position {i}: colors must be 1..4, got {a!r} -> {b!r}")
        if strict and (a - b) % 4 == 2:
            raise LabellingError(f"positions {i} and {(i + 1) % n} carry opposite colors {a} and {b}")
    lo, hi = pair
    forward = backward = 0
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if (a, b) == (lo, hi):
            forward += 1
        elif (a, b) == (hi, lo):
            backward += 1
    return forward - backward


def _require_nl(complex_: CubicalComplex, labelling: Labelling):
    check = validate_nl(complex_, labelling)
    if not check.ok:
        raise LabellingError("labelling is not neighboring: " + "; ".join(check.violations[:3]))


def _component_index(complex_: CubicalComplex) -> dict[BoundaryFacet, int]:
    return {f: i for i, comp in enumerate(complex_.boundary()) for f in comp.facets}


def facet_value(key: str, d: int, attempt: int) -> tuple[Fraction, ...]:
    """Generic point of the open facet x_{d-1} = 0 of C^d."""
    offsets = perturbation("facet:" + key, d - 1, attempt)
    return tuple(HALF + o for o in offsets) + (Fraction(0),)


def _candidates(complex_: CubicalComplex, labelling: Labelling):
    d = complex_.dim
    top_bit = 1 << (d - 1)
    out = []
    for facet in complex_.boundary_facets:
        labels = labelling.cell_labels(facet.cell.slots)
        if constant_coordinate_mask(labels, d) != top_bit:
            continue
        if any(lab & top_bit for lab in labels):
            continue
        out.append((facet, labels))
    return out


def _facet_counts(complex_: CubicalComplex, labelling: Labelling, y: Sequence[Fraction], signed: bool):
    """Per-facet preimage counts of the facet point ``y`` (signed or plain)."""
    d = complex_.dim
    out = []
    for facet, labels in _candidates(complex_, labelling):
        if d == 1:
            count = 1
        else:
            fmap = MultilinearMap.from_labels(labels, d - 1)
            roots = isolate_roots(fmap, y[: d - 1])
            count = sum(r.sign for r in roots) if signed else len(roots)
        out.append((facet, count))
    return out


def _preimage_degree(complex_: CubicalComplex, labelling: Labelling, signed: bool,
                     attempt_offset: int = 0) -> DegreeReport:
    d = complex_.dim
    comps = complex_.boundary()
    index = _component_index(complex_)
    key = labelling.instance_hash()
    target_sign = induced_sign(d - 1, 0)
    for attempt in range(attempt_offset, attempt_offset + REGULAR_VALUE_ATTEMPTS):
        y = facet_value(key, d, attempt)
        try:
            counts = _facet_counts(complex_, labelling, y, signed)
        except NonGenericValue:
            continue
        per = [0] * len(comps)
        for facet, count in counts:
            if signed:
                per[index[facet]] += count * facet.sign * target_sign
            else:
                per[index[facet]] += count
        if signed:
            return DegreeReport(sum(per), per, "preimage", y)
        per = [c % 2 for c in per]
        return DegreeReport(sum(per) % 2, per, "preimage", y, mod2=True)
    raise NonGenericValue(f"no regular facet value after {REGULAR_VALUE_ATTEMPTS} attempts")


def _walk_degree(complex_: CubicalComplex, labelling: Labelling) -> DegreeReport:
    colors = labelling.colors()
    per = [boundary_degree_2d([colors[v] for v in comp.cycle], strict=True) for comp in complex_.boundary()]
    return DegreeReport(sum(per), per, "walk")


def boundary_degree(complex_: CubicalComplex, labelling: Labelling, method: str = "auto",
                    attempt_offset: int = 0) -> DegreeReport:
    """deg(L, boundary) as a DegreeReport.

    ``method`` is ``walk`` (d = 2 only), ``preimage`` or ``auto`` (walk when
    d = 2).  ``attempt_offset`` shifts the sequence of regular values tried.
    """
    if not complex_.orientable:
        raise ComplexError("boundary degree needs an oriented complex; use boundary_degree_mod2")
    _require_nl(complex_, labelling)
    if not complex_.boundary_facets:
        return DegreeReport(0, [], method if method != "auto" else "empty")
    if method == "auto":
        method = "walk" if complex_.dim == 2 else "preimage"
    if method == "walk":
        if complex_.dim != 2:
            raise DegreeError("the boundary walk needs a two-dimensional complex")
        return _walk_degree(complex_, labelling)
    if method == "preimage":
        return _preimage_degree(complex_, labelling, signed=True, attempt_offset=attempt_offset)
    raise DegreeError(f"unknown method {method!r}")


def boundary_degree_mod2(complex_: CubicalComplex, labelling: Labelling, attempt_offset: int = 0) -> DegreeReport:
    """Parity of the preimage count of a generic facet point."""
    _require_nl(complex_, labelling)
    if not complex_.boundary_facets:
        return DegreeReport(0, [], "empty", mod2=True)
    return _preimage_degree(complex_, labelling, signed=False, attempt_offset=attempt_offset)


def signed_interior_count(complex_: CubicalComplex, labelling: Labelling,
                          target: Sequence | None = None, attempt_offset: int = 0) -> tuple[int, tuple]:
    """Signed preimage count of an interior value summed over the top cells.

    Returns the count together with the value used.  Without ``target`` a
    generic point near the center is derived from the instance.
    """
    if not complex_.orientable:
        raise ComplexError("signed counts need an oriented complex")
    d = complex_.dim
    cells = complex_.cells(d)
    maps = []
    for cell in cells:
        labels = labelling.cell_labels(cell.slots)
        sign = complex_.orientation[cell.parent]
        if constant_coordinate_mask(labels, d):
            continue
        maps.append((MultilinearMap.from_labels(labels, d), sign))
    if target is not None:
        candidates = [tuple(Fraction(t) for t in target)]
    else:
        candidates = [instance_target(labelling, a)
                      for a in range(attempt_offset, attempt_offset + REGULAR_VALUE_ATTEMPTS)]
    for value in candidates:
        try:
            total = sum(sign * sum(r.sign for r in isolate_roots(fmap, value)) for fmap, sign in maps)
        except NonGenericValue:
            if target is not None:
                raise
            continue
        return total, value
    raise NonGenericValue(f"no regular interior value after {REGULAR_VALUE_ATTEMPTS} attempts")
