"""Vertex labellings by vertices of C^d, and their Sperner / neighboring checks.

A label is stored as its integer alias: bit ``i`` is coordinate ``i`` of the
cube vertex.  In two dimensions the colors 1, 2, 3, 4 stand for the labels
(0,0), (1,0), (1,1), (0,1).
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .complex import ComplexError, CubicalComplex

COLOR_TO_ALIAS = {1: 0b00, 2: 0b01, 3: 0b11, 4: 0b10}
ALIAS_TO_COLOR = {v: k for k, v in COLOR_TO_ALIAS.items()}


class LabellingError(ValueError):
    pass


def label_bits(alias: int, d: int) -> tuple[int, ...]:
    return tuple((alias >> i) & 1 for i in range(d))


def label_alias(bits: Sequence[int]) -> int:
    return sum((b & 1) << i for i, b in enumerate(bits))


def color_to_label(color: int) -> tuple[int, int]:
    try:
        return label_bits(COLOR_TO_ALIAS[int(color)], 2)
    except KeyError:
        raise LabellingError(f"color {color!r} is not one of 1, 2, 3, 4") from None


def label_to_color(bits: Sequence[int]) -> int:
    if len(bits) != 2:
        raise LabellingError("colors exist only for two-dimensional labels")
    return ALIAS_TO_COLOR[label_alias(bits)]


def antipodal(a: int, b: int, d: int) -> bool:
    """True when the labels sum to the all-ones tuple."""
    return a ^ b == (1 << d) - 1


@dataclass(frozen=True)
class Labelling:
    """Total map from the vertices of ``complex`` to integer label aliases."""

    complex: CubicalComplex
    labels: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(int(x) for x in self.labels)
        n, d = self.complex.n_vertices, self.complex.dim
        if len(labels) != n:
            raise LabellingError(f"labelling has {len(labels)} entries for {n} vertices")
        for v, lab in enumerate(labels):
            if not 0 <= lab < (1 << d):
                raise LabellingError(f"vertex {v} has label {lab} outside 0..{(1 << d) - 1}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_colors(cls, complex_: CubicalComplex, colors: Sequence[int]) -> "Labelling":
        if complex_.dim != 2:
            raise LabellingError("colors are only accepted for two-dimensional complexes")
        labels = []
        for v, c in enumerate(colors):
            if int(c) not in COLOR_TO_ALIAS:
                raise LabellingError(f"vertex {v} has color {c!r}, expected 1..4")
            labels.append(COLOR_TO_ALIAS[int(c)])
        return cls(complex_, tuple(labels))

    def bits(self, v: int) -> tuple[int, ...]:
        return label_bits(self.labels[v], self.complex.dim)

    def colors(self) -> tuple[int, ...]:
        if self.complex.dim != 2:
            raise LabellingError("colors are only defined for two-dimensional labels")
        return tuple(ALIAS_TO_COLOR[lab] for lab in self.labels)

    def cell_labels(self, slots: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.labels[v] for v in slots)

    def to_dict(self) -> dict:
        doc = self.complex.to_dict()
        doc["labels"] = list(self.labels)
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Labelling":
        complex_ = CubicalComplex.from_dict(doc)
        if "labels" in doc:
            return cls(complex_, tuple(doc["labels"]))
        if "colors" in doc:
            return cls.from_colors(complex_, doc["colors"])
        raise LabellingError("document has neither 'labels' nor 'colors'")

    def instance_hash(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


@dataclass
class ValidationResult:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _carrier(point: Sequence[int], dims: Sequence[int]) -> dict[int, int]:
    """Fixed coordinates of the smallest box face containing ``point``."""
    fixed = {}
    for i, (x, n) in enumerate(zip(point, dims)):
        if x == 0:
            fixed[i] = 0
        elif x == n:
            fixed[i] = 1
    return fixed


def validate_sperner(pile: CubicalComplex, labelling: Labelling) -> ValidationResult:
    """Corners carry their own cube vertex; boundary labels stay on the carrier face."""
    if pile.pile is None or pile.coords is None:
        raise ComplexError("Sperner validation needs a pile built by build_pile")
    violations = []
    for v, point in enumerate(pile.coords):
        fixed = _carrier(point, pile.pile)
        if not fixed:
            continue
        bits = labelling.bits(v)
        wrong = [i for i, c in fixed.items() if bits[i] != c]
        if not wrong:
            continue
        if len(fixed) == pile.dim:
            violations.append(f"corner vertex {v} at {point} has label {bits}, expected "
                              f"{tuple(fixed[i] for i in range(pile.dim))}")
        else:
            violations.append(f"boundary vertex {v} at {point} has label {bits} off its carrier "
                              f"face (coordinates {sorted(wrong)} must be {[fixed[i] for i in sorted(wrong)]})")
    return ValidationResult(not violations, violations)


def constant_coordinate_mask(labels: Sequence[int], d: int) -> int:
    """Bit mask of coordinates on which all labels agree."""
    full = (1 << d) - 1
    ones, zeros = full, full
    for lab in labels:
        ones &= lab
        zeros &= ~lab & full
    return ones | zeros


def validate_nl(complex_: CubicalComplex, labelling: Labelling) -> ValidationResult:
    """Does the labelling map the boundary into the boundary of C^d?

    A boundary facet maps into a facet of C^d exactly when all its labels
    share a coordinate value; otherwise interior points of the facet land
    strictly inside the cube.
    """
    d = complex_.dim
    violations = []
    for facet in complex_.boundary_facets:
        labels = labelling.cell_labels(facet.cell.slots)
        if constant_coordinate_mask(labels, d) == 0:
            shown = [label_bits(lab, d) for lab in labels]
            if d == 2:
                shown = [label_to_color(b) for b in shown]
            violations.append(f"boundary cell {list(facet.cell.slots)} has labels {shown}")
    return ValidationResult(not violations, violations)


def random_sperner(pile: CubicalComplex, seed: int | None = None) -> Labelling:
    """Random Sperner labelling; free coordinates of each carrier face are uniform."""
    if pile.pile is None or pile.coords is None:
        raise ComplexError("random Sperner labellings need a pile built by build_pile")
    rng = random.Random(seed)
    labels = []
    for point in pile.coords:
        fixed = _carrier(point, pile.pile)
        bits = [fixed[i] if i in fixed else rng.getrandbits(1) for i in range(pile.dim)]
        labels.append(label_alias(bits))
    return Labelling(pile, tuple(labels))
