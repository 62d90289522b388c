"""Executable versions of the lower-bound theorems on concrete instances.

Each check returns a report whose ``status`` is ``pass``, ``fail`` or
``unknown``; ``unknown`` means the conclusion hinges on cells the central
decision could not settle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .central import CentralCertificate, CentralScan, Verdict, enumerate_central_cells
from .complex import Cell, CubicalComplex
from .degree import boundary_degree, boundary_degree_mod2, signed_interior_count
from .labelling import Labelling, validate_nl, validate_sperner
from .preimages import NonGenericValue

PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


def cell_record(complex_: CubicalComplex, labelling: Labelling, cell: Cell,
                cert: CentralCertificate | None = None) -> dict:
    rec = {"dim": cell.dim, "vertices": list(cell.slots)}
    if complex_.coords is not None:
        rec["coords"] = [list(complex_.coords[v]) for v in cell.slots]
    if complex_.dim == 2:
        colors = labelling.colors()
        rec["colors"] = [colors[v] for v in cell.slots]
        rec["class"] = theorem_a_class(labelling, cell)
    if cert is not None:
        rec["certificate"] = cert.to_dict()
    return rec


def theorem_a_class(labelling: Labelling, cell: Cell) -> str:
    """``quad4``, ``edge13``, ``edge24`` or ``other`` for a cell of a 2-D labelling."""
    colors = labelling.colors()
    cs = [colors[v] for v in cell.slots]
    if cell.dim == 1:
        pair = frozenset(cs)
        if pair == {1, 3}:
            return "edge13"
        if pair == {2, 4}:
            return "edge24"
    if cell.dim == 2 and len(set(cs)) == 4:
        return "quad4"
    return "other"


def minimal_cells(complex_: CubicalComplex, yes: Sequence[tuple[Cell, CentralCertificate]]):
    """Centrally labelled cells none of whose proper faces is centrally labelled."""
    central = {c.vertices for c, _ in yes}
    out = []
    for cell, cert in yes:
        if not any(other < cell.vertices for other in central):
            out.append((cell, cert))
    return out


@dataclass
class TheoremReport:
    theorem: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"theorem": self.theorem, "status": self.status, **self.details}


def _scan(complex_, labelling, depth, threads) -> CentralScan:
    return enumerate_central_cells(complex_, labelling, depth=depth, threads=threads)


def _nl_failure(theorem: str, complex_, labelling) -> TheoremReport | None:
    nl = validate_nl(complex_, labelling)
    if nl.ok:
        return None
    return TheoremReport(theorem, FAIL, {"nl": False, "violations": nl.violations})


def check_theorem1(complex_: CubicalComplex, labelling: Labelling, depth: int = 12,
                   threads: int = 1, scan: CentralScan | None = None) -> TheoremReport:
    """At least |deg(L, boundary)| centrally labelled cells, counted as distinct cells."""
    name = "theorem1"
    failed = _nl_failure(name, complex_, labelling)
    if failed:
        return failed
    if not complex_.orientable:
        return TheoremReport(name, FAIL, {"nl": True, "error": "complex is not oriented"})
    report = boundary_degree(complex_, labelling)
    degree = report.total
    scan = scan or _scan(complex_, labelling, depth, threads)
    n_yes = len(scan.yes)
    try:
        interior, value = signed_interior_count(complex_, labelling)
        multiplicity = {"signed_interior_count": interior, "value": [str(v) for v in value],
                        "matches_degree": interior == degree}
    except NonGenericValue as exc:
        multiplicity = {"signed_interior_count": None, "error": str(exc), "matches_degree": None}
    on_boundary = [list(c.slots) for c, _ in scan.yes if complex_.is_boundary_cell(c)]
    if n_yes >= abs(degree):
        status = PASS
    elif n_yes + len(scan.unknown) >= abs(degree):
        status = UNKNOWN
    else:
        status = FAIL
    if on_boundary:
        status = FAIL
    details = {
        "nl": True,
        "degree": degree,
        "per_component": report.per_component,
        "central_cells": n_yes,
        "unknown_cells": len(scan.unknown),
        "multiplicity": multiplicity,
        "witness_on_boundary": on_boundary,
        "distinct_cell_finding": n_yes < abs(degree) and multiplicity["matches_degree"] is True,
    }
    return TheoremReport(name, status, details)


def check_theorem2(complex_: CubicalComplex, labelling: Labelling, depth: int = 12,
                   threads: int = 1, scan: CentralScan | None = None) -> TheoremReport:
    """A nonzero mod-2 boundary degree forces a centrally labelled cell."""
    name = "theorem2"
    failed = _nl_failure(name, complex_, labelling)
    if failed:
        return failed
    deg2 = boundary_degree_mod2(complex_, labelling).total
    scan = scan or _scan(complex_, labelling, depth, threads)
    if deg2 == 0 or scan.yes:
        status = PASS
    elif scan.unknown:
        status = UNKNOWN
    else:
        status = FAIL
    return TheoremReport(name, status, {"nl": True, "deg_mod2": deg2, "central_cells": len(scan.yes),
                                        "unknown_cells": len(scan.unknown)})


def check_sperner_theorems(pile: CubicalComplex, labelling: Labelling, depth: int = 12,
                           threads: int = 1, scan: CentralScan | None = None) -> TheoremReport:
    """Sperner labellings of piles: NL, |deg| = 1 and a centrally labelled cell.

    In two dimensions the minimal centrally labelled cells are also checked
    to be four-colored quads or (1,3) / (2,4) edges.
    """
    name = "sperner"
    sp = validate_sperner(pile, labelling)
    if not sp.ok:
        return TheoremReport(name, FAIL, {"sperner": False, "violations": sp.violations})
    nl = validate_nl(pile, labelling)
    if not nl.ok:
        return TheoremReport(name, FAIL, {"sperner": True, "nl": False, "violations": nl.violations})
    degree = boundary_degree(pile, labelling).total
    scan = scan or _scan(pile, labelling, depth, threads)
    details = {"sperner": True, "nl": True, "degree": degree, "central_cells": len(scan.yes),
               "unknown_cells": len(scan.unknown)}
    ok = abs(degree) == 1
    if pile.dim == 2:
        found = minimal_cells(pile, scan.yes)
        classes = [theorem_a_class(labelling, c) for c, _ in found]
        details["found_cells"] = [cell_record(pile, labelling, c, cert) for c, cert in found]
        details["theorem_a"] = bool(found) and all(k != "other" for k in classes)
        ok = ok and details["theorem_a"]
    if not ok:
        status = FAIL
    elif scan.yes:
        status = PASS
    elif scan.unknown:
        status = UNKNOWN
    else:
        status = FAIL
    return TheoremReport(name, status, details)


def check_all(complex_: CubicalComplex, labelling: Labelling, sperner: bool | None = None,
              depth: int = 12, threads: int = 1) -> dict:
    """Combined instance report used by the command line."""
    nl = validate_nl(complex_, labelling)
    doc = {"instance": labelling.instance_hash(), "nl": nl.ok}
    if not nl.ok:
        doc["violations"] = nl.violations
    scan = _scan(complex_, labelling, depth, threads)
    doc["central_cells"] = [cell_record(complex_, labelling, c, cert) for c, cert in scan.yes]
    doc["unknown_cells"] = [cell_record(complex_, labelling, c, cert) for c, cert in scan.unknown]
    reports = []
    if nl.ok:
        doc["deg_mod2"] = boundary_degree_mod2(complex_, labelling).total
        if complex_.orientable:
            doc["degree"] = boundary_degree(complex_, labelling).total
            reports.append(check_theorem1(complex_, labelling, scan=scan))
        reports.append(check_theorem2(complex_, labelling, scan=scan))
    if sperner is None:
        sperner = complex_.pile is not None
    if sperner:
        reports.append(check_sperner_theorems(complex_, labelling, scan=scan))
    doc["theorems"] = [r.to_dict() for r in reports]
    statuses = [r.status for r in reports] or [PASS if nl.ok else FAIL]
    if not nl.ok or FAIL in statuses:
        doc["status"] = FAIL
    elif UNKNOWN in statuses:
        doc["status"] = UNKNOWN
    else:
        doc["status"] = PASS
    return doc
