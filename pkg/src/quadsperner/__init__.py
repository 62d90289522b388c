"""Centrally labelled cells and boundary degrees of labelled cubical complexes."""
from __future__ import annotations

from .central import CentralCertificate, Verdict, classify_labels, enumerate_central_cells, is_centrally_labelled, local_degree
from .complex import CubicalComplex, ComplexError, boundary, build_2complex, build_pile, carve
from .degree import DegreeReport, boundary_degree, boundary_degree_2d, boundary_degree_mod2, signed_interior_count
from .labelling import Labelling, LabellingError, random_sperner, validate_nl, validate_sperner
from .multilinear import MultilinearMap, coefficients, corner_range, evaluate, jacobian
from .theorems import check_sperner_theorems, check_theorem1, check_theorem2

__all__ = [
    "CentralCertificate", "ComplexError", "CubicalComplex", "DegreeReport", "Labelling",
    "LabellingError", "MultilinearMap", "Verdict", "boundary", "boundary_degree",
    "boundary_degree_2d", "boundary_degree_mod2", "build_2complex", "build_pile", "carve",
    "check_sperner_theorems", "check_theorem1", "check_theorem2", "classify_labels",
    "coefficients", "corner_range", "enumerate_central_cells", "evaluate",
    "is_centrally_labelled", "jacobian", "local_degree", "random_sperner",
    "signed_interior_count", "validate_nl", "validate_sperner",
]
