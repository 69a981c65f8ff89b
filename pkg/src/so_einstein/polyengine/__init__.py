"""Exact rational polynomial arithmetic, real-root isolation and resultants.

Rationals are :class:`fractions.Fraction` throughout.
"""

from .multipoly import BiPoly, MultiPoly
from .resultant import NothingToEliminate, bareiss_det, resultant, sylvester_matrix
from .roots import (
    NotSquarefreeError,
    RefinedRoot,
    RootInterval,
    SturmSequence,
    isolate_roots,
    positive_root_bound,
    refine_root,
    sturm_count,
)
from .textio import PolyFormatError, format_poly, parse_poly, read_poly, write_poly
from .unipoly import (
    UniPoly,
    ZeroDivisorError,
    as_rational,
    cauchy_bound,
    descartes_signs,
    is_squarefree,
    poly_gcd,
    sign_variations,
    squarefree_decomposition,
    squarefree_part,
)

__all__ = [
    "BiPoly", "MultiPoly", "UniPoly",
    "NothingToEliminate", "NotSquarefreeError", "PolyFormatError", "ZeroDivisorError",
    "RefinedRoot", "RootInterval", "SturmSequence",
    "as_rational", "bareiss_det", "cauchy_bound", "descartes_signs", "format_poly",
    "is_squarefree", "isolate_roots", "parse_poly", "poly_gcd", "positive_root_bound",
    "read_poly", "refine_root", "resultant", "sign_variations", "squarefree_decomposition",
    "squarefree_part", "sturm_count", "sylvester_matrix", "write_poly",
]
