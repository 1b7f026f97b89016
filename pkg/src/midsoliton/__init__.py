"""Polygon and curve solitons of the midpoint maps M_alpha."""

from .affine import AffineMap
from .curvature import (ArcLengthMap, CurvatureReport, arclength_map, beta, classify,
                        general_affine_curvature, k_invariant,
                        numeric_equi_affine_curvature)
from .curve import (CurveSamples, SolitonSpec, curve_derivatives, curve_point,
                    family_map, sample, subgroup_element, verify_curve_soliton)
from .errors import (AlphaOutOfRange, DegenerateCurve, DimensionError,
                     EigenvalueObstruction, EmptyResult, MatrixOverflow, NoRealLog,
                     NotInvertible, ParseError, SolitonError, UndefinedInvariant)
from .kernel import Spectrum2, det, f_b, inverse, mat_exp, real_log, solve, spectrum2, trace
from .polygon import (PolygonWindow, SolitonResidual, embed_on_curve, midpoints_map,
                      soliton_polygon, t_map, verify_soliton)

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "ArcLengthMap", "CurvatureReport", "arclength_map", "beta", "classify",
    "general_affine_curvature", "k_invariant", "numeric_equi_affine_curvature", "CurveSamples",
    "SolitonSpec", "curve_derivatives", "curve_point", "family_map", "sample",
    "subgroup_element", "verify_curve_soliton", "AlphaOutOfRange", "DegenerateCurve",
    "DimensionError", "EigenvalueObstruction", "EmptyResult", "MatrixOverflow", "NoRealLog",
    "NotInvertible", "ParseError", "SolitonError", "UndefinedInvariant", "Spectrum2", "det",
    "f_b", "inverse", "mat_exp", "real_log", "solve", "spectrum2", "trace", "PolygonWindow",
    "SolitonResidual", "embed_on_curve", "midpoints_map", "soliton_polygon", "t_map",
    "verify_soliton",
]
