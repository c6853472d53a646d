"""Exact motivic zeta functions from Newton polyhedra, SNC models and fan data."""

__version__ = "0.1.0"

from .genfun import RationalGF, cone_series, expand, gf_equal, gf_substitute, candidate_pole_set
from .grothring import GrothElement, Laurent, ClassSymbol, count_points, specialize
from .newton import Polynomial, parse_polynomial, check_nondegenerate, face_data
from .polycone import Cone, dual_cone, newton_polyhedron, enumerate_faces
from .zeta import zeta_newton, zeta_snc, zeta_from_fan_data, poles_newton, poles_log_smooth, surface_reduce

__all__ = [
    "RationalGF", "cone_series", "expand", "gf_equal", "gf_substitute", "candidate_pole_set",
    "GrothElement", "Laurent", "ClassSymbol", "count_points", "specialize",
    "Polynomial", "parse_polynomial", "check_nondegenerate", "face_data",
    "Cone", "dual_cone", "newton_polyhedron", "enumerate_faces",
    "zeta_newton", "zeta_snc", "zeta_from_fan_data", "poles_newton", "poles_log_smooth", "surface_reduce",
]
