"""Exact perturbative eigenfunctions of the elliptic Ruijsenaars system."""

from .errors import (ConfigError, DimensionMismatch, EigenvalueCollision,
                     GenericityViolation, NonConstantRatio, NonExactDivision,
                     NonUnitSeries, NotSymmetric, PoleProximity,
                     RuijsenaarsError, TriangularityViolation)
from .laurent import LaurentPoly, weyl_denominator
from .operators import OperatorContext, SymbolTable
from .symfunc import MBasis, dominance_leq, dominant_below

__all__ = [
    "ConfigError", "DimensionMismatch", "EigenvalueCollision",
    "GenericityViolation", "NonConstantRatio", "NonExactDivision",
    "NonUnitSeries", "NotSymmetric", "PoleProximity", "RuijsenaarsError",
    "TriangularityViolation",
    "LaurentPoly", "weyl_denominator",
    "OperatorContext", "SymbolTable",
    "MBasis", "dominance_leq", "dominant_below",
]

__version__ = "0.1.0"
