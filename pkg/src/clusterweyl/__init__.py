"""Exact cluster-algebra engine for Weyl-group mutation sequences."""

from .laurent import LaurentPoly, NotDivisible, RationalFunction, lp_exact_div, rf_normalize
from .quiver import WeightedQuiver, amalgamate, find_isomorphism, glue
from .semifield import TropicalSemifield, UniversalSemifield, semifield_add

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "NotDivisible",
    "lp_exact_div",
    "rf_normalize",
    "WeightedQuiver",
    "amalgamate",
    "glue",
    "find_isomorphism",
    "TropicalSemifield",
    "UniversalSemifield",
    "semifield_add",
]
