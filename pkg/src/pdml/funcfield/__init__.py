"""Exact arithmetic over F_p, F_p[t], and F_p(t)."""

from .poly import Poly
from .ratfunc import RatFunc
from .factor import (
    factor,
    is_irreducible,
    random_irreducible,
    squarefree_decomposition,
)
from .fqext import QuotientRing
from .places import (
    Place,
    valuation,
    places_of,
    product_formula_check,
    height,
    height_projective,
    height_inequality_check,
    northcott_enumerate,
)
from .polyz import BiPoly, DegreeCapExceeded, polyz_coefficient

__all__ = [
    "Poly",
    "RatFunc",
    "factor",
    "is_irreducible",
    "random_irreducible",
    "squarefree_decomposition",
    "QuotientRing",
    "Place",
    "valuation",
    "places_of",
    "product_formula_check",
    "height",
    "height_projective",
    "height_inequality_check",
    "northcott_enumerate",
    "BiPoly",
    "DegreeCapExceeded",
    "polyz_coefficient",
]
