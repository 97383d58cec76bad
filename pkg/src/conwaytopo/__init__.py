"""Exact arithmetic on Conway topographs of integer binary quadratic forms."""
from .cfrac import (
    ContinuedFraction,
    cf_canonical,
    cf_conjugate,
    cf_expand,
    cf_is_pure_periodic,
    cf_negate,
    cf_normalize,
    cf_value,
    parse_cf,
    qi_is_galois,
)
from .errors import DomainError, ParseError
from .lyapunov import (
    GrowthSeries,
    Path,
    lambda_form,
    lambda_monoid,
    lambda_monoid_exact,
    path_matrices,
    sandwich_check,
    spectral_radius,
    theorem_ratio,
)
from .quadratic import (
    QuadraticIrrational,
    parse_value,
    qi_compare,
    qi_conjugate,
    qi_floor,
    qi_normalize,
    qi_recip_shift,
)
from .river import find_lakes, find_river, river_by_sign_steering
from .topograph import (
    FormClass,
    QuadraticForm,
    SuperbaseTriple,
    TopographCursor,
    classify_form,
    hat_matrix,
    is_galois_form,
    parse_form,
    roots,
    step,
    transform_form,
    walk,
)

__version__ = "0.1.0"

__all__ = [
    "ContinuedFraction",
    "cf_canonical",
    "cf_conjugate",
    "cf_expand",
    "cf_is_pure_periodic",
    "cf_negate",
    "cf_normalize",
    "cf_value",
    "parse_cf",
    "qi_is_galois",
    "DomainError",
    "ParseError",
    "GrowthSeries",
    "Path",
    "lambda_form",
    "lambda_monoid",
    "lambda_monoid_exact",
    "path_matrices",
    "sandwich_check",
    "spectral_radius",
    "theorem_ratio",
    "QuadraticIrrational",
    "parse_value",
    "qi_compare",
    "qi_conjugate",
    "qi_floor",
    "qi_normalize",
    "qi_recip_shift",
    "find_lakes",
    "find_river",
    "river_by_sign_steering",
    "FormClass",
    "QuadraticForm",
    "SuperbaseTriple",
    "TopographCursor",
    "classify_form",
    "hat_matrix",
    "is_galois_form",
    "parse_form",
    "roots",
    "step",
    "transform_form",
    "walk",
]
