"""rrspace: exact Riemann-Roch spaces of plane projective curves.

The pipeline runs over finite fields and their on-demand extensions:
local branch analysis of curve singularities (Newton polygons plus Hensel
lifting), places and divisors with exact valuations, the adjoint divisor
and genus, a denominator/numerator linear-algebra stage producing bases of
function spaces, and two applications (evaluation codes and threshold
secret sharing).
"""

from .codes import (
    AGSecretScheme,
    GeneratorMatrix,
    SecretShares,
    ag_generator_matrix,
    reconstruct,
    rs_generator_matrix,
    share_secret,
)
from .divisors import (
    Divisor,
    IntersectionContext,
    adjoint_divisor,
    divisor_of_function,
    ensure_irreducible,
    genus,
    global_divisor,
    intersect,
    local_divisor,
    singular_locus,
)
from .gf import (
    GF,
    FieldElement,
    UniPoly,
    build_extension,
    embed,
    factor_univariate,
    find_roots,
    parse_field,
)
from .lifting import (
    BiSeries,
    LiftResult,
    hensel_classic,
    hensel_weighted,
    unit_monic_factor,
    weierstrass,
)
from .newton import (
    NewtonPolygon,
    WeightedValuation,
    component,
    initial_form,
    newton_polygon,
    newton_polynomial,
    slab,
    wval,
)
from .places import (
    INFINITE_VALUATION,
    LocalFactorization,
    Place,
    local_branches,
    parametrize,
    place_valuation,
    valuation_via_parametrization,
)
from .polyring import (
    BiPoly,
    ProjPoint,
    SeriesPoly,
    TriHomog,
    TruncSeries,
    coord_change,
    dehomogenize,
    homogenize,
    resultant_y,
)
from .riemannroch import (
    RRBasis,
    find_denominator,
    rr_basis,
    rr_line_affine,
    rr_line_projective,
    vanishing_conditions,
    verify_basis,
)

__all__ = [
    "AGSecretScheme",
    "BiPoly",
    "BiSeries",
    "Divisor",
    "FieldElement",
    "GF",
    "GeneratorMatrix",
    "INFINITE_VALUATION",
    "IntersectionContext",
    "LiftResult",
    "LocalFactorization",
    "NewtonPolygon",
    "Place",
    "ProjPoint",
    "RRBasis",
    "SecretShares",
    "SeriesPoly",
    "TriHomog",
    "TruncSeries",
    "UniPoly",
    "WeightedValuation",
    "adjoint_divisor",
    "ag_generator_matrix",
    "build_extension",
    "component",
    "coord_change",
    "dehomogenize",
    "divisor_of_function",
    "embed",
    "ensure_irreducible",
    "factor_univariate",
    "find_denominator",
    "find_roots",
    "genus",
    "global_divisor",
    "hensel_classic",
    "hensel_weighted",
    "homogenize",
    "initial_form",
    "intersect",
    "local_branches",
    "local_divisor",
    "newton_polygon",
    "newton_polynomial",
    "parametrize",
    "parse_field",
    "place_valuation",
    "reconstruct",
    "resultant_y",
    "rr_basis",
    "rr_line_affine",
    "rr_line_projective",
    "rs_generator_matrix",
    "share_secret",
    "singular_locus",
    "slab",
    "unit_monic_factor",
    "valuation_via_parametrization",
    "vanishing_conditions",
    "verify_basis",
    "weierstrass",
    "wval",
]

__version__ = "0.1.0"
