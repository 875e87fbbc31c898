"""cubeharm: exact integration and identity verification for harmonic
polynomials on hypercubes, with a one-sided L1 approximation toolkit and an
independent floating-point oracle."""

from .integrate import CubeDomain, Region, Weight, integrate_boundary, integrate_cube, integrate_diagonal, measure
from .identities import (
    Identity,
    IdentityReport,
    NotPolyharmonicError,
    SuiteConfig,
    WeightConditionError,
    residual_pizzetti,
    residual_surface_mean,
    residual_volume_mean,
    residual_weighted_quadrature,
    run_suite,
)
from .kernel import BasisRequest, BasisSet, graded_basis, homogeneous_kernel, is_polyharmonic
from .onesided import (
    ApproxCertificate,
    OneSidedness,
    certify_best_approx,
    check_onesided,
    gradient_vanishes_on_diagonal,
    vanishes_on_diagonal,
    weighted_l1_error,
)
from .oracle import (
    QuadratureSpec,
    gauss_legendre,
    numeric_integrate_boundary,
    numeric_integrate_cube,
    numeric_integrate_diagonal,
    numeric_l1,
)
from .parser import ExprSource, ExprSyntaxError, parse_poly, parse_unipoly
from .poly import (
    DimensionMismatchError,
    Limits,
    Poly,
    UniPoly,
    evaluate,
    iterated_laplacian,
    laplacian,
    partial,
    poly_to_text,
    rational_to_text,
    uni_to_text,
)

__version__ = "0.1.0"
