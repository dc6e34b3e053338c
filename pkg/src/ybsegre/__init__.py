"""Yang-Baxter algebras of finite set-theoretic solutions and their Segre products."""

from .errors import (
    IdentityViolation,
    OracleSizeError,
    PreconditionError,
    SolutionFormatError,
    TruncationError,
)
from .groebner import (
    TruncatedGB,
    binomial_skew_conditions,
    hilbert_function,
    is_groebner_quadratic,
    normal_form,
    normal_monomials,
    pbw_check,
    truncated_groebner,
)
from .ncpoly import NcPolynomial, QuadraticPresentation, compare_deglex, leading_monomial, multiply, yb_presentation
from .oracle import exact_rank, quotient_dim_oracle
from .segre import (
    dim_identity_report,
    kernel_generators,
    segre_hilbert_check,
    segre_presentation,
    sigma23_transport,
    square_free_certificate,
    tensor_normal_form,
    z_presentation,
)
from .solution import (
    QuadraticSet,
    cartesian_product,
    classify,
    enumerate_solutions,
    load_solution,
    orbit_report,
    z_solution,
)

__version__ = "0.1.0"
