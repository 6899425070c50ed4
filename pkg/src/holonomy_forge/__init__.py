"""Holonomy of horizontally lifted closed curves over matrix-generated surfaces.

The pipeline: a nonzero complex matrix X defines a normalized surface inside
the pseudo-unitary group U(n, m); closed curves in the (r, theta) parameter
plane lift horizontally, and the endpoint mismatch of the lift is a unitary
holonomy computable in closed form from the singular values of X.  The
transport module integrates the same lift as an ODE for an independent check.
"""

from .algebra import (
    Check,
    Signature,
    SvdTriple,
    complex_svd,
    decompose_h_m,
    expm_generic,
    form_matrix,
    hat_embed,
    hermitian_form,
    is_pseudo_unitary,
    killing_inner,
    killing_norm,
    matrix_from_json,
    matrix_to_json,
)
from .config import DEFAULTS, RunConfig, Tolerances
from .curves import (
    ClosedCurve,
    circle,
    constant,
    curve_from_json,
    ellipse,
    from_polar_samples,
    reparametrize,
    reverse,
    star,
)
from .errors import (
    DimensionError,
    HolonomyForgeError,
    IllConditionedError,
    NotApplicableError,
    NotInAlgebraError,
    NumericalError,
    OrientationWarning,
    TrivialInputError,
)
from .estimator import SurfaceHolonomy
from .holonomy import (
    HolonomyResult,
    PsiTrajectory,
    VandermondeSystem,
    assemble_psi,
    corollary_diagonal_form,
    enclosed_area,
    holonomy,
    solve_psi_trajectory,
    span_membership_residual,
    vandermonde_system,
)
from .surface import (
    GeneratorTriple,
    GeodesicCheck,
    SurfaceSpec,
    TangentPair,
    build_surface,
    exp_surface_point,
    lie_generators,
    omega0_potential,
    omega1_density,
    omega1_potential,
    point_separation_check,
    surface_point,
    tangent_pushforwards,
    totally_geodesic_check,
)
from .transport import (
    TransportTrace,
    base_velocity_block,
    compare_holonomies,
    integrate_lift,
)

__version__ = "0.1.0"

__all__ = [
    "Check",
    "ClosedCurve",
    "DEFAULTS",
    "DimensionError",
    "GeneratorTriple",
    "GeodesicCheck",
    "HolonomyForgeError",
    "HolonomyResult",
    "IllConditionedError",
    "NotApplicableError",
    "NotInAlgebraError",
    "NumericalError",
    "OrientationWarning",
    "PsiTrajectory",
    "RunConfig",
    "Signature",
    "SurfaceHolonomy",
    "SurfaceSpec",
    "SvdTriple",
    "TangentPair",
    "Tolerances",
    "TransportTrace",
    "TrivialInputError",
    "VandermondeSystem",
    "assemble_psi",
    "base_velocity_block",
    "build_surface",
    "circle",
    "compare_holonomies",
    "complex_svd",
    "constant",
    "corollary_diagonal_form",
    "curve_from_json",
    "decompose_h_m",
    "ellipse",
    "enclosed_area",
    "exp_surface_point",
    "expm_generic",
    "form_matrix",
    "from_polar_samples",
    "hat_embed",
    "hermitian_form",
    "holonomy",
    "integrate_lift",
    "is_pseudo_unitary",
    "killing_inner",
    "killing_norm",
    "lie_generators",
    "matrix_from_json",
    "matrix_to_json",
    "omega0_potential",
    "omega1_density",
    "omega1_potential",
    "point_separation_check",
    "reparametrize",
    "reverse",
    "solve_psi_trajectory",
    "span_membership_residual",
    "star",
    "surface_point",
    "tangent_pushforwards",
    "totally_geodesic_check",
    "vandermonde_system",
    "__version__",
]
