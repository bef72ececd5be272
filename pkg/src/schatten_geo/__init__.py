"""Finsler geometry of p-Schatten unitary groups on finite matrix truncations.

Geodesics and rectifiable distance on the unitary group under Schatten
p-norms, convexity certificates for the powered distance, minimal liftings
and isometric lifts over Hermitian orbits, orbit geodesics with their pi/4
minimality certificates, and a seeded property-test harness exercising every
quantitative inequality at desk scale.
"""

__version__ = "0.1.0"

from .linalg import (  # noqa: F401
    as_hermitian,
    as_skew_hermitian,
    as_unitary,
    exp_skew,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    polar_unitary_part,
    save_matrix,
    schatten_norm,
    singular_values,
    SpectralDecomposition,
    spectral_projections,
    unitary_log,
)
from .expcalc import (  # noqa: F401
    AdOperator,
    dexp,
    dexp_inv,
    f_ad_apply,
    f_ad_inverse_apply,
    g_bound,
    hessian_H,
    hessian_Q,
    q_commutator_bound_check,
)
from .metric import (  # noqa: F401
    clarkson_check,
    convexity_profile,
    ConvexityProfile,
    curve_length,
    DiscretizedCurve,
    distance_p,
    first_variation_check,
    GeodesicSegment,
    geodesic_family_bound,
    minimality_experiment,
    semi_parallelogram_gap,
)
from .orbit import (  # noqa: F401
    best_approximant_Q,
    commutator_bound_check,
    commutator_with_base,
    cross_section,
    endpoint_geodesic,
    horizontal_lift_p2,
    isometric_lift,
    isotropy_algebra,
    LiftResult,
    min_gap_constant,
    minimal_lifting,
    nonclosedness_demo,
    NumericalError,
    orbit_geodesic,
    OrbitGeodesic,
    OrbitSpec,
    quotient_norm,
    sharpness_witness,
    SkewSubspace,
    solve_tangent_lift,
    trace_projection,
)
