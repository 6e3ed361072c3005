"""Numerical geometry of the restricted Grassmannian in finite dimension."""
from .errors import (
    InvalidInput,
    NotInSectionDomain,
    NotSameOrbit,
    NumericalFailure,
    ResgrassError,
    SingularInput,
)
from .grassmannian import (
    GeodesicSolution,
    SubspaceSplit,
    check_projection,
    codiagonal_lift,
    cross_section,
    grass_distance,
    grass_geodesic_eval,
    grass_log_bv,
    projection_from_basis,
    solve_geodesic,
    subspace_split,
    symmetry_differential,
    symmetry_embed,
    tangent_project,
)
from .lab import (
    TrialReport,
    competitor_curve,
    inequality_experiment,
    metric_sandwich_experiment,
    minimality_experiment,
    random_projection_pair,
    unitary_minimality_experiment,
)
from .lengths import (
    DiscretizedCurve,
    chordal_length,
    curve_length,
    jensen_compression_slack,
    jensen_pinch_slack,
    minkowski_slack,
)
from .linalg import (
    expm_skew,
    herm_eig,
    hs_norm,
    jacobi_eigh,
    logm_unitary,
    opnorm,
    polar_unitary,
    schatten_norm,
    trace_inner,
)
from .unitary import (
    UnitaryGeodesic,
    critical_ratio,
    sphere_projection,
    spectral_direction,
    unitary_distance,
    unitary_geodesic_eval,
    unitary_log_bv,
)

__version__ = "0.1.0"
