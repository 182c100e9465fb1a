"""State-dependent Trotter error for the angular-momentum pair (L_x, L_y).

The Trotter product of x and y rotations is itself a rotation, so the
deviation from the target rotation collapses to a single small mismatch
rotation per step count n.  This package computes that mismatch exactly,
evaluates the state-dependent error xi_n on spherical-harmonic states,
verifies the 1/n rate for regular states, and certifies fractional
lower-bound rates for the two slow power-law families.
"""

from .analysis import (
    CurveRow,
    ErrorCurve,
    FitResult,
    curve_to_csv,
    curve_to_json,
    fit_exponent,
    geometric_grid,
    scan_n,
)
from .exceptions import (
    DegenerateTimeError,
    DenseCapError,
    InsufficientPointsError,
    QualityGateError,
)
from .kinematics import (
    Ordering,
    TrotterParams,
    beta_asymptote,
    chi_asymptote,
    effective_rotation,
    is_degenerate_time,
    limit_axis,
    step_rotation,
)
from .rotations import (
    AxisAngle,
    EulerZYZ,
    UnitQuaternion,
    angle_of,
    axis_angle,
    compose,
    euler_from_axis_angle,
    quat_from_axis_angle,
)
from .states import (
    SphericalState,
    apply_L,
    domain_summability,
    generator_matrices,
    make_basis_state,
    make_power_law_m0,
    make_power_law_top,
    state_from_json,
    state_to_json,
)
from .trotter_error import (
    ErrorPoint,
    LowerBoundCert,
    error_via_integral,
    lower_bound_m0,
    lower_bound_top,
    prefactor_asymptotic,
    prefactor_regular,
    trotter_error_exact,
    trotter_error_oracle,
)
from .wigner import D_00, D_ll, legendre, legendre_upper_bound, wigner_D

__version__ = "0.1.0"
