"""Closed-form kinematics of the Trotter mismatch rotation.

One Trotter step is the composition of two generator rotations by t/n; n steps
compose along a fixed axis, and multiplying by the inverse target rotation
(angle sqrt(2) t about (1,1,0)/sqrt(2)) leaves a single small mismatch rotation
(chi_n, nu_n).  Everything here is exact quaternion arithmetic: the n-fold step
power is taken by angle scaling on the shared axis, so the cost per (t, n) is
O(1) and no error accumulates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateTimeError
from .rotations import (
    EulerZYZ,
    UnitQuaternion,
    _canonical,
    angle_of,
    euler_from_quat,
    quat_multiply,
)

SQRT2 = math.sqrt(2.0)

#: Target rotation axis (1, 1, 0)/sqrt(2).
TARGET_AXIS = np.array([1.0, 1.0, 0.0]) / SQRT2
TARGET_AXIS.setflags(write=False)


class Ordering(enum.Enum):
    """Per-step factor order: Y_THEN_X applies the x rotation first."""

    Y_THEN_X = "yx"
    X_THEN_Y = "xy"


@dataclass(frozen=True)
class TrotterParams:
    t: float
    n: int
    ordering: Ordering = Ordering.Y_THEN_X

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not math.isfinite(self.t):
            raise ValueError("t must be finite")


@dataclass(frozen=True, eq=False)
class StepRotation:
    """Axis-angle of one Trotter step: omega_n = 2 arccos(cos^2(t/2n))."""

    omega_n: float
    rho_n: np.ndarray
    near_identity: bool = False


@dataclass(frozen=True, eq=False)
class EffectiveRotation:
    """The single rotation whose deficit from the identity is the Trotter error."""

    chi_n: float
    nu_n: np.ndarray
    euler: EulerZYZ
    near_identity: bool = False


def _step_quaternion(t: float, n: int, ordering: Ordering) -> UnitQuaternion:
    # q_y(t/n) * q_x(t/n) = (c^2, sc, sc, -s^2) with c = cos(t/2n), s = sin(t/2n);
    # the reversed ordering flips the z component.
    u = t / (2.0 * n)
    c, s = math.cos(u), math.sin(u)
    zsign = -1.0 if ordering is Ordering.Y_THEN_X else 1.0
    return _canonical(c * c, s * c, s * c, zsign * s * s)


def step_rotation(p: TrotterParams) -> StepRotation:
    omega, rho, near = angle_of(_step_quaternion(p.t, p.n, p.ordering))
    return StepRotation(omega, rho, near)


def _target_inverse_quaternion(t: float) -> UnitQuaternion:
    half = t / SQRT2  # half-angle of the sqrt(2) t target rotation
    s = math.sin(half)
    return _canonical(math.cos(half), -s * TARGET_AXIS[0], -s * TARGET_AXIS[1], 0.0)


def effective_rotation(p: TrotterParams) -> EffectiveRotation:
    """Mismatch rotation e^{+i sqrt(2) t nu.L} (step)^n as (chi_n, nu_n, Euler).

    The step power keeps the exact step axis (same-axis rotations add angles),
    so the tiny chi_n ~ 1/n is never produced by cancelling near-unit scalars.
    """
    q_step = _step_quaternion(p.t, p.n, p.ordering)
    vnorm = math.sqrt(q_step.x**2 + q_step.y**2 + q_step.z**2)
    if vnorm == 0.0:
        # The step is exactly the identity (t/2n a multiple of pi).
        q_pow = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
    else:
        omega = 2.0 * math.atan2(vnorm, q_step.w)
        half = 0.5 * p.n * omega
        scale = math.sin(half) / vnorm
        q_pow = _canonical(
            math.cos(half), scale * q_step.x, scale * q_step.y, scale * q_step.z
        )
    q_eff = quat_multiply(_target_inverse_quaternion(p.t), q_pow)
    chi, nu, near = angle_of(q_eff)
    euler = EulerZYZ(0.0, 0.0, 0.0) if near else euler_from_quat(q_eff)
    return EffectiveRotation(chi, nu, euler, near)


def chi_asymptote(t: float) -> float:
    """Coefficient c with chi_n ~ c / n: c = |t| |sin(t/sqrt(2))| / sqrt(2)."""
    return abs(t) * abs(math.sin(t / SQRT2)) / SQRT2


def limit_axis(t: float, ordering: Ordering = Ordering.Y_THEN_X) -> np.ndarray:
    """Limit of the mismatch axis nu_n as n -> infinity.

    The mismatch generator is the step-axis perturbation averaged along the
    target rotation, which tilts it out of the target plane:

        u(t) = (s/sqrt(2), -s/sqrt(2), -c),   s = sin(t/sqrt(2)), c = cos(t/sqrt(2))

    for Y_THEN_X ordering (x and y swap and z flips for the other ordering),
    up to the overall sign fixed by chi_n >= 0.  Note this does NOT approach
    the target axis (1,1,0)/sqrt(2): the axis of a vanishing rotation is set
    by the first-order mismatch, not by the limit of the composed factors.
    """
    if is_degenerate_time(t):
        raise DegenerateTimeError(
            f"t={t} is at a zero of sin(t/sqrt(2)); the mismatch axis has no limit"
        )
    s = math.sin(t / SQRT2)
    c = math.cos(t / SQRT2)
    # Overall sign fixed by the chi_n >= 0 convention of angle_of.
    u = math.copysign(1.0, t * s) * np.array([s / SQRT2, -s / SQRT2, -c])
    if ordering is Ordering.X_THEN_Y:
        u = -u
    return u


def beta_asymptote(t: float) -> float:
    """Coefficient b with beta_n ~ b / n: b = chi_asymptote(t) * |sin(t/sqrt(2))|.

    The Euler beta of the mismatch satisfies sin(beta/2) = sin(theta) sin(chi/2)
    with theta the polar angle of nu_n, and sin(theta_n) -> |sin(t/sqrt(2))|.
    """
    return chi_asymptote(t) * abs(math.sin(t / SQRT2))


def is_degenerate_time(t: float, tol: float = 1e-9) -> bool:
    """True when t is within tol of a zero of sin(t/sqrt(2)) (k pi sqrt(2))."""
    period = math.pi * SQRT2
    return abs(t - round(t / period) * period) < tol
