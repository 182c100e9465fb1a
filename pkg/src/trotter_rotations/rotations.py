"""Exact SO(3) arithmetic on axis-angle, unit-quaternion, and ZYZ-Euler forms.

The quaternion (w, v) = (cos(chi/2), sin(chi/2) * axis) stands for the unitary
e^{-i chi axis.L}, and the Hamilton product realizes operator composition:
U(q1 * q2) = U(q1) U(q2).  All angles are extracted with atan2 on the vector
norm, never arccos of the scalar part, so rotations with chi ~ 1e-8 keep full
relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Below this vector norm the rotation axis is numerically undefined and the
# canonical placeholder axis +z is reported instead.
NEAR_IDENTITY_NORM = 1e-14

_PLACEHOLDER_AXIS = np.array([0.0, 0.0, 1.0])
_PLACEHOLDER_AXIS.setflags(write=False)

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])
for _a in (X_AXIS, Y_AXIS, Z_AXIS):
    _a.setflags(write=False)


def unit_vector(v) -> np.ndarray:
    """Normalize a 3-vector, rejecting near-zero input."""
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    norm = math.sqrt(float(v @ v))
    if norm < NEAR_IDENTITY_NORM:
        raise ValueError("direction vector has (near-)zero length")
    return v / norm


@dataclass(frozen=True, eq=False)
class AxisAngle:
    """Rotation by ``angle`` in [0, pi] about the unit vector ``axis``.

    ``near_identity`` marks rotations whose axis is numerically undefined;
    the axis is then the canonical placeholder +z.
    """

    angle: float
    axis: np.ndarray
    near_identity: bool = False


@dataclass(frozen=True, eq=False)
class UnitQuaternion:
    """Unit quaternion with canonical sign w >= 0 (double cover resolved)."""

    w: float
    x: float
    y: float
    z: float

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class EulerZYZ:
    """ZYZ Euler angles: rotate by gamma about z, beta about y, alpha about z."""

    alpha: float
    beta: float
    gamma: float


IDENTITY = UnitQuaternion(1.0, 0.0, 0.0, 0.0)


def axis_angle(angle: float, axis) -> AxisAngle:
    """Canonical axis-angle: angle reduced to [0, pi], axis flipped as needed."""
    ax = unit_vector(axis)
    angle = math.remainder(angle, 2.0 * math.pi)  # (-pi, pi]
    if angle < 0.0:
        angle, ax = -angle, -ax
    if angle < NEAR_IDENTITY_NORM:
        return AxisAngle(angle, _PLACEHOLDER_AXIS, near_identity=True)
    return AxisAngle(angle, ax)


def _canonical(w: float, x: float, y: float, z: float) -> UnitQuaternion:
    if w < 0.0:
        w, x, y, z = -w, -x, -y, -z
    return UnitQuaternion(w, x, y, z)


def quat_from_axis_angle(r: AxisAngle) -> UnitQuaternion:
    """q = (cos(angle/2), sin(angle/2) * axis); w >= 0 since angle <= pi."""
    half = 0.5 * r.angle
    s = math.sin(half)
    return _canonical(math.cos(half), s * r.axis[0], s * r.axis[1], s * r.axis[2])


def quat_multiply(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    """Hamilton product (canonicalized).  U(a*b) = U(a) U(b)."""
    w = a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z
    x = a.w * b.x + b.w * a.x + (a.y * b.z - a.z * b.y)
    y = a.w * b.y + b.w * a.y + (a.z * b.x - a.x * b.z)
    z = a.w * b.z + b.w * a.z + (a.x * b.y - a.y * b.x)
    return _canonical(w, x, y, z)


def quat_conjugate(q: UnitQuaternion) -> UnitQuaternion:
    return _canonical(q.w, -q.x, -q.y, -q.z)


def angle_of(q: UnitQuaternion) -> tuple[float, np.ndarray, bool]:
    """Extract (angle, axis, near_identity) from a unit quaternion.

    Uses angle = 2*atan2(|v|, w), which keeps full relative precision for
    angles near 0 and near pi, unlike arccos(w).
    """
    vnorm = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    w = abs(q.w)  # tolerate non-canonical input
    angle = 2.0 * math.atan2(vnorm, w)
    if vnorm < NEAR_IDENTITY_NORM:
        return angle, _PLACEHOLDER_AXIS, True
    axis = np.array([q.x, q.y, q.z]) / vnorm
    if q.w < 0.0:
        axis = -axis
    return angle, axis, False


def axis_angle_of(q: UnitQuaternion) -> AxisAngle:
    angle, axis, near = angle_of(q)
    return AxisAngle(angle, axis, near)


def compose(r1: AxisAngle, r2: AxisAngle) -> AxisAngle:
    """Axis-angle of the operator product U(r1) U(r2) (r1 applied after r2)."""
    return axis_angle_of(quat_multiply(quat_from_axis_angle(r1), quat_from_axis_angle(r2)))


def inverse(r: AxisAngle) -> AxisAngle:
    return AxisAngle(r.angle, -np.asarray(r.axis), r.near_identity)


def _wrap_pi(a: float) -> float:
    """Reduce to (-pi, pi]."""
    a = math.remainder(a, 2.0 * math.pi)
    if a <= -math.pi:
        a += 2.0 * math.pi
    return a


def euler_from_quat(q: UnitQuaternion) -> EulerZYZ:
    """Branch-safe ZYZ Euler angles of a unit quaternion.

    With q = qz(alpha) qy(beta) qz(gamma) the components satisfy
        w = cos(b/2) cos((a+g)/2),  z = cos(b/2) sin((a+g)/2),
        y = sin(b/2) cos((a-g)/2),  x = -sin(b/2) sin((a-g)/2),
    so beta, (a+g)/2 and (a-g)/2 all come out of atan2 with no cancellation.
    """
    w, x, y, z = q.w, q.x, q.y, q.z
    if w < 0.0:
        w, x, y, z = -w, -x, -y, -z
    sin_half = math.hypot(x, y)
    cos_half = math.hypot(w, z)
    beta = 2.0 * math.atan2(sin_half, cos_half)
    half_sum = math.atan2(z, w) if cos_half > 0.0 else 0.0
    half_diff = math.atan2(-x, y) if sin_half > 0.0 else 0.0
    return EulerZYZ(_wrap_pi(half_sum + half_diff), beta, _wrap_pi(half_sum - half_diff))


def euler_from_axis_angle(r: AxisAngle) -> EulerZYZ:
    if r.near_identity:
        return EulerZYZ(0.0, 0.0, 0.0)
    return euler_from_quat(quat_from_axis_angle(r))


def quat_from_euler(e: EulerZYZ) -> UnitQuaternion:
    qa = _canonical(math.cos(e.alpha / 2), 0.0, 0.0, math.sin(e.alpha / 2))
    qb = _canonical(math.cos(e.beta / 2), 0.0, math.sin(e.beta / 2), 0.0)
    qg = _canonical(math.cos(e.gamma / 2), 0.0, 0.0, math.sin(e.gamma / 2))
    return quat_multiply(quat_multiply(qa, qb), qg)
