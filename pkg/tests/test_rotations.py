"""Tests for the SO(3) representation layer."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trotter_rotations.rotations import (
    AxisAngle,
    UnitQuaternion,
    angle_of,
    axis_angle,
    compose,
    euler_from_axis_angle,
    euler_from_quat,
    inverse,
    quat_from_axis_angle,
    quat_from_euler,
    quat_multiply,
    unit_vector,
)

from conftest import oracle_euler_block, oracle_rotation_block, random_axis

SQ2 = math.sqrt(2.0)


class TestQuatFromAxisAngle:
    def test_identity(self):
        q = quat_from_axis_angle(axis_angle(0.0, [1, 0, 0]))
        assert (q.w, q.x, q.y, q.z) == (1.0, 0.0, 0.0, 0.0)

    def test_pi_about_z(self):
        q = quat_from_axis_angle(axis_angle(math.pi, [0, 0, 1]))
        assert abs(q.w) < 1e-15
        np.testing.assert_allclose([q.x, q.y, q.z], [0, 0, 1], atol=1e-15)

    def test_half_pi_about_x(self):
        q = quat_from_axis_angle(axis_angle(math.pi / 2, [1, 0, 0]))
        np.testing.assert_allclose([q.w, q.x, q.y, q.z], [SQ2 / 2, SQ2 / 2, 0, 0],
                                   atol=1e-15)

    def test_unit_norm(self, rng):
        for _ in range(50):
            r = axis_angle(rng.uniform(0, math.pi), random_axis(rng))
            q = quat_from_axis_angle(r)
            assert abs(q.w**2 + q.x**2 + q.y**2 + q.z**2 - 1.0) < 1e-12
            assert q.w >= 0.0


class TestAngleOf:
    def test_identity(self):
        angle, _, near = angle_of(UnitQuaternion(1.0, 0.0, 0.0, 0.0))
        assert angle == 0.0 and near

    def test_pi_about_z(self):
        angle, axis, near = angle_of(UnitQuaternion(0.0, 0.0, 0.0, 1.0))
        assert angle == pytest.approx(math.pi, abs=1e-15)
        np.testing.assert_allclose(axis, [0, 0, 1])
        assert not near

    def test_tiny_angle_keeps_relative_precision(self):
        # arccos of the scalar part would lose every digit here.
        half = 5e-9
        q = UnitQuaternion(math.cos(half), math.sin(half), 0.0, 0.0)
        angle, axis, near = angle_of(q)
        assert not near
        assert abs(angle - 1e-8) <= 1e-6 * 1e-8
        np.testing.assert_allclose(axis, [1, 0, 0])

    def test_round_trip_angles(self, rng):
        for _ in range(200):
            r = axis_angle(rng.uniform(1e-6, math.pi - 1e-6), random_axis(rng))
            angle, axis, _ = angle_of(quat_from_axis_angle(r))
            assert abs(angle - r.angle) < 1e-12
            np.testing.assert_allclose(axis, r.axis, atol=1e-12)


class TestCompose:
    def test_identity_left(self, rng):
        r = axis_angle(1.1, random_axis(rng))
        out = compose(axis_angle(0.0, [0, 0, 1]), r)
        assert abs(out.angle - r.angle) < 1e-14
        np.testing.assert_allclose(out.axis, r.axis, atol=1e-14)

    def test_coaxial_angles_add(self):
        out = compose(axis_angle(math.pi / 2, [0, 0, 1]), axis_angle(math.pi / 2, [0, 0, 1]))
        assert out.angle == pytest.approx(math.pi, abs=1e-14)
        np.testing.assert_allclose(out.axis, [0, 0, 1], atol=1e-14)

    def test_x_pi_then_y_pi_is_z_pi(self):
        # Axis sign fixed by the l=1 matrix-exponential oracle.
        out = compose(axis_angle(math.pi, [1, 0, 0]), axis_angle(math.pi, [0, 1, 0]))
        assert out.angle == pytest.approx(math.pi, abs=1e-12)
        np.testing.assert_allclose(out.axis, [0, 0, 1], atol=1e-12)
        lhs = oracle_rotation_block(1, math.pi, [1, 0, 0]) @ oracle_rotation_block(1, math.pi, [0, 1, 0])
        np.testing.assert_allclose(oracle_rotation_block(1, out.angle, out.axis), lhs, atol=1e-12)

    def test_matches_block_product_100_pairs(self, rng):
        # Representation faithfulness: U(compose(r1,r2)) = U(r1) U(r2) on l=1.
        for _ in range(100):
            r1 = axis_angle(rng.uniform(0.01, math.pi - 0.01), random_axis(rng))
            r2 = axis_angle(rng.uniform(0.01, math.pi - 0.01), random_axis(rng))
            out = compose(r1, r2)
            got = oracle_rotation_block(1, out.angle, out.axis)
            want = (oracle_rotation_block(1, r1.angle, r1.axis)
                    @ oracle_rotation_block(1, r2.angle, r2.axis))
            np.testing.assert_allclose(got, want, atol=1e-12)

    def test_half_angle_cosine_identity(self, rng):
        # cos(w/2) = cos(w1/2)cos(w2/2) - (n1.n2) sin(w1/2)sin(w2/2)
        for _ in range(100):
            r1 = axis_angle(rng.uniform(0.01, math.pi - 0.01), random_axis(rng))
            r2 = axis_angle(rng.uniform(0.01, math.pi - 0.01), random_axis(rng))
            out = compose(r1, r2)
            want = (math.cos(r1.angle / 2) * math.cos(r2.angle / 2)
                    - float(r1.axis @ r2.axis) * math.sin(r1.angle / 2) * math.sin(r2.angle / 2))
            assert abs(math.cos(out.angle / 2) - abs(want)) < 1e-12

    def test_inverse_is_near_identity(self, rng):
        r = axis_angle(rng.uniform(0.1, 3.0), random_axis(rng))
        out = compose(r, inverse(r))
        assert out.near_identity

    @settings(max_examples=50, deadline=None)
    @given(
        a1=st.floats(0.01, 3.0), a2=st.floats(0.01, 3.0), a3=st.floats(0.01, 3.0),
        seed=st.integers(0, 2**31),
    )
    def test_associativity(self, a1, a2, a3, seed):
        rng = np.random.default_rng(seed)
        r1, r2, r3 = (axis_angle(a, random_axis(rng)) for a in (a1, a2, a3))
        left = compose(compose(r1, r2), r3)
        right = compose(r1, compose(r2, r3))
        assert abs(left.angle - right.angle) < 1e-10
        if not (left.near_identity or right.near_identity):
            diff = min(np.abs(left.axis - right.axis).max(),
                       np.abs(left.axis + right.axis).max())
            if left.angle < math.pi - 1e-6:
                diff = np.abs(left.axis - right.axis).max()
            assert diff < 1e-10  # axis sign is free exactly at angle pi


class TestEuler:
    def test_z_axis_rotation(self):
        chi = 0.9
        e = euler_from_axis_angle(axis_angle(chi, [0, 0, 1]))
        assert e.beta == 0.0
        assert e.alpha + e.gamma == pytest.approx(chi, abs=1e-14)

    def test_x_axis_rotation(self):
        chi = 1.3
        e = euler_from_axis_angle(axis_angle(chi, [1, 0, 0]))
        assert e.alpha == pytest.approx(-math.pi / 2, abs=1e-14)
        assert e.beta == pytest.approx(chi, abs=1e-14)
        assert e.gamma == pytest.approx(math.pi / 2, abs=1e-14)

    def test_near_identity_gives_zero_triple(self):
        e = euler_from_axis_angle(axis_angle(0.0, [0, 1, 0]))
        assert (e.alpha, e.beta, e.gamma) == (0.0, 0.0, 0.0)

    def test_generic_rotation_against_block_oracle(self):
        # chi=1.1, theta=0.7, phi=2.0 in axis polar coordinates
        axis = [math.sin(0.7) * math.cos(2.0), math.sin(0.7) * math.sin(2.0), math.cos(0.7)]
        r = axis_angle(1.1, axis)
        e = euler_from_axis_angle(r)
        np.testing.assert_allclose(
            oracle_euler_block(1, e.alpha, e.beta, e.gamma),
            oracle_rotation_block(1, r.angle, r.axis),
            atol=1e-12,
        )

    def test_euler_stated_relations(self, rng):
        # sin(b/2)=sin(theta)sin(chi/2); tan((a+g)/2)=cos(theta)tan(chi/2);
        # (a-g)/2 = phi - pi/2 modulo 2 pi.
        for _ in range(50):
            chi = rng.uniform(0.05, math.pi - 0.05)
            theta, phi = rng.uniform(0.05, math.pi - 0.05), rng.uniform(0, 2 * math.pi)
            axis = [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi),
                    math.cos(theta)]
            e = euler_from_axis_angle(axis_angle(chi, axis))
            assert math.sin(e.beta / 2) == pytest.approx(
                math.sin(theta) * math.sin(chi / 2), abs=1e-12)
            assert math.tan((e.alpha + e.gamma) / 2) == pytest.approx(
                math.cos(theta) * math.tan(chi / 2), rel=1e-9, abs=1e-9)
            # Wrapping alpha or gamma alone by 2 pi shifts the half-difference
            # by pi, so the relation is branch-free only modulo pi.
            diff = (e.alpha - e.gamma) / 2 - (phi - math.pi / 2)
            assert abs(math.remainder(2 * diff, 2 * math.pi)) < 1e-11

    def test_quat_euler_round_trip(self, rng):
        for _ in range(100):
            r = axis_angle(rng.uniform(0.01, math.pi - 0.01), random_axis(rng))
            q = quat_from_axis_angle(r)
            q2 = quat_from_euler(euler_from_quat(q))
            np.testing.assert_allclose([q.w, q.x, q.y, q.z], [q2.w, q2.x, q2.y, q2.z],
                                       atol=1e-12)


class TestHelpers:
    def test_unit_vector_normalizes(self):
        np.testing.assert_allclose(unit_vector([3, 0, 4]), [0.6, 0, 0.8])

    def test_unit_vector_rejects_zero(self):
        with pytest.raises(ValueError):
            unit_vector([0, 0, 0])

    def test_axis_angle_wraps_into_range(self):
        r = axis_angle(-0.5, [0, 0, 1])
        assert r.angle == pytest.approx(0.5)
        np.testing.assert_allclose(r.axis, [0, 0, -1])
        r = axis_angle(2 * math.pi - 0.25, [0, 1, 0])
        assert r.angle == pytest.approx(0.25)
        np.testing.assert_allclose(r.axis, [0, -1, 0], atol=1e-15)

    def test_quat_multiply_canonical_sign(self):
        q = quat_multiply(UnitQuaternion(0.0, 0.0, 0.0, 1.0), UnitQuaternion(0.0, 0.0, 0.0, 1.0))
        assert q.w >= 0.0  # (0,0,0,1)^2 = (-1,0,0,0) canonicalized
        assert q.w == pytest.approx(1.0)
