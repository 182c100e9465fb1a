"""Tests for the Trotter step and mismatch-rotation kinematics."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from trotter_rotations.exceptions import DegenerateTimeError
from trotter_rotations.kinematics import (
    SQRT2,
    TARGET_AXIS,
    Ordering,
    TrotterParams,
    beta_asymptote,
    chi_asymptote,
    effective_rotation,
    is_degenerate_time,
    limit_axis,
    step_rotation,
)

from conftest import oracle_generators, oracle_rotation_block

# sin(1/sqrt(2))/sqrt(2) at 40 digits: 0.4593626849327842188921...
CHI_ASYM_T1 = 0.4593626849327842
# n * omega_n at t=1, n=1e6, evaluated at 40 digits: 1.414213562373065586019...
N_OMEGA_T1_N1E6 = 1.4142135623730656


def closed_form_rho(t, n, ordering):
    c, s = math.cos(t / (2 * n)), math.sin(t / (2 * n))
    z = -s if ordering is Ordering.Y_THEN_X else s
    return np.array([c, c, z]) / math.sqrt(1 + c * c)


class TestStepRotation:
    def test_t_zero_is_identity(self):
        step = step_rotation(TrotterParams(0.0, 5))
        assert step.omega_n == 0.0 and step.near_identity

    def test_t_pi_n_1(self):
        step = step_rotation(TrotterParams(math.pi, 1))
        assert step.omega_n == pytest.approx(math.pi, abs=1e-12)

    def test_omega_closed_form(self):
        for t in (0.3, 1.0, 2.5):
            for n in (1, 3, 10, 1000):
                step = step_rotation(TrotterParams(t, n))
                want = 2 * math.acos(math.cos(t / (2 * n)) ** 2)
                assert abs(step.omega_n - want) < 1e-12

    def test_rho_closed_form_both_orderings(self):
        for ordering in Ordering:
            for t, n in [(0.7, 2), (1.0, 9), (2.2, 40)]:
                step = step_rotation(TrotterParams(t, n, ordering))
                np.testing.assert_allclose(
                    step.rho_n, closed_form_rho(t, n, ordering), atol=1e-12)

    def test_step_matches_operator_product(self, rng):
        # The step rotation must equal the two-factor block product on l=1.
        for ordering, order_fn in [
            (Ordering.Y_THEN_X, lambda uy, ux: uy @ ux),
            (Ordering.X_THEN_Y, lambda uy, ux: ux @ uy),
        ]:
            t, n = 1.3, 3
            step = step_rotation(TrotterParams(t, n, ordering))
            ux = oracle_rotation_block(1, t / n, [1, 0, 0])
            uy = oracle_rotation_block(1, t / n, [0, 1, 0])
            np.testing.assert_allclose(
                oracle_rotation_block(1, step.omega_n, step.rho_n),
                order_fn(uy, ux), atol=1e-12)

    def test_n_omega_limit_at_1e6(self):
        step = step_rotation(TrotterParams(1.0, 10**6))
        assert abs(10**6 * step.omega_n - SQRT2) <= 1e-10
        assert abs(10**6 * step.omega_n - N_OMEGA_T1_N1E6) <= 1e-12

    def test_n_omega_approaches_sqrt2_t(self):
        t = 0.8
        devs = [abs(n * step_rotation(TrotterParams(t, n)).omega_n - SQRT2 * t)
                for n in (100, 1000, 10000)]
        assert devs[0] > devs[1] > devs[2]

    def test_rho_approaches_target_axis(self):
        t = 1.0
        dists = [np.linalg.norm(step_rotation(TrotterParams(t, n)).rho_n - TARGET_AXIS)
                 for n in (10, 100, 1000, 10000)]
        assert all(a > b for a, b in zip(dists, dists[1:]))
        assert dists[-1] < 1e-4


class TestEffectiveRotation:
    def test_t_zero_identity(self):
        eff = effective_rotation(TrotterParams(0.0, 7))
        assert eff.chi_n == 0.0 and eff.near_identity

    def test_matches_block_oracle_n1(self):
        t = 1.0
        eff = effective_rotation(TrotterParams(t, 1))
        jx, jy, _ = oracle_generators(1)
        brute = expm(1j * SQRT2 * t * (jx + jy) / SQRT2) @ (
            expm(-1j * t * jy) @ expm(-1j * t * jx))
        np.testing.assert_allclose(
            oracle_rotation_block(1, eff.chi_n, eff.nu_n), brute, atol=1e-10)

    @pytest.mark.parametrize("n", [1, 2, 5, 16, 64])
    @pytest.mark.parametrize("ell", [1, 2, 3])
    def test_exactness_vs_brute_force_blocks(self, ell, n):
        # chi_n, nu_n reproduce the full n-step block product on H_l, l <= 3.
        t = 1.1
        eff = effective_rotation(TrotterParams(t, n))
        jx, jy, _ = oracle_generators(ell)
        step = expm(-1j * (t / n) * jy) @ expm(-1j * (t / n) * jx)
        power = np.linalg.matrix_power(step, n)
        brute = expm(1j * t * (jx + jy)) @ power
        np.testing.assert_allclose(
            oracle_rotation_block(ell, eff.chi_n, eff.nu_n), brute, atol=1e-10)

    def test_chi_n_times_n_converges(self):
        t = 1.0
        eff = effective_rotation(TrotterParams(t, 10**6))
        assert abs(eff.chi_n * 10**6 - CHI_ASYM_T1) <= 1e-4 * CHI_ASYM_T1

    @pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
    def test_n_chi_matches_asymptote(self, t):
        eff = effective_rotation(TrotterParams(t, 10**5))
        assert abs(eff.chi_n * 10**5 - chi_asymptote(t)) <= 1e-3 * chi_asymptote(t)

    @pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
    @pytest.mark.parametrize("ordering", list(Ordering))
    def test_mismatch_axis_tilts_away_from_target(self, t, ordering):
        # The mismatch axis does NOT approach the target axis (1,1,0)/sqrt(2):
        # its limit is the first-order perturbation direction, which carries a
        # z component cos(t/sqrt(2)) out of the target plane.
        eff = effective_rotation(TrotterParams(t, 10**6, ordering))
        np.testing.assert_allclose(eff.nu_n, limit_axis(t, ordering), atol=1e-5)
        assert np.linalg.norm(eff.nu_n - TARGET_AXIS) > 0.5

    @pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
    def test_beta_over_chi_approaches_sin_t(self, t):
        # sin(theta_n) -> |sin(t/sqrt(2))|, so beta_n/chi_n approaches it too.
        eff = effective_rotation(TrotterParams(t, 10**5))
        assert eff.euler.beta / eff.chi_n == pytest.approx(
            abs(math.sin(t / SQRT2)), rel=1e-3)
        assert 10**5 * eff.euler.beta == pytest.approx(beta_asymptote(t), rel=1e-3)

    def test_orderings_mirror_in_xy(self):
        # Conjugating by the pi rotation about the target axis swaps the step
        # factors, so the xy mismatch axis is the yx one with x, y swapped and
        # z negated, at the same angle.
        t, n = 0.9, 7
        a = effective_rotation(TrotterParams(t, n, Ordering.Y_THEN_X))
        b = effective_rotation(TrotterParams(t, n, Ordering.X_THEN_Y))
        assert a.chi_n == pytest.approx(b.chi_n, rel=1e-12)
        np.testing.assert_allclose(
            b.nu_n, [a.nu_n[1], a.nu_n[0], -a.nu_n[2]], atol=1e-12)


class TestAsymptotes:
    def test_chi_asymptote_values(self):
        assert chi_asymptote(0.0) == 0.0
        assert chi_asymptote(SQRT2 * math.pi) == pytest.approx(0.0, abs=1e-15)
        assert chi_asymptote(1.0) == pytest.approx(CHI_ASYM_T1, abs=1e-15)

    def test_limit_axis_unit_norm(self):
        for t in (0.5, 1.0, 2.0, 3.0):
            assert np.linalg.norm(limit_axis(t)) == pytest.approx(1.0, abs=1e-14)

    def test_limit_axis_degenerate_raises(self):
        with pytest.raises(DegenerateTimeError):
            limit_axis(SQRT2 * math.pi)

    def test_degenerate_time_detection(self):
        assert is_degenerate_time(0.0)
        assert is_degenerate_time(SQRT2 * math.pi)
        assert is_degenerate_time(2 * SQRT2 * math.pi + 5e-10)
        assert not is_degenerate_time(1.0)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            TrotterParams(1.0, 0)
        with pytest.raises(ValueError):
            TrotterParams(math.inf, 3)
