"""Exact Trotter error, brute-force oracle, and lower-bound certificates.

The exact path evaluates ||(D(chi_n, nu_n) - I) psi|| blockwise: single-m
blocks reduce to 2 - 2 Re D_mm (columns of a unitary have unit norm), with
O(l)/O(1) element paths for m = 0 and |m| = l, so the power-law families run
to L_max ~ 1e7.  The oracle multiplies n explicit step matrices per block and
shares nothing with the closed-form path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import wigner
from ._kernels import m0_deficit_sum, top_deficit_sum
from .exceptions import DegenerateTimeError, DenseCapError
from .kinematics import (
    Ordering,
    TrotterParams,
    chi_asymptote,
    effective_rotation,
    is_degenerate_time,
    limit_axis,
)
from .rotations import EulerZYZ
from .states import (
    FiniteSupport,
    PowerLawM0,
    PowerLawTop,
    SphericalState,
    apply_L,
    generator_matrices,
)

#: Chord constant of the Legendre lower-bound chain: 1 - 2^(-1/4).
KAPPA = 1.0 - 2.0 ** -0.25


@dataclass(frozen=True)
class ErrorPoint:
    n: int
    xi: float
    tail_bound: float
    degenerate_t: bool


@dataclass(frozen=True)
class LowerBoundCert:
    """Certified lower bound on xi_n for one of the power-law families.

    ``L_n`` is the chain cutoff from beta_n; ``value`` uses the cutoff clipped
    at the compared state's L_max so it stays valid against the truncation.
    """

    n: int
    value: float
    family: str  # "M0" or "Top"
    L_n: int
    truncated: bool


# ---------------------------------------------------------------------------
# Exact error (block-diagonal effective rotation)
# ---------------------------------------------------------------------------

def _single_m_of(block: np.ndarray) -> int | None:
    """Index m of the only nonzero coefficient, or None for multi-m blocks."""
    nz = np.flatnonzero(block)
    if len(nz) != 1:
        return None
    ell = (len(block) - 1) // 2
    return int(nz[0]) - ell


def _deficit_single_m(ell: int, m: int, beta: float, apg: float) -> float:
    """||(D - I) e_m||^2 = 2 (1 - Re D_mm) on a unitary block."""
    if ell == 0:
        return 0.0
    if m == 0:
        return 2.0 * wigner.one_minus_D_00(ell, beta)
    if abs(m) == ell:
        # d_{-l,-l} = d_{ll} and the phase conjugates; Re D is the same.
        return 2.0 * wigner.one_minus_Re_D_ll(ell, beta, apg)
    d = wigner.wigner_D(ell, EulerZYZ(apg, beta, 0.0))
    return 2.0 * (1.0 - d.element(m, m).real)


def trotter_error_exact(
    state: SphericalState,
    t: float,
    n: int,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> ErrorPoint:
    """xi_n on the stored truncation, plus the analytic truncation tail bound.

    tail_bound = 2 sqrt(tail mass) bounds |xi_untruncated - xi| since the
    dropped blocks satisfy ||(D - I) psi_l|| <= 2 ||psi_l||.
    """
    eff = effective_rotation(TrotterParams(t, n, ordering))
    degenerate = is_degenerate_time(t)
    tail = 2.0 * math.sqrt(state.tail_mass())
    if eff.near_identity:
        return ErrorPoint(n, 0.0, tail, degenerate)
    beta = eff.euler.beta
    apg = eff.euler.alpha + eff.euler.gamma

    law = state.law
    if isinstance(law, PowerLawM0):
        omx = 2.0 * math.sin(beta / 2.0) ** 2
        xi_sq = law.C * m0_deficit_sum(law.L_max, omx, law.gamma)
        return ErrorPoint(n, math.sqrt(xi_sq), tail, degenerate)
    if isinstance(law, PowerLawTop):
        log_c2 = 2.0 * math.log(math.cos(beta / 2.0)) if beta < math.pi else -math.inf
        xi_sq = law.C * top_deficit_sum(law.L_max, log_c2, apg, law.gamma)
        return ErrorPoint(n, math.sqrt(xi_sq), tail, degenerate)

    xi_sq = 0.0
    for ell in state.populated_ells():
        block = state.block(ell)
        m = _single_m_of(block)
        if m is not None:
            weight = abs(block[m + ell]) ** 2
            xi_sq += _deficit_single_m(ell, m, beta, apg) * weight
        else:
            d = wigner.wigner_D(ell, eff.euler)
            diff = d.entries @ block - block
            xi_sq += float(np.vdot(diff, diff).real)
    return ErrorPoint(n, math.sqrt(xi_sq), tail, degenerate)


# ---------------------------------------------------------------------------
# Brute-force oracle (definition, no reduction)
# ---------------------------------------------------------------------------

def _evolution(H: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i angle H) for Hermitian H via eigendecomposition."""
    lam, vec = np.linalg.eigh(H)
    return (vec * np.exp(-1j * angle * lam)) @ vec.conj().T


def trotter_error_oracle(
    state: SphericalState,
    t: float,
    n: int,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> float:
    """xi_n from the definition: n explicit step-matrix products per block.

    Deliberately independent of the effective-rotation reduction: the step
    power is built by repeated multiplication, never by same-axis angle
    scaling.  Cost is n matrix products per block; n <= ~1e4 is sensible.
    """
    if not isinstance(state.law, FiniteSupport):
        raise DenseCapError("the oracle needs dense blocks; use a finite-support state")
    xi_sq = 0.0
    for ell in state.populated_ells():
        g = generator_matrices(ell)
        ux = _evolution(g.Jx, t / n)
        uy = _evolution(g.Jy, t / n)
        step = uy @ ux if ordering is Ordering.Y_THEN_X else ux @ uy
        power = step.copy()
        for _ in range(n - 1):
            power = power @ step
        target = _evolution(g.Jx + g.Jy, t)
        diff = (power - target) @ state.block(ell)
        xi_sq += float(np.vdot(diff, diff).real)
    return math.sqrt(xi_sq)


# ---------------------------------------------------------------------------
# Integral representation and asymptotic prefactors
# ---------------------------------------------------------------------------

def error_via_integral(
    state: SphericalState,
    t: float,
    n: int,
    quad_points: int = 32,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> float:
    """xi_n = chi_n || int_0^1 e^{-i u chi_n nu_n.L} (nu_n.L) psi du ||.

    Gauss-Legendre on [0, 1]; the integrand is entire in u, so convergence in
    quad_points is spectral.  Finite-support states within the dense cap only.
    """
    if not isinstance(state.law, FiniteSupport):
        raise DenseCapError("integral representation needs dense blocks")
    if quad_points < 1:
        raise ValueError("quad_points must be >= 1")
    eff = effective_rotation(TrotterParams(t, n, ordering))
    if eff.near_identity:
        return 0.0
    nodes, weights = np.polynomial.legendre.leggauss(quad_points)
    u = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    total = 0.0
    for ell in state.populated_ells():
        g = generator_matrices(ell)
        M = eff.nu_n[0] * g.Jx + eff.nu_n[1] * g.Jy + eff.nu_n[2] * g.Jz
        lam, vec = np.linalg.eigh(M)
        y = lam * (vec.conj().T @ state.block(ell))
        phases = np.exp(-1j * eff.chi_n * np.outer(u, lam))
        acc = (w[:, None] * phases).sum(axis=0) * y
        total += float(np.vdot(acc, acc).real)
    return eff.chi_n * math.sqrt(total)


def _norm_L_combination(state: SphericalState, coeffs: np.ndarray) -> float:
    """|| (c_x L_x + c_y L_y + c_z L_z) psi || via blockwise generators."""
    total = 0.0
    for ell in state.populated_ells():
        g = generator_matrices(ell)
        M = coeffs[0] * g.Jx + coeffs[1] * g.Jy + coeffs[2] * g.Jz
        v = M @ state.block(ell)
        total += float(np.vdot(v, v).real)
    return math.sqrt(total)


def prefactor_regular(state: SphericalState, t: float) -> float:
    """(1/2) |sin(t/sqrt(2))| ||(L_x + L_y) psi|| |t|.

    This is the target-axis projection constant.  NOTE: it is NOT the limit
    of n xi_n; the mismatch axis tilts away from the target axis, so the
    observed limit is prefactor_asymptotic (smaller whenever cos(t/sqrt2) != 0).
    """
    sx = apply_L(state, "x")
    sy = apply_L(state, "y")
    total = 0.0
    for ell in sx.blocks:
        v = sx.blocks[ell] + sy.blocks[ell]
        total += float(np.vdot(v, v).real)
    return 0.5 * abs(math.sin(t / math.sqrt(2.0))) * math.sqrt(total) * abs(t)


def prefactor_asymptotic(
    state: SphericalState,
    t: float,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> float:
    """True limit of n xi_n for finite-support psi: chi_asymptote(t) ||(u(t).L) psi||."""
    if is_degenerate_time(t):
        return 0.0
    u = limit_axis(t, ordering)
    return chi_asymptote(t) * _norm_L_combination(state, u)


# ---------------------------------------------------------------------------
# Lower-bound certificates
# ---------------------------------------------------------------------------

def cert_m0_from_beta(
    gamma: float, C: float, beta_n: float, n: int, L_max: int | None = None
) -> LowerBoundCert:
    """M0 chain at an explicit beta_n: value^2 = kappa^2 C sin^4(b) L^(4-g)/(4-g).

    Valid for every n: Cauchy-Schwarz against e_0, the Legendre upper bound,
    the chord bound on [0, 1], and the integral comparison each hold exactly;
    the cutoff is clipped at L_max so every retained term exists in the
    truncated state.
    """
    sb = math.sin(beta_n)
    if sb <= 0.0:
        raise DegenerateTimeError("sin(beta_n) <= 0: the M0 certificate degenerates")
    L_n = math.floor(1.0 / sb)
    cutoff = L_n if L_max is None else min(L_n, L_max)
    truncated = L_max is not None and L_max < L_n
    value_sq = KAPPA**2 * C * sb**4 * cutoff ** (4.0 - gamma) / (4.0 - gamma)
    return LowerBoundCert(n, math.sqrt(value_sq), "M0", L_n, truncated)


#: L_max below this multiple of L_n makes the Top certificate unreliable
#: against the truncated state (its chain sums l >= L_n without bound).
TOP_SUPPORT_FACTOR = 10


def cert_top_from_beta(
    gamma: float, C: float, beta_n: float, n: int, L_max: int | None = None
) -> LowerBoundCert:
    """Top chain at an explicit beta_n: value^2 = C L_n^(-gamma) / (4 gamma).

    L_n = ceil(ln(1/2) / (2 ln cos(beta_n/2))) is where the block deficit
    passes 1/2.  The chain needs support above L_n; ``truncated`` flags
    comparisons against states with L_max < TOP_SUPPORT_FACTOR * L_n.
    """
    if not 0.0 < beta_n < math.pi:
        raise DegenerateTimeError("beta_n outside (0, pi): the Top certificate degenerates")
    L_n = math.ceil(math.log(0.5) / (2.0 * math.log(math.cos(beta_n / 2.0))))
    truncated = L_max is not None and L_max < TOP_SUPPORT_FACTOR * L_n
    value_sq = C / (4.0 * gamma) * L_n ** (-gamma)
    return LowerBoundCert(n, math.sqrt(value_sq), "Top", L_n, truncated)


def _beta_n(t: float, n: int, ordering: Ordering) -> float:
    if is_degenerate_time(t):
        raise DegenerateTimeError(
            f"t={t} is within 1e-9 of a zero of sin(t/sqrt(2)); certificates degenerate"
        )
    return effective_rotation(TrotterParams(t, n, ordering)).euler.beta


def lower_bound_m0(
    gamma: float,
    C: float,
    t: float,
    n: int,
    L_max: int | None = None,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> LowerBoundCert:
    return cert_m0_from_beta(gamma, C, _beta_n(t, n, ordering), n, L_max)


def lower_bound_top(
    gamma: float,
    C: float,
    t: float,
    n: int,
    L_max: int | None = None,
    ordering: Ordering = Ordering.Y_THEN_X,
) -> LowerBoundCert:
    return cert_top_from_beta(gamma, C, _beta_n(t, n, ordering), n, L_max)
