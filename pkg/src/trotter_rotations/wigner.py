"""Rotation blocks on the irreducible subspaces H_l and Legendre machinery.

Dense (2l+1)x(2l+1) blocks are built from the eigendecomposition of the real
symmetric tridiagonal matrix obtained by conjugating the y generator with
diag(i^m); this is stable up to the dense cap.  The two matrix elements that
the power-law families need, D_00 and D_ll, have O(l) and O(1) fast paths
that remain usable far beyond the cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ._kernels import legendre_scalar, one_minus_legendre_scalar
from .exceptions import DenseCapError
from .rotations import EulerZYZ

#: Largest l for which dense blocks are constructed.
DENSE_ELL_CAP = 200

_LEGENDRE_DOMAIN_TOL = 1e-12

# i^m for m mod 4, exact.
_QUARTER_PHASES = np.array([1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j])


@dataclass(frozen=True, eq=False)
class WignerBlock:
    """Unitary rotation block on H_l, indexed by m, m' = -l..l (ascending)."""

    ell: int
    entries: np.ndarray

    def element(self, m: int, mp: int) -> complex:
        return complex(self.entries[m + self.ell, mp + self.ell])


def check_dense_cap(ell: int, what: str = "dense block") -> None:
    if ell > DENSE_ELL_CAP:
        raise DenseCapError(
            f"{what} requested at l={ell} > cap {DENSE_ELL_CAP}; "
            "use the D_00 / D_ll single-element paths instead"
        )


def legendre(ell: int, x: float) -> float:
    """Legendre polynomial P_ell(x) on [-1, 1] by stable upward recurrence."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if abs(x) > 1.0 + _LEGENDRE_DOMAIN_TOL:
        raise ValueError(f"|x| = {abs(x)} outside [-1, 1]")
    x = min(1.0, max(-1.0, x))
    return float(legendre_scalar(ell, x))


def one_minus_legendre(ell: int, one_minus_x: float) -> float:
    """1 - P_ell(x) given one_minus_x = 1 - x, without forming the difference.

    Callers that know the rotation angle should pass 1 - cos(beta) as
    2 sin^2(beta/2); the deficit then keeps full relative precision even when
    it is ~1e-10.  Accumulated roundoff is ~l*eps absolute.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if not 0.0 <= one_minus_x <= 2.0 + _LEGENDRE_DOMAIN_TOL:
        raise ValueError("one_minus_x must lie in [0, 2]")
    return float(one_minus_legendre_scalar(ell, min(2.0, one_minus_x)))


def legendre_upper_bound(ell: int, beta: float) -> float:
    """Bound P_ell(cos beta) <= [1 + l(l+1) sin^2 beta]^(-1/4)."""
    s = math.sin(beta)
    return (1.0 + ell * (ell + 1) * s * s) ** -0.25


@lru_cache(maxsize=32)
def _little_d_factors(ell: int):
    # J_y = T^dag A T with T = diag(i^m) and A real symmetric tridiagonal with
    # off-diagonal sqrt(l(l+1) - m(m+1))/2; eigendecompose A once per l.
    m = np.arange(-ell, ell + 1)
    if ell == 0:
        return m, np.ones(1), np.ones((1, 1)), np.ones(1, dtype=complex)
    off = np.sqrt(ell * (ell + 1.0) - m[:-1] * (m[:-1] + 1.0)) / 2.0
    lam, vec = eigh_tridiagonal(np.zeros(2 * ell + 1), off)
    phases = _QUARTER_PHASES[np.mod(m, 4)]
    return m, lam, vec, phases


def little_d(ell: int, beta: float) -> np.ndarray:
    """Real-rotation part d^l(beta) = exp(-i beta J_y) as a dense block."""
    check_dense_cap(ell)
    if beta == 0.0:
        return np.eye(2 * ell + 1, dtype=complex)
    _, lam, vec, phases = _little_d_factors(ell)
    core = (vec * np.exp(-1j * beta * lam)) @ vec.T
    return phases.conj()[:, None] * core * phases[None, :]


def wigner_D(ell: int, e: EulerZYZ) -> WignerBlock:
    """Wigner block D^l(alpha, beta, gamma) = e^{-i a Jz} d^l(b) e^{-i g Jz}."""
    check_dense_cap(ell)
    m = np.arange(-ell, ell + 1)
    d = little_d(ell, e.beta)
    if e.beta == 0.0 and e.alpha + e.gamma == 0.0:
        return WignerBlock(ell, d)  # exact identity
    entries = np.exp(-1j * e.alpha * m)[:, None] * d * np.exp(-1j * e.gamma * m)[None, :]
    return WignerBlock(ell, entries)


def D_00(ell: int, beta: float) -> float:
    """Center element D^l_00 = P_l(cos beta); O(l), no dense cap."""
    return legendre(ell, math.cos(beta))


def one_minus_D_00(ell: int, beta: float) -> float:
    """1 - D^l_00, formed in the deficit variable (versine of beta)."""
    return one_minus_legendre(ell, 2.0 * math.sin(beta / 2.0) ** 2)


def D_ll(ell: int, beta: float, alpha_plus_gamma: float) -> complex:
    """Corner element D^l_ll = cos(beta/2)^(2l) e^{-i l (alpha+gamma)}.

    The modulus is evaluated as exp(2 l ln cos(beta/2)) so it underflows
    gracefully instead of overflowing intermediate powers; beta = pi gives
    an exact zero.
    """
    c = math.cos(beta / 2.0)
    if c <= 0.0:
        return 0.0j
    modulus = math.exp(2.0 * ell * math.log(c))
    phi = ell * alpha_plus_gamma
    return modulus * complex(math.cos(phi), -math.sin(phi))


def one_minus_Re_D_ll(ell: int, beta: float, alpha_plus_gamma: float) -> float:
    """1 - Re D^l_ll via expm1, nonnegative and cancellation-free."""
    c = math.cos(beta / 2.0)
    if c <= 0.0:
        return 1.0
    log_mod = 2.0 * ell * math.log(c)
    sin_half = math.sin(0.5 * ell * alpha_plus_gamma)
    return -math.expm1(log_mod) + math.exp(log_mod) * 2.0 * sin_half * sin_half
