"""Compiled scalar kernels for large-degree Legendre sums.

The single-column error sums run over l up to ~1e7-1e8; plain Python loops are
two orders of magnitude too slow and the recurrences cannot be vectorized over
l, so these four loops are the one place the package leans on numba.
"""

import math

from numba import njit


@njit(cache=True)
def legendre_scalar(ell: int, x: float) -> float:
    """P_ell(x) by the upward three-term recurrence."""
    if ell == 0:
        return 1.0
    pkm1 = 1.0
    pk = x
    for k in range(1, ell):
        pkm1, pk = pk, ((2 * k + 1) * x * pk - k * pkm1) / (k + 1)
    return pk


@njit(cache=True)
def one_minus_legendre_scalar(ell: int, omx: float) -> float:
    """1 - P_ell(1 - omx), cancellation-free for omx << 1.

    Substituting P = 1 - Q into the Legendre recurrence gives
        (k+1) Q_{k+1} = (2k+1) (omx + x Q_k) - k Q_{k-1},
    which works entirely in the deficit Q and never forms 1 - P.
    """
    if ell == 0:
        return 0.0
    x = 1.0 - omx
    qkm1 = 0.0
    qk = omx
    for k in range(1, ell):
        qkm1, qk = qk, ((2 * k + 1) * (omx + x * qk) - k * qkm1) / (k + 1)
    return qk


@njit(cache=True)
def m0_deficit_sum(L: int, omx: float, gamma: float) -> float:
    """sum_{l=1}^{L} 2 (1 - P_l(1-omx)) l^-(1+gamma), deficit recurrence inline."""
    if L < 1:
        return 0.0
    x = 1.0 - omx
    qkm1 = 0.0
    qk = omx
    total = 2.0 * qk
    for k in range(1, L):
        qkm1, qk = qk, ((2 * k + 1) * (omx + x * qk) - k * qkm1) / (k + 1)
        total += 2.0 * qk * (k + 1) ** (-1.0 - gamma)
    return total


@njit(cache=True)
def top_deficit_sum(L: int, log_c2: float, apg: float, gamma: float) -> float:
    """sum_{l=1}^{L} 2 (1 - e^{l log_c2} cos(l apg)) l^-(1+gamma).

    log_c2 = 2 ln cos(beta/2) <= 0, apg = alpha + gamma(Euler); both pieces of
    1 - M cos(phi) = -expm1(log M) + e^{log M} (2 sin^2(phi/2)) are nonnegative,
    so the deficit is formed without cancellation.
    """
    total = 0.0
    for ell in range(1, L + 1):
        e = ell * log_c2
        sin_half = math.sin(0.5 * ell * apg)
        deficit = -math.expm1(e) + math.exp(e) * 2.0 * sin_half * sin_half
        total += 2.0 * deficit * ell ** (-1.0 - gamma)
    return total
