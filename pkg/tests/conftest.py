"""Shared oracles: independent block exponentials for rotation checks.

The oracle generators are built here from the ladder coefficients, separately
from the package, and exponentiated with scipy.linalg.expm so representation
tests never share a code path with what they check.
"""

import numpy as np
import pytest
from scipy.linalg import expm


def oracle_generators(ell):
    """(Jx, Jy, Jz) on H_ell, independent construction."""
    dim = 2 * ell + 1
    m = np.arange(-ell, ell + 1, dtype=float)
    jp = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        jp[i + 1, i] = np.sqrt(ell * (ell + 1) - m[i] * (m[i] + 1))
    jm = jp.conj().T
    return (jp + jm) / 2, (jp - jm) / 2j, np.diag(m).astype(complex)


def oracle_rotation_block(ell, angle, axis):
    """exp(-i angle axis.J) on H_ell via scipy expm."""
    jx, jy, jz = oracle_generators(ell)
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return expm(-1j * angle * (axis[0] * jx + axis[1] * jy + axis[2] * jz))


def oracle_euler_block(ell, alpha, beta, gamma):
    """exp(-i a Jz) exp(-i b Jy) exp(-i g Jz) on H_ell via scipy expm."""
    jx, jy, jz = oracle_generators(ell)
    return expm(-1j * alpha * jz) @ expm(-1j * beta * jy) @ expm(-1j * gamma * jz)


def random_axis(rng):
    while True:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
        if norm > 1e-3:
            return v / norm


@pytest.fixture
def rng():
    return np.random.default_rng(20240831)
