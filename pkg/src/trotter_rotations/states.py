"""Spherical-harmonic coefficient states and per-l generator matrices.

States are sparse over l.  Finite-support states store their blocks densely;
the two power-law families keep only their law (single populated m per block,
|psi_l|^2 = C / l^(1+gamma)) and materialize blocks on demand, so L_max ~ 1e7
costs nothing until an error sum actually walks the l range.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Union

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from .exceptions import DenseCapError
from .wigner import DENSE_ELL_CAP, check_dense_cap


# ---------------------------------------------------------------------------
# Laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteSupport:
    """Marker law for explicitly stored blocks."""


@dataclass(frozen=True)
class PowerLawM0:
    """m = 0 family: |psi_{l,0}|^2 = C / l^(1+gamma), 1 <= l <= L_max."""

    C: float
    gamma: float
    L_max: int


@dataclass(frozen=True)
class PowerLawTop:
    """m = l family: |psi_{l,l}|^2 = C / l^(1+gamma), 1 <= l <= L_max."""

    C: float
    gamma: float
    L_max: int


StateLaw = Union[FiniteSupport, PowerLawM0, PowerLawTop]


def _check_power_law(C: float, gamma: float, L_max: int) -> None:
    if not C > 0:
        raise ValueError(f"C must be > 0, got {C}")
    if not 0.0 < gamma < 2.0:
        raise ValueError(f"gamma must lie in (0, 2), got {gamma}")
    if L_max < 1:
        raise ValueError(f"L_max must be >= 1, got {L_max}")


def partial_power_sum(exponent: float, L: int) -> float:
    """sum_{l=1}^{L} l^-exponent for exponent > 1, via Hurwitz zeta."""
    return float(hurwitz_zeta(exponent, 1) - hurwitz_zeta(exponent, L + 1))


def tail_power_sum(exponent: float, L: int) -> float:
    """sum_{l=L+1}^{inf} l^-exponent, exact analytic tail mass."""
    return float(hurwitz_zeta(exponent, L + 1))


# ---------------------------------------------------------------------------
# States
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SphericalState:
    """Coefficients psi_{l,m} over spherical harmonics, sparse in l.

    ``blocks`` maps l to a complex vector of length 2l+1 indexed by m
    ascending (-l..l); it is None for power-law states, whose coefficients
    come from the law.
    """

    law: StateLaw
    blocks: Mapping[int, np.ndarray] | None = None

    # -- block access -------------------------------------------------------

    def populated_ells(self) -> Iterator[int]:
        if isinstance(self.law, FiniteSupport):
            return iter(sorted(self.blocks))
        return iter(range(1, self.law.L_max + 1))

    def coefficient_sq(self, ell: int) -> float:
        """|psi_l|^2 of the single populated m of a power-law block."""
        law = self.law
        if isinstance(law, FiniteSupport):
            raise TypeError("finite-support states have no single-coefficient law")
        return law.C * ell ** (-1.0 - law.gamma)

    def block(self, ell: int) -> np.ndarray:
        """Materialize the coefficient vector of one block."""
        if isinstance(self.law, FiniteSupport):
            return self.blocks[ell]
        vec = np.zeros(2 * ell + 1, dtype=complex)
        if 1 <= ell <= self.law.L_max:
            m_index = ell if isinstance(self.law, PowerLawM0) else 2 * ell
            vec[m_index] = math.sqrt(self.coefficient_sq(ell))
        return vec

    def norm_sq(self) -> float:
        if isinstance(self.law, FiniteSupport):
            return float(sum(np.vdot(b, b).real for b in self.blocks.values()))
        return self.law.C * partial_power_sum(1.0 + self.law.gamma, self.law.L_max)

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def tail_mass(self) -> float:
        """Squared norm the stored truncation drops, from the untruncated law."""
        if isinstance(self.law, FiniteSupport):
            return 0.0
        return self.law.C * tail_power_sum(1.0 + self.law.gamma, self.law.L_max)

    def max_ell(self) -> int:
        if isinstance(self.law, FiniteSupport):
            return max(self.blocks, default=0)
        return self.law.L_max


def make_basis_state(ell: int, m: int) -> SphericalState:
    """Unit state Y_{l,m}."""
    if abs(m) > ell:
        raise IndexError(f"|m| = {abs(m)} exceeds l = {ell}")
    vec = np.zeros(2 * ell + 1, dtype=complex)
    vec[m + ell] = 1.0
    return SphericalState(FiniteSupport(), {ell: vec})


def make_finite_state(blocks: Mapping[int, np.ndarray]) -> SphericalState:
    clean = {}
    for ell, vec in blocks.items():
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (2 * ell + 1,):
            raise ValueError(f"block l={ell} must have length {2 * ell + 1}")
        clean[int(ell)] = vec
    return SphericalState(FiniteSupport(), clean)


def make_power_law_m0(C: float, gamma: float, L_max: int) -> SphericalState:
    """L_z-kernel family; not renormalized, C is carried into certificates."""
    _check_power_law(C, gamma, L_max)
    return SphericalState(PowerLawM0(C, gamma, L_max))


def make_power_law_top(C: float, gamma: float, L_max: int) -> SphericalState:
    """L_+-kernel family supported on m = l per block."""
    _check_power_law(C, gamma, L_max)
    return SphericalState(PowerLawTop(C, gamma, L_max))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorTriple:
    ell: int
    Jx: np.ndarray
    Jy: np.ndarray
    Jz: np.ndarray


@lru_cache(maxsize=64)
def generator_matrices(ell: int) -> GeneratorTriple:
    """Angular momentum matrices on H_l from the ladder coefficients."""
    check_dense_cap(ell, "generator matrices")
    m = np.arange(-ell, ell + 1, dtype=float)
    dim = 2 * ell + 1
    jp = np.zeros((dim, dim), dtype=complex)
    for i in range(dim - 1):
        jp[i + 1, i] = math.sqrt(ell * (ell + 1) - m[i] * (m[i] + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    jz = np.diag(m).astype(complex)
    for a in (jx, jy, jz):
        a.setflags(write=False)
    return GeneratorTriple(ell, jx, jy, jz)


_DIRECTIONS = ("x", "y", "z", "+", "-")


def apply_L(state: SphericalState, direction: str) -> SphericalState:
    """Apply L_x, L_y, L_z, L_+ or L_- blockwise; result is finite-support."""
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}")
    out = {}
    for ell in state.populated_ells():
        if ell > DENSE_ELL_CAP:
            raise DenseCapError(
                f"apply_L needs dense generators at l={ell} > cap {DENSE_ELL_CAP}"
            )
        g = generator_matrices(ell)
        if direction == "x":
            mat = g.Jx
        elif direction == "y":
            mat = g.Jy
        elif direction == "z":
            mat = g.Jz
        elif direction == "+":
            mat = g.Jx + 1j * g.Jy
        else:
            mat = g.Jx - 1j * g.Jy
        out[ell] = mat @ state.block(ell)
    return SphericalState(FiniteSupport(), out)


# ---------------------------------------------------------------------------
# Domain classifier
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SummabilityReport:
    finite: bool
    critical_exponent: float


def domain_summability(law: StateLaw, s: float) -> SummabilityReport:
    """Integral test for sum_l (l(l+1))^s |psi_l|^2 on the untruncated law.

    With |psi_l|^2 = C / l^(1+gamma) the sum behaves like sum l^(2s-1-gamma),
    finite iff 2s < gamma; the critical exponent is gamma/2.  (A membership
    threshold of s < gamma would require eigenvalues ~ l^(1/2), not l.)
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if isinstance(law, FiniteSupport):
        return SummabilityReport(True, math.inf)
    return SummabilityReport(2.0 * s < law.gamma, law.gamma / 2.0)


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _law_to_json(law: StateLaw) -> dict:
    if isinstance(law, FiniteSupport):
        return {"variant": "finite_support"}
    variant = "power_law_m0" if isinstance(law, PowerLawM0) else "power_law_top"
    return {"variant": variant, "C": law.C, "gamma": law.gamma, "L_max": law.L_max}


def _law_from_json(d: dict) -> StateLaw:
    variant = d["variant"]
    if variant == "finite_support":
        return FiniteSupport()
    if variant == "power_law_m0":
        return PowerLawM0(d["C"], d["gamma"], int(d["L_max"]))
    if variant == "power_law_top":
        return PowerLawTop(d["C"], d["gamma"], int(d["L_max"]))
    raise ValueError(f"unknown law variant {variant!r}")


def state_to_json(state: SphericalState) -> str:
    """Serialize; power-law blocks are derivable from the law and are omitted."""
    doc = {"law": _law_to_json(state.law), "blocks": []}
    if isinstance(state.law, FiniteSupport):
        doc["blocks"] = [
            {"ell": ell, "coeffs": [[z.real, z.imag] for z in state.blocks[ell]]}
            for ell in sorted(state.blocks)
        ]
    return json.dumps(doc, indent=2)


def state_from_json(text: str) -> SphericalState:
    doc = json.loads(text)
    law = _law_from_json(doc["law"])
    if isinstance(law, FiniteSupport):
        blocks = {
            int(b["ell"]): np.array([complex(re, im) for re, im in b["coeffs"]])
            for b in doc["blocks"]
        }
        return make_finite_state(blocks)
    return SphericalState(law)
