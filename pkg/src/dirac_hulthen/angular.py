"""Spinor spherical harmonics Omega_kappa^m, their channel bilinears, and the
sigma_r action identity sigma_r Omega_kappa^m = -Omega_{-kappa}^m.

Conventions: l(kappa) = kappa for kappa > 0 and -kappa - 1 for kappa < 0
(standard Dirac assignment; the sigma_r identity test fails under the wrong
choice), Condon-Shortley phase in Y_l^m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .specfun import spherical_harmonic

__all__ = ["SpinorAngular", "orbital_l", "spinor_harmonic", "bilinear", "sigma_r_action_residual"]


def orbital_l(kappa: int) -> int:
    """Orbital angular momentum paired with kappa: l = kappa (kappa > 0),
    l = -kappa - 1 (kappa < 0)."""
    if kappa == 0:
        raise ConfigError("kappa must be a nonzero integer")
    return kappa if kappa > 0 else -kappa - 1


def _half_int(m: float) -> bool:
    return abs(m * 2.0 - round(m * 2.0)) < 1e-12 and round(m * 2.0) % 2 != 0


@dataclass(frozen=True)
class SpinorAngular:
    """Two-component spinor harmonic value at one direction."""

    up: complex
    down: complex
    kappa: int
    m: float

    def as_vector(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)

    def norm_sq(self) -> float:
        return abs(self.up) ** 2 + abs(self.down) ** 2


def spinor_harmonic(kappa: int, m: float, theta: float, phi: float) -> SpinorAngular:
    """Omega_kappa^m(theta, phi):

        -sgn(kappa) sqrt((kappa - m + 1/2)/(2 kappa + 1)) chi_up   Y_l^(m-1/2)
        +            sqrt((kappa + m + 1/2)/(2 kappa + 1)) chi_down Y_l^(m+1/2)

    with l = l(kappa); m is half-integer with |m| <= |kappa| - 1/2.
    """
    if kappa == 0:
        raise ConfigError("kappa must be a nonzero integer")
    if not _half_int(m):
        raise ConfigError(f"m must be half-integer, got {m}")
    j = abs(kappa) - 0.5
    if abs(m) > j + 1e-12:
        raise ConfigError(f"|m| = {abs(m)} exceeds j = {j}")
    l = orbital_l(kappa)
    sgn = 1.0 if kappa > 0 else -1.0
    denom = 2.0 * kappa + 1.0
    c_up = -sgn * math.sqrt((kappa - m + 0.5) / denom)
    c_down = math.sqrt((kappa + m + 0.5) / denom)
    m_up = round(m - 0.5)
    m_down = round(m + 0.5)
    up = c_up * spherical_harmonic(l, m_up, theta, phi) if abs(c_up) > 1e-15 else 0.0j
    down = c_down * spherical_harmonic(l, m_down, theta, phi) if abs(c_down) > 1e-15 else 0.0j
    return SpinorAngular(up=up, down=down, kappa=kappa, m=m)


def bilinear(
    kappa: int,
    kappa2: int,
    j: float,
    angles_pp: tuple[float, float],
    angles_p: tuple[float, float],
) -> np.ndarray:
    """m-summed 2x2 projector block

        sum_m Omega_kappa^m(theta'', phi'') Omega_kappa2^m(theta', phi')^dagger

    for kappa2 in {kappa, -kappa} sharing the same j = |kappa| - 1/2.
    """
    if abs(kappa2) != abs(kappa):
        raise ConfigError("bilinear channels must share |kappa|")
    if abs(j - (abs(kappa) - 0.5)) > 1e-12:
        raise ConfigError(f"j = {j} inconsistent with |kappa| = {abs(kappa)}")
    theta_pp, phi_pp = angles_pp
    theta_p, phi_p = angles_p
    block = np.zeros((2, 2), dtype=complex)
    m = -j
    while m <= j + 1e-9:
        left = spinor_harmonic(kappa, m, theta_pp, phi_pp).as_vector()
        right = spinor_harmonic(kappa2, m, theta_p, phi_p).as_vector()
        block += np.outer(left, right.conj())
        m += 1.0
    return block


def _sigma_r(theta: float, phi: float) -> np.ndarray:
    st, ct = math.sin(theta), math.cos(theta)
    ep = complex(math.cos(phi), math.sin(phi))
    return np.array([[ct, st * ep.conjugate()], [st * ep, -ct]], dtype=complex)


def sigma_r_action_residual(kappa: int, m: float, theta: float, phi: float) -> float:
    """|| sigma_r Omega_kappa^m + Omega_{-kappa}^m || at one direction."""
    omega = spinor_harmonic(kappa, m, theta, phi).as_vector()
    omega_flip = spinor_harmonic(-kappa, m, theta, phi).as_vector()
    return float(np.linalg.norm(_sigma_r(theta, phi) @ omega + omega_flip))
