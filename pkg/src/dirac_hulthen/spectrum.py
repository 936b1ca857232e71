"""Quantum-number algebra and the closed-form bound-state spectrum.

The quantization condition for one partial wave is

    1 + lam + eps~ - sqrt(eps~^2 - omega^2/q) = -n_r,   n_r = 0, 1, 2, ...

whose solutions, converted to energy, satisfy

    (E - v0/(2q))^2 = N^2/(N^2 + (a v0/q)^2) * [mu^2 + kappa(kappa-beta~)/(12 a^2)]
                      - N^2/(4 a^2),            N = n_r + lam + 1.

Squaring introduces spurious roots; rewriting the condition as
sqrt(eps~^2 - omega^2/q) = N + eps~ shows a genuine level must have
omega^2 < 0 and eps~ = (-omega^2/q - N^2)/(2N) > 0, so every candidate is
filtered through the unsquared condition before it is accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigError, SupercriticalCouplingError, UnboundRegimeError
from .potential import PotentialParams

__all__ = [
    "QuantumNumbers",
    "EnergyState",
    "gamma_eigenvalue",
    "lambda_of_gamma",
    "epsilon_tilde",
    "omega_sq",
    "quantization_residual",
    "bound_energies",
    "standard_hulthen_energies",
    "coulomb_energies",
]

RESIDUAL_TOL = 1e-9


def gamma_eigenvalue(kappa: int, sign: int, p: PotentialParams) -> float:
    """Biedenharn/Martin-Glauber eigenvalue gamma = sign * sqrt(kappa^2 - (a v0/q)^2).

    Raises SupercriticalCouplingError when (a v0/q)^2 >= kappa^2 (gamma would
    be complex and the diagonalization fails).
    """
    if kappa == 0:
        raise ConfigError("kappa must be a nonzero integer")
    if sign not in (-1, 1):
        raise ConfigError(f"sign must be +1 or -1, got {sign}")
    coupling = p.a * p.v0 / p.q
    radicand = kappa * kappa - coupling * coupling
    if radicand <= 0.0:
        raise SupercriticalCouplingError(
            f"supercritical coupling: a*v0/q = {coupling} >= |kappa| = {abs(kappa)}"
        )
    return sign * math.sqrt(radicand)


def lambda_of_gamma(gamma: float) -> float:
    """Effective orbital parameter lam = |gamma| + (sign(gamma) - 1)/2."""
    if gamma == 0.0:
        raise ConfigError("gamma must be nonzero")
    return abs(gamma) + 0.5 * (math.copysign(1.0, gamma) - 1.0)


@dataclass(frozen=True)
class QuantumNumbers:
    """One partial-wave channel: (kappa, beta~, sign gamma) plus derived gamma, lam.

    The beta/kappa linkage requires sign(kappa) = -sign(gamma) for beta~ = +1
    and sign(kappa) = +sign(gamma) for beta~ = -1; construction validates it.
    """

    kappa: int
    beta_tilde: int
    sign_gamma: int
    gamma: float
    lam: float
    m: float | None = field(default=None)

    def __post_init__(self):
        if self.kappa == 0:
            raise ConfigError("kappa must be a nonzero integer")
        if self.beta_tilde not in (-1, 1):
            raise ConfigError(f"beta_tilde must be +1 or -1, got {self.beta_tilde}")
        if self.sign_gamma not in (-1, 1):
            raise ConfigError(f"sign_gamma must be +1 or -1, got {self.sign_gamma}")
        sgn_kappa = 1 if self.kappa > 0 else -1
        if self.sign_gamma != -self.beta_tilde * sgn_kappa:
            raise ConfigError(
                "inconsistent channel: sign(gamma) must equal "
                f"-beta_tilde*sign(kappa) = {-self.beta_tilde * sgn_kappa}, "
                f"got {self.sign_gamma}"
            )
        if not (self.lam > -1.0):
            raise ConfigError(f"lam = {self.lam} <= -1: channel outside the solvable regime")
        if self.gamma == 0.0 or math.copysign(1.0, self.gamma) != self.sign_gamma:
            raise ConfigError(f"gamma = {self.gamma} inconsistent with sign_gamma")
        if abs(self.lam - lambda_of_gamma(self.gamma)) > 1e-12:
            raise ConfigError(f"lam = {self.lam} inconsistent with gamma = {self.gamma}")
        if self.m is not None and abs(self.m) > self.j:
            raise ConfigError(f"|m| = {abs(self.m)} exceeds j = {self.j}")

    @property
    def j(self) -> float:
        """Total angular momentum j = |kappa| - 1/2."""
        return abs(self.kappa) - 0.5

    @property
    def kappa_kmb(self) -> int:
        """kappa * (kappa - beta_tilde), the constant in the centrifugal shift."""
        return self.kappa * (self.kappa - self.beta_tilde)

    @classmethod
    def for_channel(
        cls,
        kappa: int,
        beta_tilde: int,
        p: PotentialParams,
        sign_gamma: int | None = None,
        m: float | None = None,
    ) -> "QuantumNumbers":
        """Build a validated channel; sign_gamma is derived from (kappa, beta~)
        unless given explicitly (in which case it must be consistent)."""
        if beta_tilde not in (-1, 1):
            raise ConfigError(f"beta_tilde must be +1 or -1, got {beta_tilde}")
        derived = -beta_tilde * (1 if kappa > 0 else -1)
        if sign_gamma is None:
            sign_gamma = derived
        gamma = gamma_eigenvalue(kappa, sign_gamma, p)
        return cls(
            kappa=kappa,
            beta_tilde=beta_tilde,
            sign_gamma=sign_gamma,
            gamma=gamma,
            lam=lambda_of_gamma(gamma),
            m=m,
        )


@dataclass(frozen=True)
class EnergyState:
    """A bound level: radial quantum number, energy, derived kernel parameters
    and the quantization-condition residual (always < 1e-9 by construction)."""

    n_r: int
    E: float
    epsilon_tilde: float
    omega_sq: float
    residual: float

    def __post_init__(self):
        if self.n_r < 0:
            raise ConfigError("n_r must be non-negative")
        if not (self.epsilon_tilde > 0.0):
            raise ConfigError(f"epsilon_tilde must be positive, got {self.epsilon_tilde}")
        if not (self.residual < RESIDUAL_TOL):
            raise ConfigError(
                f"quantization residual {self.residual} exceeds {RESIDUAL_TOL}"
            )


def epsilon_tilde(E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """eps~ = a sqrt(mu^2 - E^2 + kappa(kappa-beta~)/(12 a^2))."""
    radicand = p.mu * p.mu - E * E + qn.kappa_kmb / (12.0 * p.a * p.a)
    if radicand < 0.0:
        raise UnboundRegimeError(
            f"E = {E} outside the bound window (radicand {radicand} < 0)"
        )
    return p.a * math.sqrt(radicand)


def omega_sq(E: float, p: PotentialParams) -> float:
    """omega^2 = a^2 v0 (v0/q - 2E), returned signed (negative at bound levels)."""
    return p.a * p.a * p.v0 * (p.v0 / p.q - 2.0 * E)


def quantization_residual(E: float, n_r: int, qn: QuantumNumbers, p: PotentialParams) -> float:
    """|1 + lam + eps~ - sqrt(eps~^2 - omega^2/q) + n_r| at the given energy."""
    eps_t = epsilon_tilde(E, qn, p)
    arg = eps_t * eps_t - omega_sq(E, p) / p.q
    if arg < 0.0:
        raise UnboundRegimeError(f"eps~^2 - omega^2/q = {arg} < 0 at E = {E}")
    return abs(1.0 + qn.lam + eps_t - math.sqrt(arg) + n_r)


def _mu_prime(qn: QuantumNumbers, p: PotentialParams) -> float:
    return math.sqrt(p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a))


def bound_energies(qn: QuantumNumbers, p: PotentialParams, n_r_max: int) -> list[EnergyState]:
    """All bound levels with n_r <= n_r_max from the closed-form spectrum.

    For each n_r both roots E = v0/(2q) +/- sqrt(RHS) are formed and filtered
    through: RHS >= 0, eps~ real and positive, omega^2 < 0, and the unsquared
    quantization condition to 1e-9.  Enumeration stops at the first n_r whose
    candidates all fail (the filter is monotone on this family) or at n_r_max.
    Returns a list sorted by n_r, strictly increasing in E; empty when nothing
    binds.
    """
    if n_r_max < 0:
        raise ConfigError("n_r_max must be non-negative")
    coupling = p.a * p.v0 / p.q
    mu_eff_sq = p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a)
    levels: list[EnergyState] = []
    for n_r in range(n_r_max + 1):
        big_n = n_r + qn.lam + 1.0
        nn = big_n * big_n
        rhs = nn / (nn + coupling * coupling) * mu_eff_sq - nn / (4.0 * p.a * p.a)
        if rhs < 0.0:
            break
        accepted = None
        for sgn in (1.0, -1.0):
            E = p.v0 / (2.0 * p.q) + sgn * math.sqrt(rhs)
            radicand = p.mu * p.mu - E * E + qn.kappa_kmb / (12.0 * p.a * p.a)
            if radicand < 0.0:
                continue
            eps_t = p.a * math.sqrt(radicand)
            om2 = omega_sq(E, p)
            if om2 >= 0.0 or eps_t <= 0.0:
                continue
            residual = abs(
                1.0 + qn.lam + eps_t - math.sqrt(eps_t * eps_t - om2 / p.q) + n_r
            )
            if residual < RESIDUAL_TOL:
                accepted = EnergyState(
                    n_r=n_r, E=E, epsilon_tilde=eps_t, omega_sq=om2, residual=residual
                )
                break
        if accepted is None:
            break
        levels.append(accepted)
    for lo, hi in zip(levels, levels[1:]):
        if not (hi.E > lo.E):
            raise AssertionError("bound energies are not strictly increasing in n_r")
    return levels


def standard_hulthen_energies(
    qn: QuantumNumbers, p: PotentialParams, n_r_max: int
) -> list[EnergyState]:
    """Undeformed (q = 1) spectrum; algebraically the same closed form with the
    q-dependence dropped, kept as an independently written expression."""
    if p.q != 1.0:
        raise ConfigError(f"standard Hulthen spectrum requires q = 1, got q = {p.q}")
    av0 = p.a * p.v0
    mu_eff_sq = p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a)
    levels: list[EnergyState] = []
    for n_r in range(n_r_max + 1):
        nn = (n_r + qn.lam + 1.0) ** 2
        rhs = nn / (nn + av0 * av0) * mu_eff_sq - nn / (4.0 * p.a * p.a)
        if rhs < 0.0:
            break
        accepted = None
        for sgn in (1.0, -1.0):
            E = 0.5 * p.v0 + sgn * math.sqrt(rhs)
            radicand = p.mu * p.mu - E * E + qn.kappa_kmb / (12.0 * p.a * p.a)
            if radicand < 0.0:
                continue
            eps_t = p.a * math.sqrt(radicand)
            om2 = p.a * p.a * p.v0 * (p.v0 - 2.0 * E)
            if om2 >= 0.0 or eps_t <= 0.0:
                continue
            residual = abs(
                1.0 + qn.lam + eps_t - math.sqrt(eps_t * eps_t - om2) + n_r
            )
            if residual < RESIDUAL_TOL:
                accepted = EnergyState(
                    n_r=n_r, E=E, epsilon_tilde=eps_t, omega_sq=om2, residual=residual
                )
                break
        if accepted is None:
            break
        levels.append(accepted)
    return levels


def coulomb_energies(
    kappa: int, sign_gamma: int, ze2: float, mu: float, n_r_max: int
) -> list[float]:
    """Dirac-Coulomb levels E = mu [1 + (Ze^2)^2 (n_r + lam0 + 1)^-2]^(-1/2).

    lam0 follows the same |gamma| + (sign-1)/2 convention as the deformed
    spectrum; with sign_gamma = -1 and n_r = 0 this reproduces the exact
    ground state E = mu sqrt(1 - (Ze^2)^2) for |kappa| = 1.
    """
    if kappa == 0:
        raise ConfigError("kappa must be a nonzero integer")
    if n_r_max < 0:
        raise ConfigError("n_r_max must be non-negative")
    if ze2 < 0.0:
        raise ConfigError("Ze^2 must be non-negative")
    radicand = kappa * kappa - ze2 * ze2
    if radicand <= 0.0:
        raise SupercriticalCouplingError(
            f"supercritical Coulomb coupling: Ze^2 = {ze2} >= |kappa| = {abs(kappa)}"
        )
    if ze2 == 0.0:
        return [mu for _ in range(n_r_max + 1)]
    gamma0 = sign_gamma * math.sqrt(radicand)
    lam0 = lambda_of_gamma(gamma0)
    out = []
    for n_r in range(n_r_max + 1):
        big_n = n_r + lam0 + 1.0
        out.append(mu / math.sqrt(1.0 + (ze2 / big_n) ** 2))
    return out
