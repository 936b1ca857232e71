"""Deformed Hulthen potential, the exponential centrifugal approximant, the
effective second-order radial kernel, and the coordinate map onto the deformed
Rosen-Morse problem together with its verification identity.

The physical radial domain is r in (r0, inf) with r0 = a*ln(q) (r0 = 0 for
q = 1): the map r = a*ln(exp(2*xi/a) + q) sends xi in R exactly onto it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RadialDomainError, UnboundRegimeError
from .specfun import cosh_q, tanh_q

__all__ = [
    "PotentialParams",
    "RosenMorseParams",
    "hulthen_potential",
    "centrifugal_approx",
    "effective_radial_potential",
    "xi_of_r",
    "r_of_xi",
    "regulating_function",
    "rosen_morse_params",
    "rosen_morse_identity_residual",
]


@dataclass(frozen=True)
class PotentialParams:
    """Physical inputs in natural units hbar = c = 1.

    mu: particle mass, v0: well depth (> 0), a: range (> 0),
    q: deformation parameter (>= 1).
    """

    mu: float
    v0: float
    a: float
    q: float = 1.0

    def __post_init__(self):
        if not (self.mu > 0.0):
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not (self.v0 > 0.0):
            raise ValueError(f"v0 must be positive, got {self.v0}")
        if not (self.a > 0.0):
            raise ValueError(f"a must be positive, got {self.a}")
        if not (self.q >= 1.0):
            raise ValueError(f"q must be >= 1, got {self.q}")

    @property
    def r0(self) -> float:
        """Singular surface a*ln(q); the potential domain is r > r0."""
        return self.a * math.log(self.q)


@dataclass(frozen=True)
class RosenMorseParams:
    """Constants of the mapped 1-D Rosen-Morse problem (all dimensionless)."""

    A: float
    B: float
    E_tilde: float
    E_PT_prime: float
    L_E: float
    M1: float
    M2: float


def _check_domain(r: float, p: PotentialParams) -> None:
    if not (r > p.r0):
        raise RadialDomainError(f"r = {r} is not above the singular surface r0 = {p.r0}")


def hulthen_potential(r: float, p: PotentialParams) -> float:
    """V_q(r) = -v0 / (e^(r/a) - q), strictly negative and increasing on (r0, inf)."""
    _check_domain(r, p)
    return -p.v0 / (math.exp(r / p.a) - p.q)


def centrifugal_approx(r: float, p: PotentialParams) -> float:
    """Exponential approximant to 1/r^2:

        q e^(r/a) / (a^2 (e^(r/a) - q)^2) + 1/(12 a^2)

    Good to O((r/a)^2) absolute for r/a << 1 at q = 1.
    """
    _check_domain(r, p)
    ex = math.exp(r / p.a)
    d = ex - p.q
    return p.q * ex / (p.a * p.a * d * d) + 1.0 / (12.0 * p.a * p.a)


def _epsilon_sq(E: float, kappa_kmb: float, p: PotentialParams) -> float:
    """eps^2 = mu^2 - E^2 + kappa(kappa - beta~)/(12 a^2); kappa_kmb is the
    integer product kappa*(kappa - beta_tilde)."""
    return p.mu * p.mu - E * E + kappa_kmb / (12.0 * p.a * p.a)


def effective_radial_potential(r: float, E: float, lam: float, qn, p: PotentialParams) -> float:
    """Kernel W(r; E) of the reduced second-order radial equation u'' = W u:

        W = lam(lam+1) q e^(r/a) / (a^2 (e^(r/a)-q)^2)
            + v0 (v0/q - 2E) / (e^(r/a) - q) + eps^2

    Bound state <=> normalizable zero mode of u'' = W u.  `qn` supplies the
    kappa*(kappa - beta_tilde) constant inside eps^2.
    """
    _check_domain(r, p)
    ex = math.exp(r / p.a)
    d = ex - p.q
    w = lam * (lam + 1.0) * p.q * ex / (p.a * p.a * d * d)
    w += p.v0 * (p.v0 / p.q - 2.0 * E) / d
    return w + _epsilon_sq(E, qn.kappa_kmb, p)


def xi_of_r(r: float, p: PotentialParams) -> float:
    """Inverse of r_of_xi: xi = (a/2) ln(e^(r/a) - q), defined for r > r0."""
    _check_domain(r, p)
    x = r / p.a
    # ln(e^x - q) = x + ln(1 - q e^-x), stable for large x
    return 0.5 * p.a * (x + math.log1p(-p.q * math.exp(-x)))


def r_of_xi(xi: float, p: PotentialParams) -> float:
    """Coordinate map r = a ln(e^(2 xi/a) + q), xi in R -> r in (r0, inf)."""
    t = 2.0 * xi / p.a
    lnq = math.log(p.q)
    # log(e^t + q) via logaddexp to survive large |xi|
    m = max(t, lnq)
    return p.a * (m + math.log(math.exp(t - m) + math.exp(lnq - m)))


def regulating_function(xi: float, p: PotentialParams) -> float:
    """f(r(xi)) = e^(2 xi/a) / cosh_q^2(xi/a) = (dr/dxi)^2; tends to 4 as
    xi -> +inf and to 0 as xi -> -inf."""
    y = xi / p.a
    if y >= 0.0:
        e = p.q * math.exp(-2.0 * y)
        return 4.0 / ((1.0 + e) * (1.0 + e))
    e = math.exp(2.0 * y)
    return 4.0 * e * e / ((e + p.q) * (e + p.q))


def rosen_morse_params(E: float, lam: float, qn, p: PotentialParams) -> RosenMorseParams:
    """Constants (A, B, E~, E_PT', L_E~, M1, M2) of the mapped 1-D problem.

    A = eps~^2 - lam(lam+1) - 1/4,  B = (q eps~^2 - omega^2 - q/4)/2,
    E~ = -(eps~^2 + lam(lam+1) + 1/4),  M_{1,2} = eps~ +/- (lam + 1/2),
    E_PT' = (eps~^2 - omega^2/q - 1/16)/2,  L_E~ = -1/2 + sqrt(1/16 + 2 E_PT').
    """
    e2 = _epsilon_sq(E, qn.kappa_kmb, p) * p.a * p.a
    if e2 < 0.0:
        raise UnboundRegimeError(
            f"eps~^2 = {e2} < 0: E = {E} lies outside the bound window"
        )
    om2 = p.a * p.a * p.v0 * (p.v0 / p.q - 2.0 * E)
    ll1 = lam * (lam + 1.0)
    a_const = e2 - ll1 - 0.25
    b_const = 0.5 * (p.q * e2 - om2 - 0.25 * p.q)
    e_tilde = -(e2 + ll1 + 0.25)
    e_pt = 0.5 * (e2 - om2 / p.q - 1.0 / 16.0)
    arg = 1.0 / 16.0 + 2.0 * e_pt
    if arg < 0.0:
        raise UnboundRegimeError(f"eps~^2 - omega^2/q = {arg} < 0 in L_E~")
    l_e = -0.5 + math.sqrt(arg)
    eps_t = math.sqrt(e2)
    return RosenMorseParams(
        A=a_const,
        B=b_const,
        E_tilde=e_tilde,
        E_PT_prime=e_pt,
        L_E=l_e,
        M1=eps_t + (lam + 0.5),
        M2=eps_t - (lam + 0.5),
    )


def rosen_morse_identity_residual(xi: float, E: float, lam: float, qn, p: PotentialParams) -> float:
    """Pointwise residual of the exact map onto the Rosen-Morse problem.

    With f = (dr/dxi)^2, the substitution u(r) = f^(1/4) v(xi) turns
    u'' = W(r;E) u into v'' = [f W + Q] v, where

        Q = (3/4)(g''/g')^2 - (1/2)(g'''/g')
          = q (q + 2 e^(2 xi/a)) / (a^2 (e^(2 xi/a) + q)^2)

    and the claim being verified is

        a^2 (f W + Q) = 2 [A tanh_q(xi/a) - B / cosh_q^2(xi/a) - E~].

    Returns the absolute difference of the two sides; < 1e-10 everywhere on
    the bound-regime parameter set (the identity is exact, the residual is
    roundoff).
    """
    a = p.a
    y = xi / a
    r = r_of_xi(xi, p)
    w = effective_radial_potential(r, E, lam, qn, p)
    f = regulating_function(xi, p)
    # Q in a stable large-|y| form
    if y >= 0.0:
        e = math.exp(-2.0 * y)
        quantum = p.q * e * (p.q * e + 2.0) / ((1.0 + p.q * e) * (1.0 + p.q * e))
    else:
        x = math.exp(2.0 * y)
        quantum = p.q * (p.q + 2.0 * x) / ((x + p.q) * (x + p.q))
    rm = rosen_morse_params(E, lam, qn, p)
    lhs = a * a * f * w + quantum
    rhs = 2.0 * (rm.A * tanh_q(y, p.q) - rm.B / cosh_q(y, p.q) ** 2 - rm.E_tilde)
    return abs(lhs - rhs)
