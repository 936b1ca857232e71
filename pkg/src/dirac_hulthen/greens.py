"""Radial Green's functions of the second-order problem, the spinor assembly
of the linear problem, bound-state pole location, and the Coulomb-limit
Whittaker form with its recurrence check.

All radial values are real in the bound window; evaluations requested within
1e-8 (in gamma-argument distance) of a bound-state pole raise AtPoleError.
For one channel the second-order radial factor is

    G(r'', r'; E) = a * Gamma(alpha-) Gamma(alpha+) / (Gamma(2 eps~ + 1) Gamma(2 lam + 2))
                    * U_right(r_big) * U_left(r_small)

with alpha-+ = 1 + lam + eps~ -+ sqrt(eps~^2 - omega^2/q); U_right carries the
hypergeometric argument q e^(-r/a) (regular at infinity, third parameter
2 eps~ + 1) and U_left carries 1 - q e^(-r/a) (regular at the inner wall,
third parameter 2 lam + 2).  The regular-at-infinity factor is evaluated at
the larger radius (Sturm-Liouville pairing).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AtPoleError, ConfigError, RadialDomainError, UnboundRegimeError
from .angular import bilinear
from .potential import PotentialParams, RosenMorseParams
from .spectrum import QuantumNumbers, epsilon_tilde, lambda_of_gamma, omega_sq
from .specfun import (
    gamma_ratio,
    gauss_2f1,
    gauss_2f1_derivative,
    ln_gamma,
    tanh_q_halves,
    whittaker,
)

__all__ = [
    "GreensEval",
    "CoulombChannel",
    "SpinorChannelEval",
    "POLE_PROXIMITY",
    "quantization_argument",
    "assert_off_pole",
    "rosen_morse_green",
    "radial_green_second_order",
    "u_left",
    "u_right",
    "spinor_green_assembly",
    "pole_scan",
    "coulomb_green_radial",
    "coulomb_recurrence_check",
]

POLE_PROXIMITY = 1e-8


@dataclass(frozen=True)
class GreensEval:
    """One radial Green's-function sample."""

    r_small: float
    r_big: float
    E: float
    value: float


@dataclass(frozen=True)
class CoulombChannel:
    """Coulomb-limit channel data: gamma0 = sign*sqrt(kappa^2 - (Ze^2)^2),
    lam0 = lam(gamma0), lam0~ = lam(-gamma0), omega~ = sqrt(mu^2 - E^2)."""

    gamma0: float
    lambda0: float
    lambda0_tilde: float
    omega_tilde: float
    ze2: float

    @classmethod
    def for_state(
        cls, kappa: int, sign_gamma: int, ze2: float, mu: float, E: float
    ) -> "CoulombChannel":
        if abs(E) >= mu:
            raise UnboundRegimeError(f"|E| = {abs(E)} >= mu = {mu}")
        radicand = kappa * kappa - ze2 * ze2
        if radicand <= 0.0:
            from .errors import SupercriticalCouplingError

            raise SupercriticalCouplingError(
                f"supercritical Coulomb coupling: Ze^2 = {ze2} >= |kappa| = {abs(kappa)}"
            )
        gamma0 = sign_gamma * math.sqrt(radicand)
        return cls(
            gamma0=gamma0,
            lambda0=lambda_of_gamma(gamma0),
            lambda0_tilde=lambda_of_gamma(-gamma0),
            omega_tilde=math.sqrt(mu * mu - E * E),
            ze2=ze2,
        )


# ----------------------------------------------------------------------
# pole bookkeeping
# ----------------------------------------------------------------------

def quantization_argument(E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """1 + lam + eps~ - sqrt(eps~^2 - omega^2/q); the Green's function has a
    pole wherever this hits a non-positive integer."""
    eps_t = epsilon_tilde(E, qn, p)
    arg = eps_t * eps_t - omega_sq(E, p) / p.q
    if arg < 0.0:
        raise UnboundRegimeError(f"eps~^2 - omega^2/q = {arg} < 0 at E = {E}")
    return 1.0 + qn.lam + eps_t - math.sqrt(arg)


def _pole_distance(value: float) -> float:
    n = round(value)
    if n > 0:
        return abs(value)  # distance to the nearest non-positive integer, 0
    return abs(value - n)


def assert_off_pole(E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """Raise AtPoleError when the gamma argument sits within POLE_PROXIMITY of
    a non-positive integer; returns the argument otherwise."""
    arg = quantization_argument(E, qn, p)
    if arg <= 0.5 and _pole_distance(arg) < POLE_PROXIMITY:
        raise AtPoleError(
            f"E = {E} is within {POLE_PROXIMITY} (gamma-argument distance) of a "
            f"bound-state pole (argument {arg})"
        )
    return arg


_check_off_pole = assert_off_pole


# ----------------------------------------------------------------------
# Rosen-Morse Green's function (mapped 1-D problem)
# ----------------------------------------------------------------------

def rosen_morse_green(y_pp: float, y_p: float, rm: RosenMorseParams, q: float) -> float:
    """Closed-form Green's function of the deformed Rosen-Morse problem at the
    mapped energy, evaluated at the two dimensionless points y'' and y'.

    The factor with third parameter M1+M2+1 and argument (1 - tanh_q y)/2 is
    regular at y -> +inf and carries y_big; the M1-M2+1 factor with argument
    (1 + tanh_q y)/2 is regular at y -> -inf and carries y_small.
    """
    if _pole_distance(rm.M1 - rm.L_E) < POLE_PROXIMITY and (rm.M1 - rm.L_E) <= 0.5:
        raise AtPoleError(f"Rosen-Morse Green's function at a pole: M1 - L_E = {rm.M1 - rm.L_E}")
    y_big, y_small = max(y_pp, y_p), min(y_pp, y_p)
    a1 = rm.M1 - rm.L_E
    a2 = rm.L_E + rm.M1 + 1.0
    c_right = rm.M1 + rm.M2 + 1.0
    c_left = rm.M1 - rm.M2 + 1.0
    um_big, up_big = tanh_q_halves(y_big, q)
    um_small, up_small = tanh_q_halves(y_small, q)
    log_pref = (
        ln_gamma(a1) + ln_gamma(a2) - ln_gamma(c_right) - ln_gamma(c_left)
    )
    log_pref += 0.5 * (rm.M1 + rm.M2) * (math.log(um_small) + math.log(um_big))
    log_pref += 0.5 * (rm.M1 - rm.M2) * (math.log(up_small) + math.log(up_big))
    f_right = gauss_2f1(a1, a2, c_right, um_big)
    f_left = gauss_2f1(a1, a2, c_left, up_small)
    value = cmath.exp(log_pref) * f_right * f_left
    return value.real


# ----------------------------------------------------------------------
# radial solutions and the second-order Green's function
# ----------------------------------------------------------------------

def _kernel_numbers(E: float, qn: QuantumNumbers, p: PotentialParams):
    eps_t = epsilon_tilde(E, qn, p)
    om2 = omega_sq(E, p)
    arg = eps_t * eps_t - om2 / p.q
    if arg < 0.0:
        raise UnboundRegimeError(f"eps~^2 - omega^2/q = {arg} < 0 at E = {E}")
    s = math.sqrt(arg)
    return eps_t, 1.0 + qn.lam + eps_t - s, 1.0 + qn.lam + eps_t + s


def u_left(r: float, E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """Solution factor regular at the inner wall:

        (q e^(-r/a))^eps~ (1 - q e^(-r/a))^(lam+1)
          * 2F1(alpha-, alpha+, 2 lam + 2; 1 - q e^(-r/a)).
    """
    if not (r > p.r0):
        raise RadialDomainError(f"r = {r} not above r0 = {p.r0}")
    eps_t, am, ap = _kernel_numbers(E, qn, p)
    x = (r - p.r0) / p.a
    z = -math.expm1(-x)  # 1 - q e^(-r/a)
    log_pow = eps_t * (math.log(p.q) - r / p.a) + (qn.lam + 1.0) * math.log(z)
    f = gauss_2f1(am, ap, 2.0 * qn.lam + 2.0, z)
    return (cmath.exp(log_pow) * f).real


def u_right(r: float, E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """Solution factor regular at infinity:

        (q e^(-r/a))^eps~ (1 - q e^(-r/a))^(lam+1)
          * 2F1(alpha-, alpha+, 2 eps~ + 1; q e^(-r/a)).
    """
    if not (r > p.r0):
        raise RadialDomainError(f"r = {r} not above r0 = {p.r0}")
    eps_t, am, ap = _kernel_numbers(E, qn, p)
    x = (r - p.r0) / p.a
    z = math.exp(-x)  # q e^(-r/a)
    log_pow = eps_t * (math.log(p.q) - r / p.a) + (qn.lam + 1.0) * math.log(-math.expm1(-x))
    f = gauss_2f1(am, ap, 2.0 * eps_t + 1.0, z)
    return (cmath.exp(log_pow) * f).real


def _du_left_dr(r: float, E: float, qn: QuantumNumbers, p: PotentialParams) -> float:
    """Analytic d/dr of u_left via the product rule over its three factors."""
    eps_t, am, ap = _kernel_numbers(E, qn, p)
    x = (r - p.r0) / p.a
    z = -math.expm1(-x)
    dz_dr = math.exp(-x) / p.a  # d/dr (1 - q e^(-r/a))
    c = 2.0 * qn.lam + 2.0
    f = gauss_2f1(am, ap, c, z)
    fp = gauss_2f1_derivative(am, ap, c, z)
    log_pow = eps_t * (math.log(p.q) - r / p.a) + (qn.lam + 1.0) * math.log(z)
    pow_val = cmath.exp(log_pow).real
    logderiv_pow = -eps_t / p.a + (qn.lam + 1.0) * dz_dr / z
    return pow_val * (logderiv_pow * f.real + fp.real * dz_dr)


def radial_green_second_order(
    r_pp: float, r_p: float, E: float, qn: QuantumNumbers, p: PotentialParams
) -> GreensEval:
    """Channel radial factor of the second-order Green's function (the overall
    a included, the 1/(r'' r') measure and angular block excluded)."""
    if not (r_pp > p.r0 and r_p > p.r0):
        raise RadialDomainError(f"both radii must exceed r0 = {p.r0}")
    _check_off_pole(E, qn, p)
    eps_t, am, ap = _kernel_numbers(E, qn, p)
    pref = gamma_ratio((am, ap), (2.0 * eps_t + 1.0, 2.0 * qn.lam + 2.0))
    r_big, r_small = max(r_pp, r_p), min(r_pp, r_p)
    value = p.a * pref.real * u_right(r_big, E, qn, p) * u_left(r_small, E, qn, p)
    return GreensEval(r_small=r_small, r_big=r_big, E=E, value=value)


# ----------------------------------------------------------------------
# spinor assembly of the linear problem
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpinorChannelEval:
    """One (j, kappa) channel of the linear-problem Green's function at fixed
    radii and angles: the scalar radial amplitudes of the direct and the
    derivative term, plus the assembled 2x2 angular block
    amp_direct * B(kappa,kappa) + amp_derivative * B(kappa,-kappa).

    The beta-sector gamma-matrix factors multiplying the blocks are not
    represented; they act in the (beta~ = +/-1) space and carry no radial or
    angular dependence.
    """

    prefactor: float
    u_right_value: float
    coeff_direct: float
    amp_direct: float
    amp_derivative: float
    block: np.ndarray


def spinor_green_assembly(
    r_pp: float,
    r_p: float,
    angles_pp: tuple[float, float],
    angles_p: tuple[float, float],
    E: float,
    qn: QuantumNumbers,
    p: PotentialParams,
) -> SpinorChannelEval:
    """Assemble one channel of the first-order (linear) Green's function:

        (a/r'') * pref * U_right(r'') * {
            (mu - kappa E/gamma + v0 beta~/(e^(r'/a) - q) - a v0 beta~/(q r'))
                 * (U_left(r')/r') * B_{kappa,kappa}
          - beta~ (d/dr' + (1 + beta~ gamma)/r' - a v0 beta~ E/(q gamma))
                 * (U_left(r')/r') * B_{kappa,-kappa} }

    requires r'' > r' (the printed form applies the first-order operator at
    the smaller radius).
    """
    if not (r_pp > r_p):
        raise ConfigError("spinor assembly requires r'' > r'")
    if not (r_p > p.r0):
        raise RadialDomainError(f"r' = {r_p} not above r0 = {p.r0}")
    _check_off_pole(E, qn, p)
    eps_t, am, ap = _kernel_numbers(E, qn, p)
    pref = gamma_ratio((am, ap), (2.0 * eps_t + 1.0, 2.0 * qn.lam + 2.0)).real
    u_rb = u_right(r_pp, E, qn, p)
    bt = float(qn.beta_tilde)
    coeff_direct = (
        p.mu
        - qn.kappa * E / qn.gamma
        + p.v0 * bt / (math.exp(r_p / p.a) - p.q)
        - p.a * p.v0 * bt / (p.q * r_p)
    )
    ul = u_left(r_p, E, qn, p)
    dul = _du_left_dr(r_p, E, qn, p)
    # (d/dr' + (1 + beta~ gamma)/r' - a v0 beta~ E/(q gamma)) acting on U_left/r'
    deriv_on_u_over_r = (
        dul / r_p
        - ul / (r_p * r_p)
        + (1.0 + bt * qn.gamma) / r_p * (ul / r_p)
        - p.a * p.v0 * bt * E / (p.q * qn.gamma) * (ul / r_p)
    )
    scale = p.a / r_pp * pref * u_rb
    amp_direct = scale * coeff_direct * ul / r_p
    amp_derivative = -bt * scale * deriv_on_u_over_r
    j = qn.j
    block = amp_direct * bilinear(qn.kappa, qn.kappa, j, angles_pp, angles_p)
    block = block + amp_derivative * bilinear(qn.kappa, -qn.kappa, j, angles_pp, angles_p)
    return SpinorChannelEval(
        prefactor=pref,
        u_right_value=u_rb,
        coeff_direct=coeff_direct,
        amp_direct=amp_direct,
        amp_derivative=amp_derivative,
        block=block,
    )


# ----------------------------------------------------------------------
# pole location
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PoleLocation:
    n_r: int
    energy: float


def pole_scan(
    E_lo: float,
    E_hi: float,
    n_points: int,
    qn: QuantumNumbers,
    p: PotentialParams,
) -> list[PoleLocation]:
    """Scan the gamma-argument for crossings of non-positive integers and
    refine each by bisection to 1e-10 * mu.  The returned energies coincide
    with the closed-form spectrum."""
    if n_points < 2:
        raise ConfigError("n_points must be at least 2")
    if not (E_lo < E_hi):
        raise ConfigError("need E_lo < E_hi")

    def arg_of(E: float) -> float:
        return quantization_argument(E, qn, p)

    es = np.linspace(E_lo, E_hi, n_points)
    vals = [arg_of(float(e)) for e in es]
    poles: list[PoleLocation] = []
    for i in range(n_points - 1):
        lo_v, hi_v = vals[i], vals[i + 1]
        lo_e, hi_e = float(es[i]), float(es[i + 1])
        n_lo = math.floor(min(lo_v, hi_v))
        n_hi = math.ceil(max(lo_v, hi_v))
        for n in range(n_lo, n_hi + 1):
            if n > 0:
                continue
            f_lo, f_hi = lo_v - n, hi_v - n
            if f_lo == 0.0:
                poles.append(PoleLocation(n_r=-n, energy=lo_e))
                continue
            if f_lo * f_hi >= 0.0:
                continue
            a_e, b_e, f_a = lo_e, hi_e, f_lo
            while b_e - a_e > 1e-10 * p.mu:
                mid = 0.5 * (a_e + b_e)
                f_mid = arg_of(mid) - n
                if f_a * f_mid <= 0.0:
                    b_e = mid
                else:
                    a_e, f_a = mid, f_mid
            poles.append(PoleLocation(n_r=-n, energy=0.5 * (a_e + b_e)))
    poles.sort(key=lambda pl: pl.energy)
    return poles


# ----------------------------------------------------------------------
# Coulomb limit
# ----------------------------------------------------------------------

def coulomb_green_radial(
    r_pp: float, r_p: float, E: float, channel: CoulombChannel, mu: float
) -> float:
    """Channel radial factor of the Coulomb-limit Green's function,

        (1/2) Gamma(1 + lam0 - k) / (omega~ Gamma(2 lam0 + 2))
            * M_{k, lam0+1/2}(2 omega~ r') * W_{k, lam0+1/2}(2 omega~ r'')

    with k = Ze^2 E / omega~ and r'' > r' (the 1/(r'' r') measure excluded);
    it is the a -> infinity limit of the deformed channel factor at q = 1,
    v0 = Ze^2/a."""
    if not (r_pp > r_p > 0.0):
        raise ConfigError("coulomb Green's function requires r'' > r' > 0")
    om = channel.omega_tilde
    k = channel.ze2 * E / om
    garg = 1.0 + channel.lambda0 - k
    if garg <= 0.5 and _pole_distance(garg) < POLE_PROXIMITY:
        raise AtPoleError(
            f"E = {E} within {POLE_PROXIMITY} of a Coulomb bound-state pole "
            f"(gamma argument {garg})"
        )
    pref = gamma_ratio((garg,), (2.0 * channel.lambda0 + 2.0,)).real / om
    b = channel.lambda0 + 0.5
    m_val = whittaker("M", k, b, 2.0 * om * r_p)
    w_val = whittaker("W", k, b, 2.0 * om * r_pp)
    return 0.5 * pref * m_val * w_val


def coulomb_recurrence_check(
    r: float, E: float, channel: CoulombChannel, mu: float
) -> float:
    """Residual of the ladder identities linking the two Whittaker indices.

    With g = |gamma0|, k = Ze^2 E/omega~, z = 2 omega~ r and
    f_+/-(r) = M_{k, g -+... }:

        D_+ [M_{k,g+1/2}(z)/r] = 2 omega~ (2g+1) M_{k,g-1/2}(z)/r
        D_- [M_{k,g-1/2}(z)/r] = omega~ (g^2-k^2)/(2 g^2 (2g+1)) M_{k,g+1/2}(z)/r
        D_+- = d/dr + (1 +- g)/r -+ Ze^2 E / g

    The product of the two coefficients is mu^2 - (kappa E/gamma0)^2, the
    squared coupling of the first-order radial pair.  Derivatives are taken
    analytically through the 1F1 series; the returned value is the largest
    relative residual of the two identities and of the product identity.
    """
    if r <= 0.0:
        raise ConfigError("r must be positive")
    om = channel.omega_tilde
    g = abs(channel.gamma0)
    k = channel.ze2 * E / om
    z = 2.0 * om * r

    def m_over_r(mw: float) -> float:
        return whittaker("M", k, mw, z) / r

    def d_m_over_r(mw: float) -> float:
        # d/dr [ z^(mw+1/2) e^(-z/2) 1F1(a1; b1; z) / r ] with z = 2 om r
        from .specfun import kummer_1f1

        a1, b1 = mw - k + 0.5, 2.0 * mw + 1.0
        f = kummer_1f1(a1, b1, z).real
        fp = (a1 / b1) * kummer_1f1(a1 + 1.0, b1 + 1.0, z).real
        m = z ** (mw + 0.5) * math.exp(-0.5 * z) * f
        dm_dz = z ** (mw + 0.5) * math.exp(-0.5 * z) * (
            (mw + 0.5) / z * f - 0.5 * f + fp
        )
        return (2.0 * om * dm_dz - m / r) / r

    c_plus = 2.0 * om * (2.0 * g + 1.0)
    c_minus = om * (g * g - k * k) / (2.0 * g * g * (2.0 * g + 1.0))

    up = m_over_r(g + 0.5)
    dn = m_over_r(g - 0.5)
    lhs_plus = d_m_over_r(g + 0.5) + (1.0 + g) / r * up - channel.ze2 * E / g * up
    lhs_minus = d_m_over_r(g - 0.5) + (1.0 - g) / r * dn + channel.ze2 * E / g * dn
    res_plus = abs(lhs_plus - c_plus * dn) / max(abs(c_plus * dn), 1e-300)
    res_minus = abs(lhs_minus - c_minus * up) / max(abs(c_minus * up), 1e-300)
    # product identity: c_plus * c_minus == mu^2 - (kappa E / gamma0)^2 with
    # kappa^2 = gamma0^2 + (Ze^2)^2
    kappa_sq = g * g + channel.ze2 * channel.ze2
    target = mu * mu - kappa_sq * E * E / (g * g)
    res_prod = abs(c_plus * c_minus - target) / max(abs(target), 1e-300)
    return max(res_plus, res_minus, res_prod)
