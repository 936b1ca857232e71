import math

import numpy as np
import pytest

from dirac_hulthen import (
    CoulombChannel,
    PotentialParams,
    QuantumNumbers,
    bound_energies,
    coulomb_energies,
    coulomb_green_radial,
    coulomb_recurrence_check,
    pole_scan,
    radial_green_second_order,
    rosen_morse_green,
    spinor_green_assembly,
    u_left,
    u_right,
)
from dirac_hulthen.angular import bilinear
from dirac_hulthen.errors import (
    AtPoleError,
    ConfigError,
    DegenerateParameterError,
)
from dirac_hulthen.greens import quantization_argument
from dirac_hulthen.potential import (
    effective_radial_potential,
    regulating_function,
    rosen_morse_params,
    xi_of_r,
)


@pytest.fixture
def setup_q15():
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.5)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    return p, qn


# ----------------------------------------------------------------------
# Rosen-Morse Green's function
# ----------------------------------------------------------------------

def test_rm_green_symmetry(setup_q15):
    p, qn = setup_q15
    rm = rosen_morse_params(0.9 * p.mu, qn.lam, qn, p)
    a = rosen_morse_green(1.3, -0.4, rm, p.q)
    b = rosen_morse_green(-0.4, 1.3, rm, p.q)
    assert a == b


def test_rm_green_decay_in_far_point(setup_q15):
    p, qn = setup_q15
    rm = rosen_morse_params(0.9 * p.mu, qn.lam, qn, p)
    vals = [abs(rosen_morse_green(y, -0.5, rm, p.q)) for y in (1.0, 2.0, 3.0, 4.0)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_rm_green_consistent_with_radial_q1():
    # dual-path spot check at q = 1 through the coordinate map
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    E = 0.92 * p.mu
    rm = rosen_morse_params(E, qn.lam, qn, p)
    r_pp, r_p = 1.7, 0.6
    xi_pp, xi_p = xi_of_r(r_pp, p), xi_of_r(r_p, p)
    mapped = (
        0.5
        * p.a
        * (regulating_function(xi_pp, p) * regulating_function(xi_p, p)) ** 0.25
        * rosen_morse_green(xi_pp / p.a, xi_p / p.a, rm, p.q)
    )
    direct = radial_green_second_order(r_pp, r_p, E, qn, p).value
    assert mapped == pytest.approx(direct, rel=1e-9)


# ----------------------------------------------------------------------
# radial Green's function of the second-order problem
# ----------------------------------------------------------------------

def test_radial_green_symmetry(setup_q15):
    p, qn = setup_q15
    E = 0.9 * p.mu
    g1 = radial_green_second_order(2.0, 1.2, E, qn, p)
    g2 = radial_green_second_order(1.2, 2.0, E, qn, p)
    assert g1.value == g2.value
    assert g1.r_small == g2.r_small == 1.2


def test_radial_green_change_of_variables_grid(setup_q15):
    p, qn = setup_q15
    E = 0.88 * p.mu
    rm = rosen_morse_params(E, qn.lam, qn, p)
    for r_pp, r_p in [(0.9, 0.7), (1.6, 0.75), (3.0, 1.4), (5.5, 2.2)]:
        xi_pp, xi_p = xi_of_r(r_pp, p), xi_of_r(r_p, p)
        mapped = (
            0.5
            * p.a
            * (regulating_function(xi_pp, p) * regulating_function(xi_p, p)) ** 0.25
            * rosen_morse_green(xi_pp / p.a, xi_p / p.a, rm, p.q)
        )
        direct = radial_green_second_order(r_pp, r_p, E, qn, p).value
        assert abs(mapped - direct) <= 1e-9 * abs(direct)


def test_radial_green_exponential_decay(setup_q15):
    p, qn = setup_q15
    E = 0.9 * p.mu
    vals = [
        abs(radial_green_second_order(rb, 0.8, E, qn, p).value)
        for rb in (2.0, 3.0, 4.0, 5.0)
    ]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_radial_green_at_pole_raises(setup_q15):
    p, qn = setup_q15
    e0 = bound_energies(qn, p, 4)[0].E
    with pytest.raises(AtPoleError):
        radial_green_second_order(2.0, 1.0, e0, qn, p)


# ----------------------------------------------------------------------
# one-sided solutions
# ----------------------------------------------------------------------

def test_u_right_tail_behavior(setup_q15):
    p, qn = setup_q15
    E = 0.9 * p.mu
    from dirac_hulthen.spectrum import epsilon_tilde

    eps_t = epsilon_tilde(E, qn, p)
    r1, r2 = p.r0 + 14.0, p.r0 + 15.0
    ratio = u_right(r2, E, qn, p) / u_right(r1, E, qn, p)
    assert ratio == pytest.approx(math.exp(-eps_t * (r2 - r1) / p.a), rel=1e-4)


def test_u_left_wall_behavior(setup_q15):
    # leading (1 - q e^(-r/a))^(lam+1) wall power; the residual e^(-eps~ x/a)
    # factor contributes ~2e-4 at these offsets
    p, qn = setup_q15
    E = 0.9 * p.mu
    x1, x2 = 1e-5, 2e-5
    ratio = u_left(p.r0 + x2, E, qn, p) / u_left(p.r0 + x1, E, qn, p)
    assert ratio == pytest.approx(2.0 ** (qn.lam + 1.0), rel=1e-3)


@pytest.mark.parametrize("which", ["left", "right"])
def test_u_solves_radial_equation(which, setup_q15):
    # 5-point discrete u'' against W u, relative residual < 1e-6
    p, qn = setup_q15
    E = 0.97 * p.mu
    fn = u_left if which == "left" else u_right
    h = 5e-4 * p.a
    for r in (p.r0 + 0.3, p.r0 + 0.9, p.r0 + 2.1, p.r0 + 4.5):
        samples = [fn(r + k * h, E, qn, p) for k in (-2, -1, 0, 1, 2)]
        d2 = (
            -samples[4] + 16.0 * samples[3] - 30.0 * samples[2]
            + 16.0 * samples[1] - samples[0]
        ) / (12.0 * h * h)
        w = effective_radial_potential(r, E, qn.lam, qn, p)
        assert abs(d2 - w * samples[2]) <= 1e-6 * abs(w * samples[2])


# ----------------------------------------------------------------------
# spinor assembly
# ----------------------------------------------------------------------

def test_assembly_mass_piece_cancellation(setup_q15):
    p, qn = setup_q15
    E = p.mu * qn.gamma / qn.kappa  # makes mu - kappa E / gamma = 0
    r_pp, r_p = 2.5, 1.2
    ev = spinor_green_assembly(r_pp, r_p, (0.4, 0.2), (1.1, 2.2), E, qn, p)
    bt = qn.beta_tilde
    residual_piece = (
        p.v0 * bt / (math.exp(r_p / p.a) - p.q) - p.a * p.v0 * bt / (p.q * r_p)
    )
    assert ev.coeff_direct == pytest.approx(residual_piece, rel=1e-12)


def test_assembly_derivative_matches_finite_difference(setup_q15):
    p, qn = setup_q15
    E = 0.9 * p.mu
    r_p = 1.3
    h = 1e-5
    from dirac_hulthen.greens import _du_left_dr

    fd = (u_left(r_p + h, E, qn, p) - u_left(r_p - h, E, qn, p)) / (2.0 * h)
    assert _du_left_dr(r_p, E, qn, p) == pytest.approx(fd, rel=1e-6)


def test_assembly_block_structure(setup_q15):
    p, qn = setup_q15
    E = 0.9 * p.mu
    angles_pp, angles_p = (0.5, 0.1), (1.0, 2.0)
    ev = spinor_green_assembly(2.4, 1.1, angles_pp, angles_p, E, qn, p)
    expected = ev.amp_direct * bilinear(qn.kappa, qn.kappa, qn.j, angles_pp, angles_p)
    expected = expected + ev.amp_derivative * bilinear(
        qn.kappa, -qn.kappa, qn.j, angles_pp, angles_p
    )
    assert np.allclose(ev.block, expected, rtol=1e-13, atol=0)


def test_assembly_q1_reduction_dual_evaluation():
    # at q = 1 the assembled amplitudes match an independently coded
    # undeformed expression
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    E = 0.9 * p.mu
    r_pp, r_p = 2.4, 1.1
    ev = spinor_green_assembly(r_pp, r_p, (0.4, 0.2), (1.1, 2.2), E, qn, p)

    from dirac_hulthen.greens import _du_left_dr, _kernel_numbers
    from dirac_hulthen.specfun import gamma_ratio

    eps_t, am, ap = _kernel_numbers(E, qn, p)
    pref = gamma_ratio((am, ap), (2.0 * eps_t + 1.0, 2.0 * qn.lam + 2.0)).real
    scale = p.a / r_pp * pref * u_right(r_pp, E, qn, p)
    bt = float(qn.beta_tilde)
    coeff = (
        p.mu - qn.kappa * E / qn.gamma
        + p.v0 * bt / (math.exp(r_p / p.a) - 1.0)
        - p.a * p.v0 * bt / r_p
    )
    amp_direct = scale * coeff * u_left(r_p, E, qn, p) / r_p
    ul = u_left(r_p, E, qn, p)
    deriv = (
        _du_left_dr(r_p, E, qn, p) / r_p
        - ul / r_p**2
        + (1.0 + bt * qn.gamma) / r_p * ul / r_p
        - p.a * p.v0 * bt * E / qn.gamma * ul / r_p
    )
    amp_deriv = -bt * scale * deriv
    assert ev.amp_direct == pytest.approx(amp_direct, rel=1e-13)
    assert ev.amp_derivative == pytest.approx(amp_deriv, rel=1e-13)


def test_assembly_requires_ordered_radii(setup_q15):
    p, qn = setup_q15
    with pytest.raises(ConfigError):
        spinor_green_assembly(1.0, 2.0, (0.3, 0.3), (0.3, 0.3), 0.9 * p.mu, qn, p)


# ----------------------------------------------------------------------
# pole scan
# ----------------------------------------------------------------------

def test_pole_scan_matches_spectrum(setup_q15):
    p, qn = setup_q15
    levels = bound_energies(qn, p, 12)
    top = math.sqrt(p.mu**2 + qn.kappa_kmb / (12.0 * p.a**2)) * (1.0 - 1e-10)
    poles = pole_scan(p.v0 / (2.0 * p.q) + 1e-3, top, 400, qn, p)
    assert len(poles) == len(levels)
    for pole, lv in zip(poles, levels):
        assert pole.n_r == lv.n_r
        assert abs(pole.energy - lv.E) < 1e-9 * p.mu


def test_pole_scan_empty_for_tiny_depth():
    p = PotentialParams(mu=1.0, v0=1e-9, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    assert pole_scan(0.1, 0.999, 100, qn, p) == []


def test_green_diverges_near_pole(setup_q15):
    # probe near the wall, where the energy dependence of the exponential
    # factors does not mask the Gamma-prefactor blow-up
    p, qn = setup_q15
    e0 = bound_energies(qn, p, 4)[0].E
    r_pp, r_p = p.r0 + 0.35, p.r0 + 0.2
    near = max(
        abs(radial_green_second_order(r_pp, r_p, e0 + s * 1e-6 * p.mu, qn, p).value)
        for s in (-1, 1)
    )
    far = max(
        abs(radial_green_second_order(r_pp, r_p, e0 + s * 1e-2 * p.mu, qn, p).value)
        for s in (-1, 1)
    )
    assert near > 1e3 * far


# ----------------------------------------------------------------------
# Coulomb limit
# ----------------------------------------------------------------------

def test_coulomb_green_pole_energies_match_coulomb_levels():
    # the gamma-argument 1 + lam0 - Ze^2 E / omega~ crosses -n exactly at the
    # closed-form Coulomb energies
    mu, ze2, kappa = 1.0, 0.4, 1
    targets = coulomb_energies(kappa, -1, ze2, mu, 3)

    def garg(E):
        ch = CoulombChannel.for_state(kappa, -1, ze2, mu, E)
        return 1.0 + ch.lambda0 - ze2 * E / ch.omega_tilde

    for n, e_n in enumerate(targets):
        assert garg(e_n) == pytest.approx(-n, abs=1e-10)


def test_coulomb_green_matches_large_a_deformed():
    # a -> infinity limit of the deformed channel factor (q=1, v0=Ze^2/a)
    mu, ze2, kappa, E = 1.0, 0.2, 1, 0.93
    r_pp, r_p = 2.4, 1.1
    ch = CoulombChannel.for_state(kappa, -1, ze2, mu, E)
    target = coulomb_green_radial(r_pp, r_p, E, ch, mu)
    prev = None
    for a in (1e3, 1e4):
        p = PotentialParams(mu=mu, v0=ze2 / a, a=a, q=1.0)
        qn = QuantumNumbers.for_channel(kappa, 1, p)
        got = radial_green_second_order(r_pp, r_p, E, qn, p).value
        dev = abs(got - target) / abs(target)
        if prev is not None:
            assert dev < prev
        prev = dev
    assert prev < 1e-3


def test_coulomb_green_free_case_pole_free():
    # Ze^2 = 0: the gamma argument is identically 1 (no poles on (-mu, mu));
    # the Whittaker W combination itself is degenerate there and must say so
    mu, kappa = 1.0, 1
    for E in (-0.9, -0.3, 0.0, 0.5, 0.95):
        ch = CoulombChannel.for_state(kappa, -1, 0.0, mu, E)
        assert 1.0 + ch.lambda0 - 0.0 == pytest.approx(1.0)
    ch = CoulombChannel.for_state(kappa, -1, 0.0, mu, 0.5)
    with pytest.raises(DegenerateParameterError):
        coulomb_green_radial(2.0, 1.0, 0.5, ch, mu)


def test_coulomb_green_requires_ordered_radii():
    ch = CoulombChannel.for_state(1, -1, 0.3, 1.0, 0.9)
    with pytest.raises(ConfigError):
        coulomb_green_radial(1.0, 2.0, 0.9, ch, 1.0)


def test_coulomb_green_at_pole_raises():
    mu, ze2, kappa = 1.0, 0.4, 1
    e0 = coulomb_energies(kappa, -1, ze2, mu, 0)[0]
    ch = CoulombChannel.for_state(kappa, -1, ze2, mu, e0)
    with pytest.raises(AtPoleError):
        coulomb_green_radial(2.0, 1.0, e0, ch, mu)


# ----------------------------------------------------------------------
# Coulomb recurrence
# ----------------------------------------------------------------------

def test_coulomb_recurrence_sampled_points():
    mu, ze2, kappa, E = 1.0, 0.3, 1, 0.9
    ch = CoulombChannel.for_state(kappa, -1, ze2, mu, E)
    for r_om in (0.5, 1.0, 2.0):
        assert coulomb_recurrence_check(r_om / ch.omega_tilde, E, ch, mu) < 1e-8


def test_coulomb_recurrence_free_limit():
    mu, kappa, E = 1.0, 1, 0.9
    ch = CoulombChannel.for_state(kappa, -1, 0.0, mu, E)
    assert coulomb_recurrence_check(1.5, E, ch, mu) < 1e-8


def test_coulomb_recurrence_scale_covariance():
    # r -> c r with mu -> mu/c, E -> E/c leaves the relative residual intact
    mu, ze2, kappa, E, r = 1.0, 0.3, 1, 0.9, 1.7
    ch1 = CoulombChannel.for_state(kappa, -1, ze2, mu, E)
    res1 = coulomb_recurrence_check(r, E, ch1, mu)
    c = 3.7
    ch2 = CoulombChannel.for_state(kappa, -1, ze2, mu / c, E / c)
    res2 = coulomb_recurrence_check(c * r, E / c, ch2, mu / c)
    assert res2 == pytest.approx(res1, abs=5e-13)


# ----------------------------------------------------------------------
# quantization argument plumbing
# ----------------------------------------------------------------------

def test_quantization_argument_hits_integers_at_levels(setup_q15):
    p, qn = setup_q15
    for lv in bound_energies(qn, p, 6):
        assert quantization_argument(lv.E, qn, p) == pytest.approx(-lv.n_r, abs=1e-9)


def test_coulomb_channel_lambda_fields():
    from dirac_hulthen import lambda_of_gamma

    ch = CoulombChannel.for_state(1, -1, 0.3, 1.0, 0.9)
    assert ch.gamma0 == pytest.approx(-math.sqrt(1.0 - 0.09), rel=1e-15)
    assert ch.lambda0 == pytest.approx(lambda_of_gamma(ch.gamma0), rel=1e-15)
    assert ch.lambda0_tilde == pytest.approx(lambda_of_gamma(-ch.gamma0), rel=1e-15)
    assert ch.omega_tilde == pytest.approx(math.sqrt(1.0 - 0.81), rel=1e-14)
