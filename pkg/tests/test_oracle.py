import math

import numpy as np
import pytest

from dirac_hulthen import (
    PotentialParams,
    QuantumNumbers,
    RadialGrid,
    approximation_error_report,
    bound_energies,
    certify_levels,
    eigen_solve,
    numerov_integrate,
)
from dirac_hulthen.errors import ConfigError


# ----------------------------------------------------------------------
# raw integrator
# ----------------------------------------------------------------------

def test_grid_validation():
    with pytest.raises(ConfigError):
        RadialGrid(r_start=0.1, r_end=10.0, n_points=100)
    with pytest.raises(ConfigError):
        RadialGrid(r_start=5.0, r_end=1.0, n_points=4000)
    g = RadialGrid(r_start=0.0, r_end=10.0, n_points=2001)
    assert g.spacing == pytest.approx(0.005)


def test_constant_kernel_exponential():
    # W = k^2 > 0: the inward solution is e^(-k r) up to normalization
    k = 1.0
    grid = RadialGrid(r_start=0.0, r_end=10.0, n_points=2001)
    rs = grid.points()
    h = grid.spacing
    start = (math.exp(-k * rs[-1]), math.exp(-k * rs[-2]))
    sol = numerov_integrate(lambda r, E: k * k, 0.0, grid, "inward", start_values=start)
    exact = np.exp(-k * rs)
    assert np.max(np.abs(sol.u - exact) / exact) < 1e-10
    assert sol.nodes == 0


def test_zero_kernel_linear():
    grid = RadialGrid(r_start=0.0, r_end=1.0, n_points=2001)
    sol = numerov_integrate(lambda r, E: 0.0, 0.0, grid, "outward")
    rs = grid.points()
    assert np.allclose(sol.u, rs, rtol=0, atol=1e-13)


def test_unknown_direction():
    grid = RadialGrid(r_start=0.0, r_end=1.0, n_points=2001)
    with pytest.raises(ConfigError):
        numerov_integrate(lambda r, E: 0.0, 0.0, grid, "sideways")


def _harmonic_defect(E: float, n_target: int, grid: RadialGrid) -> float:
    rs = grid.points()
    h = grid.spacing

    def w(r, e):
        return r * r - e

    start_l = (math.exp(-rs[0] ** 2 / 2.0), math.exp(-rs[1] ** 2 / 2.0))
    start_r = (math.exp(-rs[-1] ** 2 / 2.0), math.exp(-rs[-2] ** 2 / 2.0))
    out = numerov_integrate(w, E, grid, "outward", start_values=start_l)
    inw = numerov_integrate(w, E, grid, "inward", start_values=start_r)
    m = int(np.searchsorted(rs, 0.63))
    t = (h * h / 12.0) * np.array([w(r, E) for r in rs])
    # product (Wronskian-like) form: pole-free in E, zero exactly at eigenvalues
    so = max(abs(out.u[m - 1]), abs(out.u[m]), abs(out.u[m + 1]))
    si = max(abs(inw.u[m - 1]), abs(inw.u[m]), abs(inw.u[m + 1]))
    o = out.u / so
    z = inw.u / si
    return (
        (1.0 - t[m + 1]) * z[m + 1] * o[m]
        + (1.0 - t[m - 1]) * o[m - 1] * z[m]
        - (2.0 + 10.0 * t[m]) * o[m] * z[m]
    )


@pytest.mark.parametrize("n", [0, 1, 2, 4])
def test_harmonic_zero_modes(n):
    # u'' = (r^2 - E) u has normalizable solutions exactly at E = 2n + 1
    grid = RadialGrid(r_start=-8.0, r_end=8.0, n_points=6001)
    lo, hi = 2.0 * n + 0.5, 2.0 * n + 1.5
    d_lo = _harmonic_defect(lo, n, grid)
    d_hi = _harmonic_defect(hi, n, grid)
    assert d_lo * d_hi < 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        d_mid = _harmonic_defect(mid, n, grid)
        if d_lo * d_mid <= 0.0:
            hi = mid
        else:
            lo, d_lo = mid, d_mid
        if hi - lo < 1e-12:
            break
    assert 0.5 * (lo + hi) == pytest.approx(2.0 * n + 1.0, abs=1e-8)


def test_numerov_stencil_order_six():
    # one-step stencil defect on the exact solution e^(-k r) scales like h^6
    k = 1.3
    r0 = 0.7

    def defect(h):
        w = k * k
        t = h * h * w / 12.0
        return (
            (1.0 - t) * math.exp(-k * (r0 + h))
            - (2.0 + 10.0 * t) * math.exp(-k * r0)
            + (1.0 - t) * math.exp(-k * (r0 - h))
        )

    exps = []
    h = 0.2
    for _ in range(3):
        exps.append(math.log2(abs(defect(h)) / abs(defect(h / 2.0))))
        h /= 2.0
    for e in exps:
        assert 5.5 < e < 6.5


# ----------------------------------------------------------------------
# eigen_solve against the closed form
# ----------------------------------------------------------------------

def test_certify_levels_hard_channel():
    # lam < 0 channel (fractional wall exponent) is the numerically hardest
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(1, 1, p)
    levels = bound_energies(qn, p, 2)
    oracle = certify_levels(qn, p, levels)
    for lv, orr in zip(levels, oracle):
        assert orr.n_r == lv.n_r
        assert abs(orr.E - lv.E) < 1e-6 * p.mu
        assert orr.match_defect < 1e-8


def test_eigen_solve_window_census_and_nodes():
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=2.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    levels = bound_energies(qn, p, 8)
    assert len(levels) >= 4
    lo = levels[0].E - 1e-4 * p.mu
    hi = levels[2].E + 1e-4 * p.mu  # between levels 2 and 3
    found = eigen_solve(qn, p, lo, hi)
    assert [f.n_r for f in found] == [0, 1, 2]
    for f, lv in zip(found, levels):
        assert abs(f.E - lv.E) < 1e-6 * p.mu


def test_matching_radius_independence():
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.5)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    lv = bound_energies(qn, p, 2)[1]
    lo, hi = lv.E - 2e-4 * p.mu, lv.E + 2e-4 * p.mu
    e_a = eigen_solve(qn, p, lo, hi)[0].E
    e_b = eigen_solve(qn, p, lo, hi, match_offset=400)[0].E
    assert abs(e_a - e_b) < 1e-9 * p.mu


def test_exact_vs_approximate_gap_shrinks_with_range():
    # Coulomb regime: fixed a*v0, growing a
    gaps = []
    for amu in (50.0, 200.0):
        p = PotentialParams(mu=amu, v0=0.2, a=1.0, q=1.0)
        qn = QuantumNumbers.for_channel(1, 1, p)
        levels = bound_energies(qn, p, 0)
        rows = approximation_error_report(qn, p, levels)
        assert rows and not math.isnan(rows[0][3])
        gaps.append(abs(rows[0][3]) / amu)
    assert gaps[1] < gaps[0]


def test_report_empty_for_tiny_depth():
    p = PotentialParams(mu=1.0, v0=1e-9, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    assert approximation_error_report(qn, p, []) == []


def test_report_delta_smaller_than_spacing():
    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.0)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    levels = bound_energies(qn, p, 1)
    rows = approximation_error_report(qn, p, levels)
    spacing = levels[1].E - levels[0].E
    assert abs(rows[0][3]) < spacing


def test_overflow_rescaling_in_blocks():
    # exponential growth over a long range must trip the block rescaling and
    # still leave a finite, sign-correct sample array
    k = 1.0
    grid = RadialGrid(r_start=0.0, r_end=1200.0, n_points=6001)
    rs = grid.points()
    start = (math.exp(0.0), math.exp(k * grid.spacing))
    sol = numerov_integrate(lambda r, E: k * k, 0.0, grid, "outward", start_values=start)
    assert np.all(np.isfinite(sol.u))
    assert sol.log_scale[-1] > 0.0
    # true log u(r) = r recovered from sample + accumulated scale (up to the
    # h^4 dispersion of the scheme over 1200 growth lengths)
    i = len(rs) - 1
    assert math.log(sol.u[i]) + sol.log_scale[i] == pytest.approx(rs[i], abs=0.05)
    assert sol.nodes == 0
