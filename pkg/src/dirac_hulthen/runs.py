"""Computation layer behind the service endpoints: turns validated requests
into row dicts.  Channel sweeps run in a bounded worker pool; rows are always
emitted in a deterministic sorted order regardless of completion order, and no
spectrum row with a quantization residual above 1e-9 can exist (filtered at
construction).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import AtPoleError, ConfigError
from .greens import (
    CoulombChannel,
    assert_off_pole,
    coulomb_green_radial,
    coulomb_recurrence_check,
    pole_scan,
    radial_green_second_order,
)
from .oracle import certify_levels
from .potential import PotentialParams, centrifugal_approx
from .potential import rosen_morse_identity_residual as _rm_residual
from .spectrum import QuantumNumbers, bound_energies, coulomb_energies
from .specfun import (
    gauss_connection,
    gauss_2f1,
    kummer_1f1,
    whittaker,
)
from .angular import sigma_r_action_residual

MAX_WORKERS = 4
SCHEMA_VERSION = 1


def _channel(p: PotentialParams, kappa: int, beta_tilde: int, sign_gamma: int | None):
    return QuantumNumbers.for_channel(kappa, beta_tilde, p, sign_gamma=sign_gamma)


def spectrum_rows(
    p: PotentialParams,
    channels: list[tuple[int, int, int | None]],
    n_r_max: int,
    certify: bool,
    certify_tol: float,
) -> list[dict]:
    """Bound levels per channel; with certify, each row carries the Numerov
    oracle eigenvalue and must agree within certify_tol * mu."""

    def one(ch):
        kappa, beta_tilde, sign_gamma = ch
        qn = _channel(p, kappa, beta_tilde, sign_gamma)
        levels = bound_energies(qn, p, n_r_max)
        rows = []
        oracle = certify_levels(qn, p, levels) if (certify and levels) else None
        for i, lv in enumerate(levels):
            row = {
                "kappa": qn.kappa,
                "beta_tilde": qn.beta_tilde,
                "sign_gamma": qn.sign_gamma,
                "n_r": lv.n_r,
                "energy": lv.E,
                "epsilon_tilde": lv.epsilon_tilde,
                "omega_sq": lv.omega_sq,
                "residual": lv.residual,
            }
            if oracle is not None:
                diff = abs(oracle[i].E - lv.E)
                if diff > certify_tol * p.mu:
                    raise ConfigError(
                        f"certification failed: |closed-form - oracle| = {diff} "
                        f"> {certify_tol * p.mu} at kappa={kappa}, n_r={lv.n_r}"
                    )
                row["oracle_energy"] = oracle[i].E
                row["oracle_abs_diff"] = diff
                row["match_defect"] = oracle[i].match_defect
            rows.append(row)
        return rows

    with ThreadPoolExecutor(max_workers=MAX_WORKERS) as pool:
        chunks = list(pool.map(one, channels))
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=lambda r: (r["kappa"], r["beta_tilde"], r["sign_gamma"], r["n_r"]))
    return rows


def greens_rows(
    p: PotentialParams,
    kappa: int,
    beta_tilde: int,
    sign_gamma: int | None,
    energy: float,
    r_values: list[float],
) -> list[dict]:
    """G(r'', r'; E) over all ordered pairs of the radial grid."""
    qn = _channel(p, kappa, beta_tilde, sign_gamma)
    try:
        assert_off_pole(energy, qn, p)
    except AtPoleError as exc:
        window = max(0.05 * p.mu, 1e-3 * p.mu)
        lo = max(energy - window, p.v0 / (2.0 * p.q) * (1.0 + 1e-12))
        hi = min(energy + window, _window_top(qn, p))
        poles = pole_scan(lo, hi, 200, qn, p) if lo < hi else []
        nearest_e = min((pl.energy for pl in poles), key=lambda e: abs(e - energy), default=None)
        raise AtPoleError(str(exc), nearest_pole=nearest_e) from None
    rows = []
    for r_pp in r_values:
        for r_p in r_values:
            g = radial_green_second_order(r_pp, r_p, energy, qn, p)
            rows.append(
                {
                    "r_pp": r_pp,
                    "r_p": r_p,
                    "energy": energy,
                    "value": g.value,
                }
            )
    return rows


def coulomb_greens_rows(
    mu: float,
    ze2: float,
    kappa: int,
    sign_gamma: int,
    energy: float,
    r_values: list[float],
) -> list[dict]:
    """Coulomb-limit Green's-function samples over ordered pairs r'' > r'."""
    channel = CoulombChannel.for_state(kappa, sign_gamma, ze2, mu, energy)
    rows = []
    for r_pp in r_values:
        for r_p in r_values:
            if not (r_pp > r_p):
                continue
            value = coulomb_green_radial(r_pp, r_p, energy, channel, mu)
            rows.append({"r_pp": r_pp, "r_p": r_p, "energy": energy, "value": value})
    return rows


def _window_top(qn: QuantumNumbers, p: PotentialParams) -> float:
    return math.sqrt(p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a)) * (1.0 - 1e-12)


def approx_error_rows(p: PotentialParams, r_over_a: list[float]) -> list[dict]:
    """Pointwise centrifugal-approximant error against 1/r^2."""
    rows = []
    for x in r_over_a:
        r = p.r0 + x * p.a
        approx = centrifugal_approx(r, p)
        inv_r2 = 1.0 / (r * r) if r > 0 else math.inf
        rows.append(
            {
                "r_over_a": x,
                "approximant": approx,
                "inverse_r2": inv_r2,
                "abs_diff": approx - inv_r2,
                "rel_error": abs(approx - inv_r2) / inv_r2 if inv_r2 else math.nan,
            }
        )
    return rows


def approx_level_rows(
    p: PotentialParams,
    kappa: int,
    beta_tilde: int,
    sign_gamma: int | None,
    n_r_max: int,
) -> list[dict]:
    """Per-level energy cost of the centrifugal approximation."""
    from .oracle import approximation_error_report

    qn = _channel(p, kappa, beta_tilde, sign_gamma)
    levels = bound_energies(qn, p, n_r_max)
    rows = []
    for n_r, e_closed, e_exact, delta in approximation_error_report(qn, p, levels):
        rows.append(
            {
                "kappa": qn.kappa,
                "beta_tilde": qn.beta_tilde,
                "n_r": n_r,
                "energy_closed": e_closed,
                "energy_exact_centrifugal": None if math.isnan(e_exact) else e_exact,
                "delta_e": None if math.isnan(delta) else delta,
            }
        )
    return rows


def coulomb_limit_rows(
    mu: float,
    ze2: float,
    kappa: int,
    beta_tilde: int,
    a_values: list[float],
    n_r_max: int,
) -> list[dict]:
    """Closed-form levels at v0 = Ze^2/a, q = 1, on a ladder of ranges a,
    against the Coulomb levels, with relative deviations."""
    rows = []
    sign_gamma = -beta_tilde * (1 if kappa > 0 else -1)
    e_coulomb = coulomb_energies(kappa, sign_gamma, ze2, mu, n_r_max)
    for a in sorted(a_values):
        p = PotentialParams(mu=mu, v0=ze2 / a, a=a, q=1.0)
        qn = _channel(p, kappa, beta_tilde, None)
        levels = bound_energies(qn, p, n_r_max)
        for lv in levels:
            target = e_coulomb[lv.n_r]
            rows.append(
                {
                    "a": a,
                    "kappa": kappa,
                    "n_r": lv.n_r,
                    "energy": lv.E,
                    "energy_coulomb": target,
                    "rel_deviation": abs(lv.E - target) / abs(target),
                }
            )
    return rows


def selftest_rows() -> list[dict]:
    """Fast internal identity checks (a miniature acceptance sweep)."""
    checks: list[dict] = []

    def record(name: str, passed: bool, detail: str):
        checks.append({"check": name, "passed": bool(passed), "detail": detail})

    rng = np.random.default_rng(20240811)
    worst = 0.0
    drawn = 0
    while drawn < 100:
        a, b = rng.uniform(0.1, 1.5, size=2)
        c = a + b + rng.uniform(0.15, 1.4)
        z = rng.uniform(0.02, 0.95)
        if abs((c - a - b) - round(c - a - b)) < 1e-3:
            continue
        lhs, rhs = gauss_connection(a, b, c, z)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
        drawn += 1
    record("gauss-connection-residual", worst < 1e-9, f"max rel residual {worst:.3e}")

    lim = abs(
        kummer_1f1(0.5, 1.5, 2.0) - gauss_2f1(0.5, 1e6, 1.5, 2.0e-6)
    )
    record("confluent-limit", lim < 1e-5, f"abs deviation {lim:.3e}")

    m_direct = whittaker("M", 0.3, 0.4, 1.2)
    m_def = 1.2 ** 0.9 * math.exp(-0.6) * kummer_1f1(0.6, 1.8, 1.2).real
    record(
        "whittaker-definitional",
        abs(m_direct - m_def) < 1e-10 * abs(m_def),
        f"abs diff {abs(m_direct - m_def):.3e}",
    )

    worst = 0.0
    for kappa in (-1, 1, -2, 2):
        res = sigma_r_action_residual(kappa, 0.5, 1.1, 2.3)
        worst = max(worst, res)
    record("sigma-r-identity", worst < 1e-10, f"max residual {worst:.3e}")

    p = PotentialParams(mu=50.0, v0=0.7, a=1.0, q=1.5)
    qn = QuantumNumbers.for_channel(-1, 1, p)
    worst = 0.0
    for xi in (-2.0, 0.0, 2.0):
        worst = max(worst, _rm_residual(xi, 0.8 * p.mu, qn.lam, qn, p))
    record("rosen-morse-mapping", worst < 1e-10, f"max residual {worst:.3e}")

    worst = 0.0
    for ze2 in (0.1, 0.3, 0.5):
        e0 = coulomb_energies(1, -1, ze2, 1.0, 0)[0]
        worst = max(worst, abs(e0 - math.sqrt(1.0 - ze2 * ze2)))
    record("dirac-coulomb-ground-state", worst < 1e-12, f"max abs deviation {worst:.3e}")

    worst = 0.0
    for r_om in (0.5, 1.0, 2.0):
        ch = CoulombChannel.for_state(1, -1, 0.3, 1.0, 0.9)
        worst = max(worst, coulomb_recurrence_check(r_om / ch.omega_tilde, 0.9, ch, 1.0))
    record("coulomb-recurrence", worst < 1e-8, f"max rel residual {worst:.3e}")

    return checks
