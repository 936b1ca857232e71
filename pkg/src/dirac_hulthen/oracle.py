"""Independent Numerov eigenvalue oracle for the effective radial equation
u'' = W(r; E) u, used to certify the closed-form spectrum and to quantify the
centrifugal approximation.

The solver never touches the hypergeometric closed form: outward boundary
data come from a Frobenius series of the ODE at the inner wall (u ~ x^(lam+1)
with x = r - r0), inward data from the exponential tail u ~ e^(-eps~ (r-r0)/a).
Outward sweeps are contamination-stable for lam > -1/2 (the irregular wall
solution x^(-lam) then decays relative to the regular one); channels closer
to criticality than that are outside the certified regime.
Eigenvalues are located by counting interior nodes of the outward sweep and
bisecting the sign of the stitched matching defect

    D(E) = (1 - T[m+1]) u_in(m+1) u_out(m) + (1 - T[m-1]) u_out(m-1) u_in(m)
           - (2 + 10 T[m]) u_out(m) u_in(m),        T = h^2 W / 12,

which vanishes exactly when the two one-sided solutions fuse into a discrete
eigenvector at the matching index m (chosen at the minimum of W).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import ConfigError
from .potential import PotentialParams
from .spectrum import EnergyState, QuantumNumbers

__all__ = [
    "RadialGrid",
    "OracleResult",
    "NumerovSolution",
    "numerov_integrate",
    "eigen_solve",
    "certify_levels",
    "approximation_error_report",
]

_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid for one oracle solve."""

    r_start: float
    r_end: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 2000:
            raise ConfigError(f"grid needs >= 2000 points, got {self.n_points}")
        if not (self.r_end > self.r_start):
            raise ConfigError("grid needs r_end > r_start")

    @property
    def spacing(self) -> float:
        return (self.r_end - self.r_start) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.r_start, self.r_end, self.n_points)


@dataclass(frozen=True)
class OracleResult:
    """One certified eigenvalue: node count, energy, matching defect."""

    n_r: int
    E: float
    match_defect: float


@dataclass
class NumerovSolution:
    """Solution samples u[i] * exp(log_scale[i]); rescaling keeps the stored
    samples finite while preserving signs (node counting stays valid)."""

    grid: RadialGrid
    u: np.ndarray
    log_scale: np.ndarray
    nodes: int


def numerov_integrate(
    W: Callable[[float, float], float],
    E: float,
    grid: RadialGrid,
    direction: Literal["outward", "inward"],
    start_values: tuple[float, float] | None = None,
) -> NumerovSolution:
    """Sixth-order-stencil Numerov sweep of u'' = W(r; E) u over the grid.

    start_values are the first two samples in sweep order (grid order for
    outward, reversed for inward); they encode the boundary behavior.  The
    default (0, h) is a generic regular start for smooth kernels.
    """
    rs = grid.points()
    h = grid.spacing
    n = grid.n_points
    w = np.array([W(float(r), E) for r in rs], dtype=float)
    t = (h * h / 12.0) * w
    if direction == "inward":
        order = range(n - 2, 0, -1)
        i_first, i_second = n - 1, n - 2
        step = -1
    elif direction == "outward":
        order = range(1, n - 1)
        i_first, i_second = 0, 1
        step = 1
    else:
        raise ConfigError(f"unknown direction {direction!r}")
    u = np.zeros(n)
    log_scale = np.zeros(n)
    if start_values is None:
        start_values = (0.0, h)
    u[i_first], u[i_second] = start_values
    scale_log = 0.0
    nodes = 0
    tl = t.tolist()
    ul = u.tolist()
    sl = log_scale.tolist()
    prev, curr = ul[i_first], ul[i_second]
    for i in order:
        nxt = ((2.0 + 10.0 * tl[i]) * curr - (1.0 - tl[i - step]) * prev) / (
            1.0 - tl[i + step]
        )
        if (nxt < 0.0 < curr) or (curr < 0.0 < nxt):
            nodes += 1
        prev, curr = curr, nxt
        if abs(curr) > _RESCALE_AT:
            prev *= _RESCALE_BY
            curr *= _RESCALE_BY
            scale_log += math.log(_RESCALE_AT)
        ul[i + step] = curr
        sl[i + step] = scale_log
    return NumerovSolution(
        grid=grid, u=np.array(ul), log_scale=np.array(sl), nodes=nodes
    )


# ----------------------------------------------------------------------
# effective-kernel builders
# ----------------------------------------------------------------------

def _kernel(
    qn: QuantumNumbers, p: PotentialParams, centrifugal: str
) -> Callable[[np.ndarray, float], np.ndarray]:
    """Vectorized W(r; E) for the chosen centrifugal treatment.

    'approximate': the exponential approximant with the kappa(kappa-beta~)
    shift inside eps^2 (the equation the closed form solves exactly).
    'exact': the true lam(lam+1)/r^2 with no 1/(12 a^2) shift anywhere.
    """
    ll1 = qn.lam * (qn.lam + 1.0)
    if centrifugal == "approximate":
        shift = qn.kappa_kmb / (12.0 * p.a * p.a)

        def w_approx(rs: np.ndarray, E: float) -> np.ndarray:
            ex = np.exp(rs / p.a)
            d = ex - p.q
            return (
                ll1 * p.q * ex / (p.a * p.a * d * d)
                + p.v0 * (p.v0 / p.q - 2.0 * E) / d
                + (p.mu * p.mu - E * E + shift)
            )

        return w_approx
    if centrifugal == "exact":

        def w_exact(rs: np.ndarray, E: float) -> np.ndarray:
            ex = np.exp(rs / p.a)
            d = ex - p.q
            return (
                ll1 / (rs * rs)
                + p.v0 * (p.v0 / p.q - 2.0 * E) / d
                + (p.mu * p.mu - E * E)
            )

        return w_exact
    raise ConfigError(f"centrifugal must be 'approximate' or 'exact', got {centrifugal!r}")


_BERNOULLI = {0: 1.0, 1: -0.5, 2: 1.0 / 6.0, 4: -1.0 / 30.0, 6: 1.0 / 42.0,
              8: -1.0 / 30.0, 10: 5.0 / 66.0}


def _frobenius_start(
    qn: QuantumNumbers, p: PotentialParams, E: float, centrifugal: str, x: float
) -> float:
    """Regular solution u(x) = x^(s) (1 + sum c_k x^k) near the inner wall,
    from the Laurent data of W about x = r - r0 (units of a handled inside).

    For the approximate kernel s = lam + 1 for any q; for the exact kernel
    s = lam + 1 only at q = 1 (singular 1/r^2), else s = 1 (Coulomb-like wall).
    """
    a = p.a
    xa = x / a
    om2 = p.a * p.a * p.v0 * (p.v0 / p.q - 2.0 * E)
    eps2a2 = (p.mu * p.mu - E * E) * a * a + (
        qn.kappa_kmb / 12.0 if centrifugal == "approximate" else 0.0
    )
    ll1 = qn.lam * (qn.lam + 1.0)
    # Taylor data (in xa = x/a) of the regular part of a^2 W:
    #   coulomb-ish piece (om2/q) / (e^s - 1) = om2/q * sum B_n s^(n-1)/n!
    #   centrifugal piece e^s/(e^s-1)^2 = sum B_n (1-n) s^(n-2)/n!  (approximate)
    w = {}
    bq = om2 / p.q
    for jj in range(-1, 9):
        coef = 0.0
        nn = jj + 1
        if nn in _BERNOULLI:
            coef += bq * _BERNOULLI[nn] / math.factorial(nn)
        if centrifugal == "approximate":
            nn = jj + 2
            if nn in _BERNOULLI:
                coef += ll1 * (1 - nn) * _BERNOULLI[nn] / math.factorial(nn)
        else:
            # exact kernel: lam(lam+1)/r^2 about r = r0 + x
            if p.q > 1.0:
                r0a = p.r0 / a
                if jj >= 0:
                    coef += ll1 * (jj + 1) * (-1.0 / r0a) ** jj / (r0a * r0a)
            # q = 1: pure lam(lam+1)/x^2, no regular part
        if jj == 0:
            coef += eps2a2
        w[jj] = coef
    if centrifugal == "exact" and p.q > 1.0:
        s = 1.0
    else:
        s = qn.lam + 1.0
    c = [1.0]
    for k in range(1, 41):
        acc = 0.0
        for mm in range(k):
            jjj = k - 2 - mm
            if jjj in w:
                acc += w[jjj] * c[mm]
        c.append(acc / (k * (k + 2.0 * s - 1.0)))
    total = 0.0
    xk = 1.0
    for ck in c:
        total += ck * xk
        xk *= xa
    return xa ** s * total


# ----------------------------------------------------------------------
# eigenvalue location
# ----------------------------------------------------------------------

def _auto_grid(qn: QuantumNumbers, p: PotentialParams, E_lo: float, E_hi: float) -> RadialGrid:
    """Tail long enough for ~36 e-foldings at the shallow end of the window,
    resolution fine enough for the steep end."""
    mu_eff_sq = p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a)
    eps_hi_sq = max(mu_eff_sq - E_hi * E_hi, 0.0)
    eps_hi = math.sqrt(eps_hi_sq) * p.a
    eps_lo = math.sqrt(max(mu_eff_sq - E_lo * E_lo, 0.0)) * p.a
    tail = max(36.0 / max(eps_hi, 0.30), 25.0)
    n = max(8000, int(400 * tail), int(28 * eps_lo * tail))
    n = min(n, 150_000)
    return RadialGrid(r_start=p.r0 + 1e-4 * p.a, r_end=p.r0 + tail * p.a, n_points=n)


class _Sweeper:
    """Streamlined two-sided Numerov pass for one grid, reused across the
    energy bisection (keeps only the samples the defect needs)."""

    def __init__(self, qn, p, grid: RadialGrid, centrifugal: str, match_offset: int = 0):
        self.qn, self.p = qn, p
        self.grid = grid
        self.rs = grid.points()
        self.h = grid.spacing
        self.kernel = _kernel(qn, p, centrifugal)
        self.centrifugal = centrifugal
        self.match_offset = match_offset
        # index where the Frobenius start hands over to the recurrence
        om2_scale = p.a * p.a * p.v0 * abs(p.v0 / p.q - 2.0 * 0.9 * p.mu)
        x0 = min(0.3 * p.a, 3.0 * p.a * p.q / max(om2_scale, 1.0))
        x0 = max(x0, self.rs[0] - p.r0)
        self.i0 = int(np.searchsorted(self.rs, p.r0 + x0))
        self.i0 = min(self.i0, grid.n_points - 100)

    def defect(self, E: float) -> tuple[float, int]:
        p, qn = self.p, self.qn
        rs, h, n = self.rs, self.h, self.grid.n_points
        w = self.kernel(rs, E)
        t = ((h * h / 12.0) * w).tolist()
        m = int(np.argmin(w)) + self.match_offset
        m = min(max(m, self.i0 + 2), n - 3)
        eps_t = math.sqrt(max(
            (p.mu * p.mu - E * E) * p.a * p.a
            + (qn.kappa_kmb / 12.0 if self.centrifugal == "approximate" else 0.0),
            1e-300,
        ))
        keep = (m - 1, m, m + 1)
        kept_out = {}
        u_prev = _frobenius_start(qn, p, E, self.centrifugal, rs[self.i0] - p.r0)
        u_curr = _frobenius_start(qn, p, E, self.centrifugal, rs[self.i0 + 1] - p.r0)
        if self.i0 in keep:
            kept_out[self.i0] = u_prev
        if self.i0 + 1 in keep:
            kept_out[self.i0 + 1] = u_curr
        nodes = 0
        for i in range(self.i0 + 1, m + 1):
            u_next = ((2.0 + 10.0 * t[i]) * u_curr - (1.0 - t[i - 1]) * u_prev) / (
                1.0 - t[i + 1]
            )
            if (u_next < 0.0 < u_curr) or (u_curr < 0.0 < u_next):
                nodes += 1
            u_prev, u_curr = u_curr, u_next
            if abs(u_curr) > _RESCALE_AT:
                u_prev *= _RESCALE_BY
                u_curr *= _RESCALE_BY
                kept_out = {kk: vv * _RESCALE_BY for kk, vv in kept_out.items()}
            if i + 1 in keep:
                kept_out[i + 1] = u_curr
        kept_in = {}
        u_prev = 1.0
        u_curr = math.exp(eps_t * h / p.a)
        if n - 1 in keep:
            kept_in[n - 1] = u_prev
        if n - 2 in keep:
            kept_in[n - 2] = u_curr
        for i in range(n - 2, m - 1, -1):
            u_next = ((2.0 + 10.0 * t[i]) * u_curr - (1.0 - t[i + 1]) * u_prev) / (
                1.0 - t[i - 1]
            )
            u_prev, u_curr = u_curr, u_next
            if abs(u_curr) > _RESCALE_AT:
                u_prev *= _RESCALE_BY
                u_curr *= _RESCALE_BY
                kept_in = {kk: vv * _RESCALE_BY for kk, vv in kept_in.items()}
            if i - 1 in keep:
                kept_in[i - 1] = u_curr
        # normalize each side by its largest kept sample (positive scales only)
        s_out = max(abs(v) for v in kept_out.values()) or 1.0
        s_in = max(abs(v) for v in kept_in.values()) or 1.0
        o = {kk: vv / s_out for kk, vv in kept_out.items()}
        z = {kk: vv / s_in for kk, vv in kept_in.items()}
        d = (
            (1.0 - t[m + 1]) * z[m + 1] * o[m]
            + (1.0 - t[m - 1]) * o[m - 1] * z[m]
            - (2.0 + 10.0 * t[m]) * o[m] * z[m]
        )
        return d, nodes

    def node_count(self, E: float) -> int:
        """Interior nodes of the full outward sweep (Sturm count of levels below E)."""
        p, qn = self.p, self.qn
        rs, h, n = self.rs, self.h, self.grid.n_points
        w = self.kernel(rs, E)
        t = ((h * h / 12.0) * w).tolist()
        u_prev = _frobenius_start(qn, p, E, self.centrifugal, rs[self.i0] - p.r0)
        u_curr = _frobenius_start(qn, p, E, self.centrifugal, rs[self.i0 + 1] - p.r0)
        nodes = 0
        for i in range(self.i0 + 1, n - 1):
            u_next = ((2.0 + 10.0 * t[i]) * u_curr - (1.0 - t[i - 1]) * u_prev) / (
                1.0 - t[i + 1]
            )
            if (u_next < 0.0 < u_curr) or (u_curr < 0.0 < u_next):
                nodes += 1
            u_prev, u_curr = u_curr, u_next
            if abs(u_curr) > _RESCALE_AT:
                u_prev *= _RESCALE_BY
                u_curr *= _RESCALE_BY
        return nodes


def eigen_solve(
    qn: QuantumNumbers,
    p: PotentialParams,
    E_lo: float,
    E_hi: float,
    centrifugal: Literal["approximate", "exact"] = "approximate",
    max_levels: int = 64,
    match_offset: int = 0,
) -> list[OracleResult]:
    """All eigenvalues of u'' = W u in (E_lo, E_hi), to 1e-10 * mu.

    Node counts at the window ends give the census; each level is bracketed by
    node-count bisection and polished by sign bisection of the matching defect.
    match_offset displaces the matching index (for the matching-radius
    independence check).  Returns [] when the window holds no level.
    """
    if not (E_lo < E_hi):
        raise ConfigError("need E_lo < E_hi")
    grid = _auto_grid(qn, p, E_lo, E_hi)
    sweeper = _Sweeper(qn, p, grid, centrifugal, match_offset=match_offset)
    n_lo = sweeper.node_count(E_lo)
    n_hi = sweeper.node_count(E_hi)
    results: list[OracleResult] = []
    for k in range(n_lo, min(n_hi, n_lo + max_levels)):
        lo, hi = E_lo, E_hi
        # node-count bisection: lo has <= k nodes, hi has >= k+1
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            if sweeper.node_count(mid) <= k:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-5 * p.mu:
                break
        d_lo, _ = sweeper.defect(lo)
        d_hi, _ = sweeper.defect(hi)
        if d_lo * d_hi < 0.0:
            for _ in range(90):
                mid = 0.5 * (lo + hi)
                d_mid, _ = sweeper.defect(mid)
                if d_lo * d_mid <= 0.0:
                    hi, d_hi = mid, d_mid
                else:
                    lo, d_lo = mid, d_mid
                # converge the energy to 1e-10*mu and polish the residual to
                # its rounding floor (the defect scale varies per channel)
                if hi - lo < 1e-10 * p.mu and abs(d_mid) < 1e-9:
                    break
                if hi - lo <= 8.0 * math.ulp(abs(mid)):
                    break
        else:
            # defect sign lost to numerics: fall back to pure node bisection
            for _ in range(24):
                mid = 0.5 * (lo + hi)
                if sweeper.node_count(mid) <= k:
                    lo = mid
                else:
                    hi = mid
        e_star = 0.5 * (lo + hi)
        d_star, _ = sweeper.defect(e_star)
        results.append(OracleResult(n_r=k, E=e_star, match_defect=abs(d_star)))
    return results


def certify_levels(
    qn: QuantumNumbers,
    p: PotentialParams,
    levels: list[EnergyState],
    centrifugal: Literal["approximate", "exact"] = "approximate",
    window: float | None = None,
) -> list[OracleResult]:
    """Oracle eigenvalue for each closed-form level, solved in a narrow window
    around it (asymmetric near the continuum edge)."""
    mu_eff = math.sqrt(p.mu * p.mu + qn.kappa_kmb / (12.0 * p.a * p.a))
    w0 = window if window is not None else 2e-4 * p.mu
    out: list[OracleResult] = []
    for lv in levels:
        lo = lv.E - w0
        hi = min(lv.E + w0, lv.E + 0.5 * (mu_eff - lv.E))
        found = eigen_solve(qn, p, lo, hi, centrifugal=centrifugal, max_levels=2)
        if len(found) != 1:
            raise ConfigError(
                f"oracle found {len(found)} levels near n_r={lv.n_r}, E={lv.E}"
            )
        out.append(OracleResult(n_r=lv.n_r, E=found[0].E, match_defect=found[0].match_defect))
    return out


def approximation_error_report(
    qn: QuantumNumbers,
    p: PotentialParams,
    levels: list[EnergyState],
) -> list[tuple[int, float, float, float]]:
    """(n_r, E_closed, E_exact_centrifugal, Delta E) per level: the physical
    cost of the exponential centrifugal approximant, with Delta E reported,
    not asserted."""
    rows = []
    ceiling = p.mu * (1.0 - 1e-9)  # exact-kernel continuum starts at mu
    for lv in levels:
        w0 = max(5e-3 * p.mu, 10.0 * abs(qn.kappa_kmb) / (12.0 * p.a * p.a * p.mu))
        lo = lv.E - w0
        hi = min(lv.E + w0, ceiling)
        target = None
        if lo < hi:
            found = eigen_solve(qn, p, lo, hi, centrifugal="exact", max_levels=4)
            if found:
                target = min(found, key=lambda orr: abs(orr.E - lv.E))
        if target is None:
            rows.append((lv.n_r, lv.E, math.nan, math.nan))
        else:
            rows.append((lv.n_r, lv.E, target.E, target.E - lv.E))
    return rows
