"""Special functions: Arai deformed hyperbolics, complex log-gamma, Gauss 2F1,
Kummer 1F1, Whittaker M/W and spherical harmonics.

Everything here is a pure function of its arguments.  The hypergeometric
evaluation strategy is tuned to the arguments the radial Green's functions
produce: real z with q*exp(-r/a) in (0,1), so a direct series for |z| <= 0.5
and the two-term Gauss connection to argument 1-z for 0.5 < |z| < 1 keep the
convergence geometric everywhere we need it.
"""

from __future__ import annotations

import cmath
import math

from .errors import (
    DegenerateParameterError,
    GammaPoleError,
    NonConvergenceError,
)

__all__ = [
    "cosh_q",
    "sinh_q",
    "tanh_q",
    "deformed_hyperbolic",
    "ln_gamma",
    "gamma_ratio",
    "gauss_2f1",
    "gauss_2f1_derivative",
    "gauss_connection",
    "kummer_1f1",
    "whittaker",
    "spherical_harmonic",
]

SERIES_CAP = 10_000
SERIES_RTOL = 1e-16
# switch from the two-M combination to the Tricomi-U route; beyond this the
# combination cancels to below double precision (each M ~ e^{z/2} against a
# result ~ e^{-z/2})
_W_COMBINATION_ZMAX = 18.0


# ----------------------------------------------------------------------
# deformed hyperbolic functions
# ----------------------------------------------------------------------

def _check_q(q: float) -> None:
    if not (q >= 1.0):
        raise ValueError(f"deformation parameter must satisfy q >= 1, got {q}")


def cosh_q(x: float, q: float) -> float:
    """cosh_q(x) = (e^x + q e^-x)/2."""
    _check_q(q)
    return 0.5 * (math.exp(x) + q * math.exp(-x))


def sinh_q(x: float, q: float) -> float:
    """sinh_q(x) = (e^x - q e^-x)/2."""
    _check_q(q)
    return 0.5 * (math.exp(x) - q * math.exp(-x))


def tanh_q(x: float, q: float) -> float:
    """sinh_q(x)/cosh_q(x), evaluated without overflow for large |x|."""
    _check_q(q)
    if x >= 0.0:
        e = q * math.exp(-2.0 * x)
        return (1.0 - e) / (1.0 + e)
    e = math.exp(2.0 * x)
    return (e - q) / (e + q)


def tanh_q_halves(x: float, q: float) -> tuple[float, float]:
    """Return ((1 - tanh_q x)/2, (1 + tanh_q x)/2) in a cancellation-free form.

    These are the natural hypergeometric arguments of the mapped radial
    problem; both lie in (0, 1) for every real x when q >= 1.
    """
    _check_q(q)
    if x >= 0.0:
        e = q * math.exp(-2.0 * x)
        return e / (1.0 + e), 1.0 / (1.0 + e)
    e = math.exp(2.0 * x)
    return q / (e + q), e / (e + q)


def deformed_hyperbolic(kind: str, x: float, q: float) -> float:
    """Dispatch on kind in {'cosh_q', 'sinh_q', 'tanh_q'}."""
    try:
        fn = {"cosh_q": cosh_q, "sinh_q": sinh_q, "tanh_q": tanh_q}[kind]
    except KeyError:
        raise ValueError(f"unknown deformed hyperbolic kind: {kind!r}") from None
    return fn(x, q)


# ----------------------------------------------------------------------
# log-gamma
# ----------------------------------------------------------------------

# Lanczos g=7, n=9 coefficients; ~1e-14 relative over the right half plane.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LN_SQRT_2PI = 0.91893853320467274178


def _is_nonpositive_integer(z: complex, tol: float = 1e-12) -> bool:
    if abs(z.imag) > tol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def ln_gamma(z: complex) -> complex:
    """Principal-branch log Gamma via a fixed Lanczos fit plus reflection.

    Raises GammaPoleError at non-positive integers.  For Re z <= 0 the
    reflection formula can shift the imaginary part by multiples of 2*pi;
    exp(ln_gamma(z)) is always Gamma(z).
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise GammaPoleError(f"log-gamma pole at z = {z}")
    if z.real < 0.5:
        s = cmath.sin(cmath.pi * z)
        if s == 0:
            raise GammaPoleError(f"log-gamma pole at z = {z}")
        return cmath.log(cmath.pi) - cmath.log(s) - ln_gamma(1.0 - z)
    zz = z - 1.0
    x = complex(_LANCZOS[0])
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return _LN_SQRT_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(x)


def gamma_ratio(numerators, denominators) -> complex:
    """prod Gamma(n_i) / prod Gamma(d_j) with the exponential taken once.

    Keeps huge intermediate Gamma values in log space.  A pole in a
    denominator makes the ratio zero; a pole in a numerator raises.
    """
    total = 0.0 + 0.0j
    for d in denominators:
        if _is_nonpositive_integer(complex(d)):
            return 0.0 + 0.0j
        total -= ln_gamma(d)
    for n in numerators:
        total += ln_gamma(n)
    return cmath.exp(total)


# ----------------------------------------------------------------------
# hypergeometric series
# ----------------------------------------------------------------------

def _polynomial_degree(a: complex, b: complex) -> int | None:
    """Degree of the terminating 2F1 series if a or b is a non-positive integer."""
    degs = []
    for p in (a, b):
        if _is_nonpositive_integer(complex(p)):
            degs.append(int(round(-complex(p).real)))
    return min(degs) if degs else None


def _hyp_series(num_params, den_params, z: complex, nmax: int | None = None) -> complex:
    """Generalized truncated hypergeometric sum with the shared stopping rule:
    three consecutive terms below SERIES_RTOL * |partial sum|, capped at
    SERIES_CAP terms."""
    term = 1.0 + 0.0j
    total = 1.0 + 0.0j
    small = 0
    cap = SERIES_CAP if nmax is None else min(nmax, SERIES_CAP)
    for n in range(cap):
        ratio = z / (n + 1.0)
        for p in num_params:
            ratio *= p + n
        for p in den_params:
            ratio /= p + n
        term *= ratio
        total += term
        if nmax is not None and n + 1 >= nmax:
            return total
        if abs(term) < SERIES_RTOL * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise NonConvergenceError(
        "hypergeometric series did not converge",
        terms=cap,
        last_ratio=abs(term) / max(abs(total), 1e-300),
    )


def _check_c(c: complex) -> None:
    if _is_nonpositive_integer(complex(c)):
        raise GammaPoleError(f"hypergeometric parameter c = {c} is a non-positive integer")


def gauss_2f1(a: complex, b: complex, c: complex, z: complex) -> complex:
    """Gauss hypergeometric 2F1(a, b, c; z).

    Direct series for |z| <= 0.5 (or any z when the series terminates);
    for 0.5 < |z| < 1 with |1-z| < 1 the two-term connection formula to
    argument 1-z; at z = 1 the Gauss summation when Re(c-a-b) > 0.
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    _check_c(c)
    deg = _polynomial_degree(a, b)
    if deg is not None:
        return _hyp_series((a, b), (c,), z, nmax=deg + 1)
    if z == 0:
        return 1.0 + 0.0j
    if abs(z) <= 0.5:
        return _hyp_series((a, b), (c,), z)
    if z == 1.0:
        if (c - a - b).real <= 0:
            raise ValueError("2F1 at z=1 requires Re(c-a-b) > 0")
        return gamma_ratio((c, c - a - b), (c - a, c - b))
    if abs(z) < 1.0:
        if abs(1.0 - z) < 1.0:
            lhs_unused, rhs = _connection_sides(a, b, c, z, lhs=False)
            return rhs
        # connection unavailable (e.g. z near -1): the direct series still
        # converges inside the unit disk, just more slowly
        return _hyp_series((a, b), (c,), z)
    raise ValueError(f"2F1 argument z = {z} outside the supported domain")


def gauss_2f1_derivative(a: complex, b: complex, c: complex, z: complex) -> complex:
    """d/dz 2F1(a,b,c;z) = (a b / c) * 2F1(a+1, b+1, c+1; z)."""
    a, b, c = complex(a), complex(b), complex(c)
    _check_c(c)
    _check_c(c + 1)
    return (a * b / c) * gauss_2f1(a + 1, b + 1, c + 1, z)


def _connection_sides(a, b, c, z, lhs: bool = True) -> tuple[complex | None, complex]:
    """Both sides of the connection formula linking argument z to 1-z.

    rhs = G1 * 2F1(a,b,a+b-c+1;1-z) + G2 * (1-z)^(c-a-b) * 2F1(c-a,c-b,c-a-b+1;1-z)
    where G1, G2 are the usual gamma-function coefficients.  Degenerate when
    c-a-b is an integer (the logarithmic case, deliberately unsupported).
    """
    s = c - a - b
    if abs(s.imag) < 1e-12 and abs(s.real - round(s.real)) < 1e-8:
        raise DegenerateParameterError(
            f"connection formula degenerate: c-a-b = {s} is (nearly) an integer"
        )
    one_m_z = 1.0 - z
    coeff1 = gamma_ratio((c, s), (c - a, c - b))
    coeff2 = gamma_ratio((c, -s), (a, b))
    rhs = coeff1 * _hyp_series((a, b), (1.0 - s,), one_m_z)
    rhs += coeff2 * cmath.exp(s * cmath.log(one_m_z)) * _hyp_series(
        (c - a, c - b), (1.0 + s,), one_m_z
    )
    left = _hyp_series((a, b), (c,), z) if lhs else None
    return left, rhs


def gauss_connection(a: complex, b: complex, c: complex, z: complex) -> tuple[complex, complex]:
    """Return (direct series value, two-term connection value) for residual tests."""
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    _check_c(c)
    if z == 0:
        return 1.0 + 0.0j, 1.0 + 0.0j
    lhs, rhs = _connection_sides(a, b, c, z, lhs=True)
    return lhs, rhs


def kummer_1f1(a: complex, c: complex, z: complex) -> complex:
    """Confluent hypergeometric 1F1(a, c; z) by direct series."""
    a, c, z = complex(a), complex(c), complex(z)
    _check_c(c)
    if _is_nonpositive_integer(a):
        return _hyp_series((a,), (c,), z, nmax=int(round(-a.real)) + 1)
    return _hyp_series((a,), (c,), z)


# ----------------------------------------------------------------------
# Whittaker functions
# ----------------------------------------------------------------------

def _whittaker_m(kw: float, mw: float, z: float) -> float:
    b2 = 2.0 * mw + 1.0
    if _is_nonpositive_integer(complex(b2)):
        raise DegenerateParameterError(f"Whittaker M degenerate: 2*mu+1 = {b2}")
    val = z ** (mw + 0.5) * math.exp(-0.5 * z) * kummer_1f1(mw - kw + 0.5, b2, z)
    return val.real


def _whittaker_w_combination(kw: float, mw: float, z: float) -> float:
    g1 = gamma_ratio((-2.0 * mw,), (0.5 - mw - kw,))
    g2 = gamma_ratio((2.0 * mw,), (0.5 + mw - kw,))
    val = g1 * _whittaker_m(kw, mw, z) + g2 * _whittaker_m(kw, -mw, z)
    return val.real


def _whittaker_w_tricomi(kw: float, mw: float, z: float) -> float:
    # W_{k,m}(z) = e^{-z/2} z^{m+1/2} U(m-k+1/2, 2m+1, z); only used for large
    # z where the two-M combination cancels below double precision.
    from scipy.special import hyperu

    u = float(hyperu(mw - kw + 0.5, 2.0 * mw + 1.0, z))
    if not math.isfinite(u):
        raise NonConvergenceError("Tricomi-U evaluation failed", terms=0, last_ratio=math.inf)
    return math.exp(-0.5 * z) * z ** (mw + 0.5) * u


def whittaker(kind: str, kw: float, mw: float, z: float) -> float:
    """Whittaker M or W function of real parameters at z > 0.

    M is z^(mu+1/2) e^(-z/2) 1F1(mu-kw+1/2, 2mu+1; z).  W is the standard
    two-M combination with gamma coefficients, which requires 2*mu to be a
    non-integer; for z above ~18 that combination cancels catastrophically
    in doubles, so the Tricomi-U representation takes over (both routes are
    cross-checked against each other in the test-suite overlap window).
    """
    if z <= 0.0:
        raise ValueError(f"Whittaker argument must be positive, got z = {z}")
    if kind == "M":
        return _whittaker_m(kw, mw, z)
    if kind != "W":
        raise ValueError(f"unknown Whittaker kind: {kind!r}")
    two_mu = 2.0 * mw
    if abs(two_mu - round(two_mu)) < 1e-12:
        raise DegenerateParameterError(
            f"Whittaker W combination degenerate: 2*mu = {two_mu} is an integer"
        )
    if z <= _W_COMBINATION_ZMAX:
        return _whittaker_w_combination(kw, mw, z)
    return _whittaker_w_tricomi(kw, mw, z)


# ----------------------------------------------------------------------
# spherical harmonics
# ----------------------------------------------------------------------

def _assoc_legendre(l: int, m: int, x: float) -> float:
    """Associated Legendre P_l^m(x) for m >= 0, Condon-Shortley phase included."""
    pmm = 1.0
    if m > 0:
        somx2 = math.sqrt(max((1.0 - x) * (1.0 + x), 0.0))
        fact = 1.0
        for _ in range(m):
            pmm *= -fact * somx2
            fact += 2.0
    if l == m:
        return pmm
    pmmp1 = x * (2.0 * m + 1.0) * pmm
    if l == m + 1:
        return pmmp1
    pll = 0.0
    for ll in range(m + 2, l + 1):
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m)
        pmm, pmmp1 = pmmp1, pll
    return pll


def spherical_harmonic(l: int, m: int, theta: float, phi: float) -> complex:
    """Orthonormal Y_l^m(theta, phi) with the Condon-Shortley phase."""
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical-harmonic orders (l, m) = ({l}, {m})")
    ma = abs(m)
    norm = math.sqrt(
        (2.0 * l + 1.0) / (4.0 * math.pi) * math.exp(
            math.lgamma(l - ma + 1.0) - math.lgamma(l + ma + 1.0)
        )
    )
    val = norm * _assoc_legendre(l, ma, math.cos(theta)) * cmath.exp(1j * ma * phi)
    if m < 0:
        val = (-1.0) ** ma * val.conjugate()
    return val
