"""Exception hierarchy shared by the whole package.

Two families: configuration/usage problems (bad quantum numbers, bad grids)
and physics-domain failures (supercritical coupling, evaluation at a pole,
energies outside the bound window).  The service layer maps the former to
HTTP 400/422 and the latter to 409; the CLI maps them to exit codes 1 and 2.
"""


class DiracHulthenError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(DiracHulthenError):
    """Invalid inputs: bad quantum numbers, grids, or argument combinations."""


class PhysicsDomainError(DiracHulthenError):
    """Physically meaningless request (supercritical, at a pole, unbound...)."""


class SupercriticalCouplingError(PhysicsDomainError):
    """(a*V0/q)^2 >= kappa^2: the Biedenharn eigenvalue would be complex."""


class UnboundRegimeError(PhysicsDomainError):
    """Energy outside the bound window (negative radicand for epsilon-tilde)."""


class RadialDomainError(PhysicsDomainError):
    """Radial coordinate at or below the singular surface r0 = a*ln(q)."""


class AtPoleError(PhysicsDomainError):
    """Green's-function evaluation requested within 1e-8 of a bound-state pole."""

    def __init__(self, message: str, nearest_pole: float | None = None):
        super().__init__(message)
        self.nearest_pole = nearest_pole


class GammaPoleError(PhysicsDomainError):
    """log-gamma evaluated at a non-positive integer."""


class DegenerateParameterError(PhysicsDomainError):
    """Special-function parameter combination hits a gamma pole (e.g. integer
    parameter differences where the two-term connection/Whittaker combinations
    degenerate into the logarithmic case, which we deliberately do not cover)."""


class NonConvergenceError(DiracHulthenError):
    """A truncated series failed to converge within its term cap."""

    def __init__(self, message: str, terms: int, last_ratio: float):
        super().__init__(f"{message} (terms={terms}, last |term/sum|={last_ratio:.3e})")
        self.terms = terms
        self.last_ratio = last_ratio
