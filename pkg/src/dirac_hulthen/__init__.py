"""Relativistic spin-1/2 bound states and Green's functions for the
q-deformed Hulthen potential: closed-form spectra, radial and spinor Green's
functions, an independent Numerov eigenvalue oracle, a FastAPI service and a
thin CLI client.
"""

from .errors import (
    AtPoleError,
    ConfigError,
    DegenerateParameterError,
    DiracHulthenError,
    GammaPoleError,
    NonConvergenceError,
    PhysicsDomainError,
    RadialDomainError,
    SupercriticalCouplingError,
    UnboundRegimeError,
)
from .potential import (
    PotentialParams,
    RosenMorseParams,
    centrifugal_approx,
    effective_radial_potential,
    hulthen_potential,
    r_of_xi,
    regulating_function,
    rosen_morse_identity_residual,
    rosen_morse_params,
    xi_of_r,
)
from .spectrum import (
    EnergyState,
    QuantumNumbers,
    bound_energies,
    coulomb_energies,
    epsilon_tilde,
    gamma_eigenvalue,
    lambda_of_gamma,
    omega_sq,
    quantization_residual,
    standard_hulthen_energies,
)
from .greens import (
    CoulombChannel,
    GreensEval,
    coulomb_green_radial,
    coulomb_recurrence_check,
    pole_scan,
    radial_green_second_order,
    rosen_morse_green,
    spinor_green_assembly,
    u_left,
    u_right,
)
from .angular import SpinorAngular, bilinear, spinor_harmonic, sigma_r_action_residual
from .oracle import (
    OracleResult,
    RadialGrid,
    approximation_error_report,
    certify_levels,
    eigen_solve,
    numerov_integrate,
)

__version__ = "0.1.0"

__all__ = [
    "AtPoleError",
    "ConfigError",
    "CoulombChannel",
    "DegenerateParameterError",
    "DiracHulthenError",
    "EnergyState",
    "GammaPoleError",
    "GreensEval",
    "NonConvergenceError",
    "OracleResult",
    "PhysicsDomainError",
    "PotentialParams",
    "QuantumNumbers",
    "RadialDomainError",
    "RadialGrid",
    "RosenMorseParams",
    "SpinorAngular",
    "SupercriticalCouplingError",
    "UnboundRegimeError",
    "approximation_error_report",
    "bilinear",
    "bound_energies",
    "centrifugal_approx",
    "certify_levels",
    "coulomb_energies",
    "coulomb_green_radial",
    "coulomb_recurrence_check",
    "effective_radial_potential",
    "eigen_solve",
    "epsilon_tilde",
    "gamma_eigenvalue",
    "hulthen_potential",
    "lambda_of_gamma",
    "numerov_integrate",
    "omega_sq",
    "pole_scan",
    "quantization_residual",
    "r_of_xi",
    "radial_green_second_order",
    "regulating_function",
    "rosen_morse_green",
    "rosen_morse_identity_residual",
    "rosen_morse_params",
    "spinor_green_assembly",
    "spinor_harmonic",
    "sigma_r_action_residual",
    "standard_hulthen_energies",
    "u_left",
    "u_right",
    "xi_of_r",
]
