"""Equilibrium measures, Riemann-Hilbert expansion objects, and diagonal
orthogonal-polynomial recurrence asymptotics for one-cut regular fields."""

from .asymptotics import (
    ExpansionFit,
    ToleranceConfig,
    VerificationReport,
    default_window,
    fit_inverse_powers,
    richardson_limit,
    verify_theorem,
)
from .equilibrium import (
    EndpointLaurentData,
    EquilibriumMeasure,
    RegularityReport,
    compute_h,
    endpoint_laurent,
    equilibrium_density,
    lagrange_constant,
    normalization_residual,
    phi_endpoint_series,
    phi_real,
    reflected_measure,
    solve_endpoints,
    solve_equilibrium,
    tilde_phi_real,
    verify_one_cut_regular,
)
from .errors import (
    CancellationError,
    ConvergenceError,
    DomainError,
    IllConditionedError,
    NotOneCutError,
    OneCutError,
    PrecisionError,
    QuadratureError,
    SeriesError,
)
from .potential import (
    Potential,
    jacobi_potential,
    parse_potential,
    polynomial_potential,
)
from .precision import PrecisionConfig, default_precision_bits, working_precision
from .recurrence import (
    RecurrenceTable,
    compute_recurrence,
    hankel_oracle,
    jacobi_recurrence_closed,
)
from .rh_expansion import (
    Delta1Laurent,
    PauliCoefficients,
    R1Moments,
    beta1_closed,
    beta1_via_R,
    delta1_laurent,
    delta_k,
    laurent_coefficients_by_sampling,
    outer_expansion_moments,
    outer_parametrix,
    r1_moments,
)

__version__ = "0.1.0"

__all__ = [
    "CancellationError",
    "ConvergenceError",
    "Delta1Laurent",
    "DomainError",
    "EndpointLaurentData",
    "EquilibriumMeasure",
    "ExpansionFit",
    "IllConditionedError",
    "NotOneCutError",
    "OneCutError",
    "PauliCoefficients",
    "Potential",
    "PrecisionConfig",
    "PrecisionError",
    "QuadratureError",
    "R1Moments",
    "RecurrenceTable",
    "RegularityReport",
    "SeriesError",
    "ToleranceConfig",
    "VerificationReport",
    "beta1_closed",
    "beta1_via_R",
    "compute_h",
    "compute_recurrence",
    "default_precision_bits",
    "default_window",
    "delta1_laurent",
    "delta_k",
    "endpoint_laurent",
    "equilibrium_density",
    "fit_inverse_powers",
    "hankel_oracle",
    "jacobi_potential",
    "jacobi_recurrence_closed",
    "lagrange_constant",
    "laurent_coefficients_by_sampling",
    "normalization_residual",
    "outer_expansion_moments",
    "outer_parametrix",
    "parse_potential",
    "phi_endpoint_series",
    "phi_real",
    "polynomial_potential",
    "r1_moments",
    "reflected_measure",
    "richardson_limit",
    "solve_endpoints",
    "solve_equilibrium",
    "tilde_phi_real",
    "verify_one_cut_regular",
    "verify_theorem",
    "working_precision",
]
