"""High-precision verification of mean-argument sinc-sum identities and the
2D inverse-square-potential scattering observables they control.

The sums involved have the form sum_l (-1)^l g(pi sqrt(l^2+x^2)); everything
in this package evaluates them through the phase excess pi(sqrt(l^2+x^2) - l),
which makes the alternation exact and the error bounds rigorous.
"""

from .exactmath import Rational, bernoulli, double_factorial, zeta_even_pi_coeff
from .expansion import (
    CancellationReport,
    PiSeries,
    SummandCoefficient,
    a3_numeric_consistency,
    a5_check,
    a5_sides,
    a6_factorial_identity,
    a6_sides,
    id2_cancellation,
    sin_sq_half_series,
    summand_series,
    zeta_map,
)
from .reports import VerificationReport, build_report, decimal_str
from .scattering import (
    FORWARD_EXCLUSION,
    CrossSectionResult,
    PartialWaveTerm,
    ScatteringParams,
    amplitude,
    amplitude_with_bound,
    diff_cross_section,
    partial_wave_term,
    phase_shift,
    sigma_closed,
    sigma_partial_waves,
    sigma_quadrature,
)
from .specfun import (
    DEFAULT_PRECISION_BITS,
    PhaseExcess,
    bessel_j_half,
    phase_excess,
    sinc,
    spherical_bessel_cos_coeffs,
    spherical_bessel_j,
    to_mpf,
)
from .sums import (
    ConvergenceError,
    SumConfig,
    SumResult,
    bessel_alt_sum,
    cos_mean_sum,
    id1_derivative_fd,
    id1_rhs,
    id2_rhs,
    reformulated_summand,
    sinc_mean_sum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Rational",
    "bernoulli",
    "double_factorial",
    "zeta_even_pi_coeff",
    "DEFAULT_PRECISION_BITS",
    "PhaseExcess",
    "to_mpf",
    "sinc",
    "spherical_bessel_j",
    "spherical_bessel_cos_coeffs",
    "bessel_j_half",
    "phase_excess",
    "SumConfig",
    "SumResult",
    "ConvergenceError",
    "reformulated_summand",
    "id1_rhs",
    "id2_rhs",
    "cos_mean_sum",
    "sinc_mean_sum",
    "bessel_alt_sum",
    "id1_derivative_fd",
    "PiSeries",
    "SummandCoefficient",
    "CancellationReport",
    "sin_sq_half_series",
    "summand_series",
    "zeta_map",
    "id2_cancellation",
    "a5_sides",
    "a5_check",
    "a6_sides",
    "a6_factorial_identity",
    "a3_numeric_consistency",
    "ScatteringParams",
    "PartialWaveTerm",
    "CrossSectionResult",
    "FORWARD_EXCLUSION",
    "phase_shift",
    "partial_wave_term",
    "amplitude",
    "amplitude_with_bound",
    "diff_cross_section",
    "sigma_partial_waves",
    "sigma_closed",
    "sigma_quadrature",
    "VerificationReport",
    "build_report",
    "decimal_str",
]
