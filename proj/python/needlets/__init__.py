"""Flexible-bandwidth spherical needlets.

Thin python surface over the C++ core: scale sequences and smooth windows,
zonal kernels, cubature-based needlet analysis/synthesis, Gaussian field
simulation, and the spectrum goodness-of-fit statistic.
"""

from needlets._core import (
    CubatureGrid,
    NeedletTransform,
    PowerSpectrum,
    ScaleSequence,
    SphereDim,
    WindowFamily,
    bump,
    bump_normalization,
    bump_primitive,
    correlation_envelope,
    covariance_kernel,
    default_theta_grid,
    eigenspace_dimension,
    empirical_needlet_correlation,
    expected_coeff_variance,
    geodesic_distance,
    gegenbauer,
    gof_statistic,
    localization_envelope,
    localization_report,
    moment_diagnostics,
    needlet_correlation,
    needlet_kernel,
    packed_offset,
    packed_size,
    real_harmonic_basis,
    run_gof,
    sample_harmonics,
    select_subsample,
    spherical_harmonic,
    synthesize_field,
    zonal,
)

__all__ = [
    "CubatureGrid",
    "NeedletTransform",
    "PowerSpectrum",
    "ScaleSequence",
    "SphereDim",
    "WindowFamily",
    "bump",
    "bump_normalization",
    "bump_primitive",
    "correlation_envelope",
    "covariance_kernel",
    "default_theta_grid",
    "eigenspace_dimension",
    "empirical_needlet_correlation",
    "expected_coeff_variance",
    "geodesic_distance",
    "gegenbauer",
    "gof_statistic",
    "localization_envelope",
    "localization_report",
    "moment_diagnostics",
    "needlet_correlation",
    "needlet_kernel",
    "packed_offset",
    "packed_size",
    "real_harmonic_basis",
    "run_gof",
    "sample_harmonics",
    "select_subsample",
    "spherical_harmonic",
    "synthesize_field",
    "zonal",
]
