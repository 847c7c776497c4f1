"""Theta series in continuous dimension and their Poisson summation formula."""

from ._core import (
    DomainError,
    Error,
    IllConditioned,
    InvalidSpec,
    OffsetMismatch,
    ThetaSpec,
    ToleranceNotMet,
    VerificationReport,
    coeff_bound,
    dual,
    eigen_residual,
    ft_closed,
    ft_quadrature,
    ft_sampled,
    gaussian_hermite_coeff,
    hermite_coeff_quadrature,
    hermite_h,
    jacobi_residual,
    laplacian_d,
    theta,
    theta_coeffs,
    verify,
)

__all__ = [
    "DomainError",
    "Error",
    "IllConditioned",
    "InvalidSpec",
    "OffsetMismatch",
    "ThetaSpec",
    "ToleranceNotMet",
    "VerificationReport",
    "coeff_bound",
    "dual",
    "eigen_residual",
    "ft_closed",
    "ft_quadrature",
    "ft_sampled",
    "gaussian_hermite_coeff",
    "hermite_coeff_quadrature",
    "hermite_h",
    "jacobi_residual",
    "laplacian_d",
    "theta",
    "theta_coeffs",
    "verify",
]
