from numerics.exceptions import (
    DomainError,
    GaugeValidityError,
    InfeasibleGaugeError,
    NumericalError,
    QuadratureError,
)
from numerics.jacobi import jacobi_eval, jacobi_largest_root, jacobi_largest_roots
from numerics.logspace import LOG_ONE, LOG_ZERO, LogNonNeg, Sign, signed_log_difference
from numerics.quadrature import QuadratureSpec, log_integral_exp
from numerics.special import (
    gauss_like_cdf,
    log_ball_volume,
    log_ball_volumes,
    log_binomial,
    log_binomials,
    log_gamma_fn,
    log_gauss_like_cdf,
    log_sphere_area,
)
