"""
Outer angles and intrinsic volumes of the regular cross-polytope.

The outer angle at a j-face of Xⁿ is

    γ(n, j) = √((j+1)/π) ∫₀^∞ e^{−(j+1)x²} Φ₀(x)^{n−j−1} dx,

and the intrinsic volumes follow from

    V_j(Xⁿ) = 2^{j+1} C(n, j+1) √(j+1)/j! · γ(n, j),   0 ≤ j ≤ n−1.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from crosspoly.cache import GammaCache
from crosspoly.geometry import log_volume_xn
from numerics import (
    DomainError,
    LogNonNeg,
    QuadratureSpec,
    log_binomial,
    log_gamma_fn,
    log_gauss_like_cdf,
    log_integral_exp,
)
from numerics.special import LOG_PI, check_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class IntrinsicVolumes:
    n: int
    log_v: np.ndarray
    log_gamma_angles: np.ndarray

    def __post_init__(self):
        if self.log_v.shape != (self.n + 1,) or self.log_gamma_angles.shape != (self.n,):
            raise DomainError(f"intrinsic volume table has the wrong shape for n={self.n}")
        self.log_v.setflags(write=False)
        self.log_gamma_angles.setflags(write=False)

    def v(self, j: int) -> LogNonNeg:
        return LogNonNeg(float(self.log_v[j]))

    def gamma(self, j: int) -> LogNonNeg:
        return LogNonNeg(float(self.log_gamma_angles[j]))


def _outer_angle_log_integrand(n: int, j: int):
    a = j + 1
    m = n - j - 1
    if m == 0:
        # Φ₀⁰ = 1; avoids 0 · ln Φ₀(0) = 0 · (−inf)
        return lambda x: -a * np.square(x)
    return lambda x: -a * np.square(x) + m * log_gauss_like_cdf(x)


def log_outer_angle(
    n: int, j: int, spec: QuadratureSpec | None = None, cache: GammaCache | None = None
) -> LogNonNeg:
    """ln γ(n, j) by log-space quadrature, served from ``cache`` when possible."""
    check_dimension(n, 1)
    if not 0 <= j <= n - 1:
        raise DomainError(f"face dimension must lie in [0, {n - 1}], got {j}")
    spec = spec or QuadratureSpec()
    if cache is not None:
        hit = cache.get(n, j, spec.fingerprint)
        if hit is not None:
            return LogNonNeg(hit)

    integral = log_integral_exp(_outer_angle_log_integrand(n, j), 0.0, spec)
    value = 0.5 * (math.log(j + 1) - LOG_PI) + integral.log_value
    if cache is not None:
        cache.put(n, j, value, spec.fingerprint)
    return LogNonNeg(value)


def log_intrinsic_volume_from_angle(n: int, j: int, log_gamma: float) -> float:
    return (
        (j + 1) * math.log(2.0)
        + log_binomial(n, j + 1).log_value
        + 0.5 * math.log(j + 1)
        - log_gamma_fn(j + 1.0)
        + log_gamma
    )


def intrinsic_volumes(
    n: int, spec: QuadratureSpec | None = None, cache: GammaCache | None = None
) -> IntrinsicVolumes:
    """V₀ … V_n of Xⁿ in log form, with the outer angles they were built from."""
    check_dimension(n, 1)
    spec = spec or QuadratureSpec()
    log_gammas = np.array(
        [log_outer_angle(n, j, spec, cache).log_value for j in range(n)], dtype=float
    )
    log_v = np.empty(n + 1, dtype=float)
    for j in range(1, n):
        log_v[j] = log_intrinsic_volume_from_angle(n, j, log_gammas[j])
    log_v[0] = 0.0
    log_v[n] = log_volume_xn(n).log_value

    # the vertex angles sum to one, so the formula must reproduce V₀ = 1
    drift = log_intrinsic_volume_from_angle(n, 0, log_gammas[0])
    if abs(drift) > 1e-9:
        logger.warning("V_0 of X^%d from outer angles is off by %.3e in log", n, drift)
    return IntrinsicVolumes(n=n, log_v=log_v, log_gamma_angles=log_gammas)


def bh_gamma_asymptotic(n: int, j: int) -> float:
    """
    Large-n approximant ½ · (j+1)!/√(j+1) · (π ln n)^{j/2} / n^{j+1} of γ(n, j).

    Only a diagnostic; the relative error decays slowly in n.
    """
    if n < 2:
        raise DomainError(f"dimension must be ≥ 2, got {n}")
    if j < 0:
        raise DomainError(f"face dimension must be nonnegative, got {j}")
    log_value = (
        -math.log(2.0)
        + log_gamma_fn(j + 2.0)
        - 0.5 * math.log(j + 1)
        + 0.5 * j * math.log(math.pi * math.log(n))
        - (j + 1) * math.log(n)
    )
    return math.exp(log_value)
