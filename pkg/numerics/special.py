import math

import numpy as np
from scipy import special

from numerics.exceptions import DomainError
from numerics.logspace import LOG_ZERO, LogNonNeg

LOG_PI = math.log(math.pi)

# below this point erf is evaluated directly, above it through erfc
_ERF_SWITCH = 0.5


def check_dimension(n: int, minimum: int) -> None:
    if int(n) != n or n < minimum:
        raise DomainError(f"dimension must be ≥ {minimum}, got {n}")


def log_gamma_fn(x: float) -> float:
    """Natural log of Γ(x) for x > 0."""
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"log_gamma_fn needs a finite positive argument, got {x}")
    return float(special.gammaln(x))


def log_ball_volumes(n: int) -> np.ndarray:
    """ln κ_j for j = 0…n, where κ_j is the volume of the unit j-ball."""
    check_dimension(n, 0)
    j = np.arange(n + 1, dtype=float)
    return 0.5 * j * LOG_PI - special.gammaln(0.5 * j + 1.0)


def log_ball_volume(n: int) -> LogNonNeg:
    """ln κ_n = ln(π^{n/2} / Γ(n/2 + 1)); κ_0 = 1."""
    check_dimension(n, 0)
    return LogNonNeg(0.5 * n * LOG_PI - log_gamma_fn(0.5 * n + 1.0))


def log_sphere_area(n: int) -> LogNonNeg:
    """ln ω_n = ln(n κ_n), the surface measure of the unit sphere in R^n."""
    check_dimension(n, 1)
    return LogNonNeg(math.log(n) + log_ball_volume(n).log_value)


def gauss_like_cdf(x: float) -> float:
    """Φ₀(x) = (2/√π) ∫₀ˣ e^{−y²} dy, i.e. erf on the nonnegative axis."""
    if not x >= 0:
        raise DomainError(f"gauss_like_cdf is defined for x ≥ 0, got {x}")
    return float(special.erf(x))


def log_gauss_like_cdf(x):
    """
    ln Φ₀(x), vectorized.

    Small arguments go through erf (no cancellation since erf(x) ~ 2x/√π),
    large ones through log1p(−erfc(x)) so that values near 1 keep their
    digits. ln Φ₀(0) = −inf.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("log_gauss_like_cdf is defined for x ≥ 0")
    with np.errstate(divide="ignore"):
        small = np.log(special.erf(np.minimum(x, _ERF_SWITCH)))
        large = np.log1p(-special.erfc(np.maximum(x, _ERF_SWITCH)))
    result = np.where(x < _ERF_SWITCH, small, large)
    return float(result) if result.ndim == 0 else result


def log_binomial(a: int, b: int) -> LogNonNeg:
    """ln C(a, b) for 0 ≤ b ≤ a."""
    if a < 0 or b < 0:
        raise DomainError(f"binomial arguments must be nonnegative, got ({a}, {b})")
    if b > a:
        raise DomainError(f"binomial needs b ≤ a, got ({a}, {b})")
    if b == 0 or b == a:
        return LogNonNeg.one()
    value = special.gammaln(a + 1.0) - special.gammaln(b + 1.0) - special.gammaln(a - b + 1.0)
    return LogNonNeg(float(value))


def log_binomials(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized ln C(a, b); entries with b > a map to −inf."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    value = special.gammaln(a + 1.0) - special.gammaln(b + 1.0) - special.gammaln(a - b + 1.0)
    return np.where(b <= a, value, LOG_ZERO)
