"""
Blichfeldt gauges for the unit ball and their moments

    I_j(f) = ∫_{R^j} f(|x|) dx = ω_j ∫₀^∞ f(r) r^{j−1} dr,   I₀(f) = f(0).

All moments are kept as logarithms in a vector indexed j = 0…n.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from gauges.spherical_codes import kl_M_choice
from numerics import GaugeValidityError, LogNonNeg, log_ball_volumes
from numerics._compat import StrEnum
from numerics.jacobi import DEFAULT_ROOT_TOLERANCE
from numerics.special import check_dimension

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
LOG_SQRT2 = 0.5 * math.log(2.0)

# exponent in the asymptotic spherical-code bound M(n, φ) ≲ 2^{0.599n}/sin(φ/2)^n
KL_EXPONENT = 0.599
KL_WINDOW = (math.pi / 3, math.radians(63.0))
LEVENSHTEIN_WINDOW = (math.pi / 3, math.pi)

_RATIO_SLACK = 1e-9
_WINDOW_SLACK = 1e-12


class GaugeKind(StrEnum):
    F0 = "f0"
    FSTAR = "fstar"
    LEVENSHTEIN = "levenshtein"
    KL_ASYMPTOTIC = "kl-asymptotic"


@dataclass(frozen=True, eq=False)
class GaugeMoments:
    kind: GaugeKind
    n: int
    support_radius: float
    log_moments: np.ndarray
    phi: float | None = None
    degree: int | None = None

    def __post_init__(self):
        if not (math.isfinite(self.support_radius) and self.support_radius > 0):
            raise GaugeValidityError(f"support radius must be positive and finite, got {self.support_radius}")
        if self.log_moments.shape != (self.n + 1,):
            raise GaugeValidityError(f"expected {self.n + 1} moments, got {self.log_moments.shape}")
        if self.log_moments[0] > _RATIO_SLACK:
            raise GaugeValidityError(f"gauge exceeds 1 at the origin: f(0) = {math.exp(self.log_moments[0])}")
        self._check_moment_ratios()
        self.log_moments.setflags(write=False)

    def _check_moment_ratios(self):
        # I_j/I_{j−1} ≤ r₀ · (κ_j/κ_{j−1}) · j/(j−1) for every gauge supported in [0, r₀]
        if self.n < 2:
            return
        j = np.arange(2, self.n + 1)
        log_kappa = log_ball_volumes(self.n)
        allowed = (
            math.log(self.support_radius)
            + log_kappa[2:] - log_kappa[1:-1]
            + np.log(j / (j - 1))
        )
        ratios = self.log_moments[2:] - self.log_moments[1:-1]
        broken = np.nonzero(ratios > allowed + _RATIO_SLACK)[0]
        if broken.size:
            raise GaugeValidityError(
                f"{self.kind.value} moments violate the moment-ratio inequality at j={int(j[broken[0]])}"
            )

    @property
    def gauge_peak(self) -> float:
        return math.exp(self.log_moments[0])

    @property
    def rigorous(self) -> bool:
        return self.kind is not GaugeKind.KL_ASYMPTOTIC

    @property
    def label(self) -> str:
        return self.kind.value

    def moment(self, j: int) -> LogNonNeg:
        return LogNonNeg(float(self.log_moments[j]))


def b_coeff(j: int) -> float:
    """b_j = 1/((√2)^j (j+1)) − (√2−1)^{j+1} (1 + √2/(j+1))."""
    if j < 1:
        raise GaugeValidityError(f"b_j is defined for j ≥ 1, got {j}")
    return float(_b_coefficients(np.array([j], dtype=float))[0])


def _b_coefficients(j: np.ndarray) -> np.ndarray:
    return SQRT2**-j / (j + 1) - (SQRT2 - 1) ** (j + 1) * (1 + SQRT2 / (j + 1))


def f0_profile(r):
    """f₀(r) = 1 − r²/2 on [0, √2], zero beyond."""
    r = np.asarray(r, dtype=float)
    return np.where(r <= SQRT2, 1.0 - 0.5 * r**2, 0.0)


def fstar_profile(r):
    """The improved gauge: 1 near the origin, then two quadratic pieces, zero past √2."""
    r = np.asarray(r, dtype=float)
    return np.select(
        [r <= 2 - SQRT2, r <= 1.0, r <= SQRT2],
        [1.0, 0.5 * (2.0 - r) ** 2, 1.0 - 0.5 * r**2],
        default=0.0,
    )


def moments_f0(n: int) -> GaugeMoments:
    check_dimension(n, 1)
    j = np.arange(n + 1, dtype=float)
    log_moments = log_ball_volumes(n) + j * LOG_SQRT2 + math.log(2.0) - np.log(j + 2)
    log_moments[0] = 0.0
    return GaugeMoments(GaugeKind.F0, n, SQRT2, log_moments)


def moments_fstar(n: int) -> GaugeMoments:
    """I₀ = 1 and I_j = (2κ_j/(j+2)) (√2)^j (1 + b_j) for j ≥ 1."""
    check_dimension(n, 1)
    j = np.arange(n + 1, dtype=float)
    log_moments = np.empty(n + 1)
    log_moments[0] = 0.0
    log_moments[1:] = (
        math.log(2.0)
        + log_ball_volumes(n)[1:]
        - np.log(j[1:] + 2)
        + j[1:] * LOG_SQRT2
        + np.log1p(_b_coefficients(j[1:]))
    )
    return GaugeMoments(GaugeKind.FSTAR, n, SQRT2, log_moments)


def _constant_gauge_moments(n: int, log_radius: float, log_value: float) -> np.ndarray:
    j = np.arange(n + 1, dtype=float)
    return log_ball_volumes(n) + j * log_radius + log_value


def _check_window(phi: float, window: tuple[float, float], name: str) -> None:
    low, high = window
    if not low - _WINDOW_SLACK <= phi <= high + _WINDOW_SLACK:
        raise GaugeValidityError(
            f"{name} gauge needs φ in [{math.degrees(low):.4g}°, {math.degrees(high):.4g}°], "
            f"got {math.degrees(phi):.6g}°"
        )


def moments_levenshtein(
    n: int, phi: float, k_max: int | None = None, tolerance: float = DEFAULT_ROOT_TOLERANCE
) -> GaugeMoments:
    """
    The constant gauge 1/M(n, φ) on the ball of radius √(2/(1 − cos φ)).

    M is bounded by the sharpest admissible Jacobi-root estimate; the degree
    that attains it is kept on the returned moments.
    """
    check_dimension(n, 3)
    _check_window(phi, LEVENSHTEIN_WINDOW, "Levenshtein")
    log_m, degree, used_k_max = kl_M_choice(n, phi, k_max, tolerance)
    if log_m.log_value < 0:
        raise GaugeValidityError(f"spherical-code bound below one: ln M = {log_m.log_value}")
    logger.info("Levenshtein gauge n=%d φ=%.6g: k=%d of k_max=%d, ln M=%.6g",
                n, phi, degree, used_k_max, log_m.log_value)

    log_radius = 0.5 * (math.log(2.0) - math.log1p(-math.cos(phi)))
    return GaugeMoments(
        GaugeKind.LEVENSHTEIN,
        n,
        math.exp(log_radius),
        _constant_gauge_moments(n, log_radius, -log_m.log_value),
        phi=phi,
        degree=degree,
    )


def kl_asymptotic_log_value(n: int, phi: float) -> float:
    return min(0.0, n * (math.log(math.sin(phi / 2)) + KL_EXPONENT * math.log(2.0)))


def moments_kl_asymptotic(n: int, phi: float) -> GaugeMoments:
    """Constant gauge from the asymptotic spherical-code bound; heuristic."""
    check_dimension(n, 1)
    _check_window(phi, KL_WINDOW, "asymptotic Kabatjanskii-Levenshtein")
    log_radius = -math.log(math.sin(phi / 2))
    return GaugeMoments(
        GaugeKind.KL_ASYMPTOTIC,
        n,
        math.exp(log_radius),
        _constant_gauge_moments(n, log_radius, kl_asymptotic_log_value(n, phi)),
        phi=phi,
    )


def ball_density_bound(gauge: GaugeMoments) -> LogNonNeg:
    """Blichfeldt's bound κ_n / I_n(f) for the ball itself."""
    log_kappa = log_ball_volumes(gauge.n)[gauge.n]
    return LogNonNeg(float(log_kappa - gauge.log_moments[gauge.n]))
