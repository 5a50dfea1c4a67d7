"""
Density upper bounds for Xⁿ.

Two routes are implemented: the insphere volume ratio, which transfers a
bound for the ball to any body containing a ball, and Blichfeldt's method in
the form δ(K) ≤ vol(K)/G(ρ) for 0 < ρ ≤ r(K).
"""

import logging
import math
from typing import Callable, Iterable, Sequence

import numpy as np

from bounds.maximize import maximize_g
from bounds.profile import build_g_profile
from bounds.reports import BoundReport, Diagnostics, Method, Rigor
from crosspoly import IntrinsicVolumes, inradius_xn, log_volume_xn
from gauges import GaugeMoments, levenshtein_breakpoints, moments_kl_asymptotic, moments_levenshtein
from gauges.moments import KL_WINDOW, LEVENSHTEIN_WINDOW
from numerics import (
    DomainError,
    GaugeValidityError,
    InfeasibleGaugeError,
    LogNonNeg,
    Sign,
    log_ball_volume,
    signed_log_difference,
)
from numerics.jacobi import DEFAULT_ROOT_TOLERANCE

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 2048
DEFAULT_REFINE_TOL = 1e-12


def insphere_bound(
    log_vol: LogNonNeg,
    inradius: float,
    n: int,
    log_delta_ball: LogNonNeg,
    rigorous: bool = True,
) -> BoundReport:
    """δ(K) ≤ vol(K) · δ(Bⁿ) / (r(K)ⁿ κₙ)."""
    if not inradius > 0:
        raise DomainError(f"inradius must be positive, got {inradius}")
    if log_delta_ball.log_value > 0:
        raise DomainError(f"a ball density cannot exceed 1, got {log_delta_ball.to_real()}")
    log_bound = (
        log_vol.log_value
        + log_delta_ball.log_value
        - n * math.log(inradius)
        - log_ball_volume(n).log_value
    )
    return BoundReport(
        n=n,
        method=Method.INSPHERE,
        log_bound=log_bound,
        rigor=Rigor.RIGOROUS if rigorous else Rigor.HEURISTIC,
    )


def gauge_insphere_bound(n: int, gauge: GaugeMoments) -> LogNonNeg:
    """vol(Xⁿ) / (rₙⁿ I_n(f)), the value of the Blichfeldt bound at ρ = rₙ."""
    return LogNonNeg(
        log_volume_xn(n).log_value
        - n * math.log(inradius_xn(n))
        - float(gauge.log_moments[n])
    )


def g_derivative_diagnostics(n: int, iv: IntrinsicVolumes, gauge: GaugeMoments) -> Diagnostics:
    """
    G′(0) = −(n/r) I₀ V_n + I₁ V_{n−1},
    G″(0) = n(n−1)/r² · I₀ V_n − 2(n−1)/r · I₁ V_{n−1} + 2 I₂ V_{n−2},
    G′(r) = r^{n−2} (n r I_n − I_{n−1} V₁).
    """
    log_r = math.log(inradius_xn(n))
    v = iv.log_v
    m = gauge.log_moments

    g_prime0, sign0 = signed_log_difference(m[1] + v[n - 1], math.log(n) - log_r + m[0] + v[n])
    if sign0 is Sign.INDETERMINATE:
        logger.debug("n=%d %s: G'(0) cancels to %.3e relative", n, gauge.label, g_prime0)

    if n >= 2:
        _, second_sign = signed_log_difference(
            np.logaddexp(
                math.log(n * (n - 1)) - 2 * log_r + m[0] + v[n],
                math.log(2.0) + m[2] + v[n - 2],
            ),
            math.log(2.0 * (n - 1)) - log_r + m[1] + v[n - 1],
        )
    else:
        second_sign = Sign.INDETERMINATE

    _, end_sign = signed_log_difference(math.log(n) + log_r + m[n], m[n - 1] + v[1])

    for name, sign in (("G''(0)", second_sign), ("G'(r_n)", end_sign)):
        if sign is Sign.INDETERMINATE and n >= 2:
            logger.warning("n=%d %s: sign of %s is indeterminate", n, gauge.label, name)
    return Diagnostics(g_prime0=g_prime0, g_second0_sign=second_sign, g_prime_rn_sign=end_sign)


def blichfeldt_bound(
    n: int,
    iv: IntrinsicVolumes,
    gauge: GaugeMoments,
    grid_points: int = DEFAULT_GRID_POINTS,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> BoundReport:
    """δ(Xⁿ) ≤ vol(Xⁿ)/G(ρ*) with ρ* the numerical maximizer of G on (0, rₙ]."""
    profile = build_g_profile(n, iv, gauge)
    rho_star, log_g_star = maximize_g(profile, grid_points, refine_tol)
    log_bound = log_volume_xn(n).log_value - log_g_star.log_value
    diagnostics = g_derivative_diagnostics(n, iv, gauge)

    logger.info(
        "n=%d %s: ρ*/r=%.6f, dominant term j=%d, ln bound=%.12g",
        n, gauge.label, rho_star / profile.r, profile.dominant_term(rho_star), log_bound,
    )
    if log_bound > 0:
        logger.info("n=%d %s: bound %.6g exceeds 1 and is reported as 1", n, gauge.label, math.exp(log_bound))

    return BoundReport(
        n=n,
        method=Method.BLICHFELDT,
        log_bound=log_bound,
        rigor=Rigor.RIGOROUS if gauge.rigorous else Rigor.HEURISTIC,
        gauge=gauge.label,
        phi=gauge.phi,
        rho_star=rho_star,
        g_prime0=diagnostics.g_prime0,
        g_second0_sign=diagnostics.g_second0_sign,
        g_prime_rn_sign=diagnostics.g_prime_rn_sign,
    )


def default_phi_grid(points: int, window: tuple[float, float]) -> list[float]:
    if points < 1:
        raise DomainError(f"the φ grid needs at least one point, got {points}")
    low, high = window
    if points == 1:
        return [high]
    return [float(phi) for phi in np.linspace(low, high, points)]


def levenshtein_phi_grid(points: int) -> list[float]:
    return default_phi_grid(points, LEVENSHTEIN_WINDOW)


def kl_asymptotic_phi_grid(points: int) -> list[float]:
    return default_phi_grid(points, KL_WINDOW)


def _best(reports: Iterable[BoundReport]) -> BoundReport:
    return min(reports, key=lambda report: report.log_bound)


def optimize_levenshtein_bound(
    n: int,
    iv: IntrinsicVolumes,
    phi_grid: Sequence[float],
    k_max: int | None = None,
    grid_points: int = DEFAULT_GRID_POINTS,
    refine_tol: float = DEFAULT_REFINE_TOL,
    root_tolerance: float = DEFAULT_ROOT_TOLERANCE,
    include_breakpoints: bool = True,
) -> BoundReport:
    """
    Best Blichfeldt bound over Levenshtein gauges with φ from ``phi_grid``.

    The spherical-code bound only drops where a new Jacobi degree becomes
    admissible, so those angles inside the grid's range are tried as well.
    """
    if not phi_grid:
        raise DomainError("the φ grid is empty")
    low, high = LEVENSHTEIN_WINDOW
    for phi in phi_grid:
        if not low - 1e-12 <= phi <= high + 1e-12:
            raise GaugeValidityError(f"φ={phi} lies outside [π/3, π]")

    candidates = set(phi_grid)
    if include_breakpoints:
        candidates.update(
            levenshtein_breakpoints(n, k_max, root_tolerance, min(phi_grid), max(phi_grid))
        )

    reports = []
    for phi in sorted(candidates):
        try:
            gauge = moments_levenshtein(n, phi, k_max, root_tolerance)
        except InfeasibleGaugeError as error:
            logger.info("n=%d φ=%.6g skipped: %s", n, phi, error)
            continue
        reports.append(blichfeldt_bound(n, iv, gauge, grid_points, refine_tol))
    if not reports:
        raise InfeasibleGaugeError(f"every φ in the grid is infeasible for n={n}", k_max=k_max)
    best = _best(reports)
    logger.info("n=%d Levenshtein: best φ=%.9g of %d candidates", n, best.phi, len(reports))
    return best


def kl_asymptotic_sweep(
    n_list: Iterable[int],
    iv_provider: Callable[[int], IntrinsicVolumes],
    phi_grid: Sequence[float],
    grid_points: int = DEFAULT_GRID_POINTS,
    refine_tol: float = DEFAULT_REFINE_TOL,
) -> list[BoundReport]:
    """Per dimension, the best asymptotic-gauge bound over ``phi_grid`` (heuristic)."""
    if not phi_grid:
        raise DomainError("the φ grid is empty")
    sweep = []
    for n in n_list:
        iv = iv_provider(n)
        best = _best(
            blichfeldt_bound(n, iv, moments_kl_asymptotic(n, phi), grid_points, refine_tol)
            for phi in phi_grid
        )
        logger.info("n=%d asymptotic gauge: φ=%.6g, ρ*/r=%.6f", n, best.phi, best.rho_star / inradius_xn(n))
        sweep.append(best)
    return sweep


def fitted_rate(reports: Sequence[BoundReport]) -> float:
    """Base c of the least-squares fit bound ≈ C · cⁿ."""
    if len({report.n for report in reports}) < 2:
        raise DomainError("fitting a rate needs at least two dimensions")
    n = np.array([report.n for report in reports], dtype=float)
    log_bound = np.array([report.log_bound for report in reports])
    slope, _ = np.polyfit(n, log_bound, 1)
    return math.exp(slope)


def volume_ratio_rate_base() -> float:
    """√(e/(π·2^0.198)), the exponential rate of the insphere route for large n."""
    return math.sqrt(math.e / (math.pi * 2**0.198))
