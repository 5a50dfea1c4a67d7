import logging
import math
from typing import Callable

import numpy as np

from bounds.profile import GProfile
from numerics import DomainError, LogNonNeg, NumericalError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section_maximize(
    f: Callable[[float], float], a: float, b: float, tol: float
) -> tuple[float, float]:
    """
    Golden-section search for a maximum of f on [a, b].

    Shrinks the bracket until it is at most ``tol`` wide and returns the
    best point evaluated together with its value.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(steps - 1):
        if yc > yd:
            b = d
            d, yd = c, yc
            h *= INV_PHI
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c, yc = d, yd
            h *= INV_PHI
            d = a + INV_PHI * h
            yd = f(d)
    return (c, yc) if yc > yd else (d, yd)


def maximize_g(
    profile: GProfile, grid_points: int = 2048, refine_tol: float = 1e-12
) -> tuple[float, LogNonNeg]:
    """
    Maximize ln G over (0, rₙ].

    A uniform scan ρ_i = rₙ·i/grid_points, i = 1…grid_points, picks the best
    cell; golden-section search then refines between its neighbours. Any ρ
    gives a valid bound, so a missed global maximum only costs sharpness.
    """
    if grid_points < 64:
        raise DomainError(f"grid_points must be ≥ 64, got {grid_points}")
    if refine_tol <= 0:
        raise DomainError(f"refine_tol must be positive, got {refine_tol}")

    r = profile.r
    grid = r * np.arange(1, grid_points + 1) / grid_points
    grid[-1] = r
    values = profile.log_value(grid)
    # −inf is an exact zero of G; only NaN and +inf are failures
    if np.any(np.isnan(values)) or np.any(values == math.inf):
        raise NumericalError(f"ln G is NaN or +inf on the scan grid for n={profile.n}")
    best = int(np.argmax(values))
    rho_star, log_g_star = float(grid[best]), float(values[best])

    low = grid[max(best - 1, 0)]
    high = grid[min(best + 1, grid_points - 1)]
    rho, log_g = golden_section_maximize(profile.log_value, low, high, refine_tol * r)
    if math.isnan(log_g) or log_g == math.inf:
        raise NumericalError(f"ln G is NaN or +inf at ρ={rho} for n={profile.n}")
    if log_g > log_g_star:
        rho_star, log_g_star = rho, log_g
    logger.debug("n=%d: ρ*=%.12g (ρ*/r=%.6f), ln G*=%.12g", profile.n, rho_star, rho_star / r, log_g_star)
    return rho_star, LogNonNeg(log_g_star)
