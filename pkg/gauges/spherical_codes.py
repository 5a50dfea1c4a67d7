"""
Upper bounds on spherical codes M(n, φ) from largest Jacobi roots.

For α = (n−3)/2 and every degree k with cos φ ≤ t_{1,k},

    M(n, φ) ≤ 4 · C(k+n−2, k) / (1 − t_{1,k+1}).

Since t_{1,k} increases with k, the admissible degrees for a given φ are
exactly k ≥ k_min(φ), and the sharpest bound is the minimum of the right-hand
side over that tail.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from numerics import DomainError, InfeasibleGaugeError, LogNonNeg, jacobi_largest_roots, log_binomials
from numerics.jacobi import DEFAULT_ROOT_TOLERANCE

logger = logging.getLogger(__name__)

# automatic doublings of k_max before giving up
_MAX_RAISES = 6

_BREAKPOINT_NUDGE = 1e-12


def default_k_max(n: int) -> int:
    return 4 * n + 200


@dataclass(frozen=True, eq=False)
class _DegreeTable:
    roots: np.ndarray  # t_{1,1} … t_{1,k_max+1}
    terms: np.ndarray  # ln of the right-hand side for k = 1 … k_max
    suffix_min: np.ndarray
    suffix_argmin: np.ndarray


@lru_cache(maxsize=256)
def _degree_table(n: int, k_max: int, tolerance: float) -> _DegreeTable:
    alpha = (n - 3) / 2
    roots = np.array(jacobi_largest_roots(k_max + 1, alpha, tolerance))
    k = np.arange(1, k_max + 1, dtype=float)
    terms = math.log(4.0) + log_binomials(k + n - 2, k) - np.log1p(-roots[1:])

    suffix_min = np.minimum.accumulate(terms[::-1])[::-1]
    suffix_argmin = np.empty(k_max, dtype=int)
    best = k_max - 1
    for i in range(k_max - 1, -1, -1):
        if terms[i] <= terms[best]:
            best = i
        suffix_argmin[i] = best
    return _DegreeTable(roots, terms, suffix_min, suffix_argmin)


def _check_arguments(n: int, phi: float) -> None:
    if n < 3:
        raise DomainError(f"dimension must be ≥ 3, got {n}")
    if not 0 < phi <= math.pi:
        raise DomainError(f"angle must lie in (0, π], got {phi}")


def _choose_degree(n: int, phi: float, k_max: int, tolerance: float) -> tuple[float, int]:
    table = _degree_table(n, k_max, tolerance)
    # bisected roots carry an error up to about `tolerance`; cos(π/2) is 6e-17, not 0
    threshold = math.cos(phi) - 2.0 * tolerance
    k_min = int(np.searchsorted(table.roots[:k_max], threshold, side="left")) + 1
    if k_min > k_max:
        raise InfeasibleGaugeError(
            f"no Jacobi degree k ≤ {k_max} satisfies cos φ ≤ t_(1,k) for n={n}, φ={phi:.6g}",
            k_max=k_max,
        )
    return float(table.suffix_min[k_min - 1]), int(table.suffix_argmin[k_min - 1]) + 1


def kl_M_choice(
    n: int, phi: float, k_max: int | None = None, tolerance: float = DEFAULT_ROOT_TOLERANCE
) -> tuple[LogNonNeg, int, int]:
    """
    ln of the best spherical-code bound, the degree k attaining it, and the k_max used.

    Without an explicit ``k_max`` the search starts at ``4n + 200`` and doubles
    on infeasibility.
    """
    _check_arguments(n, phi)
    if k_max is not None:
        if k_max < 1:
            raise DomainError(f"k_max must be ≥ 1, got {k_max}")
        log_m, k = _choose_degree(n, phi, k_max, tolerance)
        return LogNonNeg(log_m), k, k_max

    k_max = default_k_max(n)
    for _ in range(_MAX_RAISES):
        try:
            log_m, k = _choose_degree(n, phi, k_max, tolerance)
            return LogNonNeg(log_m), k, k_max
        except InfeasibleGaugeError:
            logger.info("Raising k_max from %d to %d for n=%d, φ=%.6g", k_max, 2 * k_max, n, phi)
            k_max *= 2
    raise InfeasibleGaugeError(
        f"no Jacobi degree k ≤ {k_max // 2} is admissible for n={n}, φ={phi:.6g}",
        k_max=k_max // 2,
    )


def kl_M_bound(
    n: int, phi: float, k_max: int | None = None, tolerance: float = DEFAULT_ROOT_TOLERANCE
) -> LogNonNeg:
    """ln of min over admissible k ≤ k_max of 4·C(k+n−2, k)/(1 − t_{1,k+1})."""
    return kl_M_choice(n, phi, k_max, tolerance)[0]


def levenshtein_breakpoints(
    n: int,
    k_max: int | None = None,
    tolerance: float = DEFAULT_ROOT_TOLERANCE,
    lower: float = math.pi / 3,
    upper: float = math.pi,
) -> list[float]:
    """
    Angles in [lower, upper] where the spherical-code bound drops.

    The bound is a step function of φ that only changes when a new degree k
    becomes admissible (cos φ = t_{1,k}) and that degree beats every later
    one. Each breakpoint is nudged just past the root so the degree is
    admissible there.
    """
    if n < 3:
        raise DomainError(f"dimension must be ≥ 3, got {n}")
    k_max = k_max or default_k_max(n)
    table = _degree_table(n, k_max, tolerance)
    breakpoints = []
    for i in range(k_max):
        later = table.suffix_min[i + 1] if i + 1 < k_max else math.inf
        if table.terms[i] < later:
            phi = math.acos(min(1.0, float(table.roots[i]))) + _BREAKPOINT_NUDGE
            if lower <= phi <= upper:
                breakpoints.append(phi)
    return sorted(breakpoints)
