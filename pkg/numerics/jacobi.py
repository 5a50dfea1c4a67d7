"""
Symmetric Jacobi polynomials P_k^{(α,α)} and their largest roots.

The three-term recurrence specialised to α = β reads

    k(k+2α) P_k = (2k+2α−1)(k+α) x P_{k−1} − (k+α−1)(k+α) P_{k−2},

with P_0 = 1 and P_1 = (α+1)x. Large degrees are kept in range by dividing
both carried values by the running maximum; roots are unaffected.
"""

import logging
import math
import threading
from functools import lru_cache

from scipy import optimize

from numerics.exceptions import DomainError, NumericalError

logger = logging.getLogger(__name__)

DEFAULT_ROOT_TOLERANCE = 1e-13

_RESCALE_ABOVE = 1e150


def _check_alpha(alpha: float) -> None:
    if not alpha > -1:
        raise DomainError(f"Jacobi parameter must satisfy alpha > -1, got {alpha}")


def _scaled_recurrence(k: int, alpha: float, x: float) -> tuple[float, float]:
    """Return (p, log_scale) with P_k^{(α,α)}(x) = p · exp(log_scale)."""
    if k == 0:
        return 1.0, 0.0
    previous, current = 1.0, (alpha + 1.0) * x
    log_scale = 0.0
    for m in range(2, k + 1):
        a = (2 * m + 2 * alpha - 1) * (m + alpha)
        c = (m + alpha - 1) * (m + alpha)
        previous, current = current, (a * x * current - c * previous) / (m * (m + 2 * alpha))
        peak = max(abs(current), abs(previous))
        if peak > _RESCALE_ABOVE:
            previous /= peak
            current /= peak
            log_scale += math.log(peak)
    return current, log_scale


def jacobi_eval(k: int, alpha: float, x: float) -> float:
    """
    Evaluate P_k^{(α,α)}(x).

    When the true value does not fit in a float, the renormalized value is
    returned instead; it has the same sign and the same zeros.
    """
    if k < 0:
        raise DomainError(f"degree must be nonnegative, got {k}")
    _check_alpha(alpha)
    value, log_scale = _scaled_recurrence(k, alpha, x)
    if log_scale == 0.0:
        return value
    if value == 0.0:
        return 0.0
    log_magnitude = math.log(abs(value)) + log_scale
    if log_magnitude < 709.0:
        return math.copysign(math.exp(log_magnitude), value)
    logger.debug("P_%d^(%g) at %g overflows; returning renormalized value", k, alpha, x)
    return value


class _RootLadder:
    """Largest roots t_{1,1} < t_{1,2} < … for one α, grown on demand."""

    def __init__(self, alpha: float, tolerance: float):
        self.alpha = alpha
        self.tolerance = tolerance
        self.roots: list[float] = [0.0]
        self.lock = threading.Lock()

    def extend_to(self, k: int) -> list[float]:
        with self.lock:
            while len(self.roots) < k:
                degree = len(self.roots) + 1
                self.roots.append(self._next_root(degree, self.roots[-1]))
            return self.roots[:k]

    def _next_root(self, degree: int, lower: float) -> float:
        def p(x: float) -> float:
            return _scaled_recurrence(degree, self.alpha, x)[0]

        # interlacing: exactly one root of P_degree lies in (t_{1,degree-1}, 1)
        if not (p(lower) < 0.0 < p(1.0)):
            raise NumericalError(
                f"bisection bracket failure for degree {degree}, alpha {self.alpha}"
            )
        return optimize.bisect(p, lower, 1.0, xtol=self.tolerance)


@lru_cache(maxsize=None)
def _ladder(alpha: float, tolerance: float) -> _RootLadder:
    return _RootLadder(alpha, tolerance)


def jacobi_largest_roots(
    k_max: int, alpha: float, tolerance: float = DEFAULT_ROOT_TOLERANCE
) -> list[float]:
    """[t_{1,1}, …, t_{1,k_max}] for P^{(α,α)}."""
    if k_max < 1:
        raise DomainError(f"degree must be ≥ 1, got {k_max}")
    _check_alpha(alpha)
    return _ladder(float(alpha), tolerance).extend_to(k_max)


def jacobi_largest_root(k: int, alpha: float, tolerance: float = DEFAULT_ROOT_TOLERANCE) -> float:
    """The largest root t_{1,k} of P_k^{(α,α)}."""
    return jacobi_largest_roots(k, alpha, tolerance)[k - 1]
