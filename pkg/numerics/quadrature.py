"""
Log-space quadrature of Gaussian-dominated integrands on a half line.

``log_integral_exp`` evaluates ln ∫_lower^∞ e^{g(x)} dx for an integrand
given through its logarithm g. The peak of g is located first, the interval
is truncated where g has fallen ``ln(1/upper_cutoff_tolerance)`` below the
peak, and composite Gauss–Legendre panels are summed with log-sum-exp. Panel
doubling is the error estimate.
"""

import logging
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import optimize
from scipy.special import logsumexp

from numerics.exceptions import DomainError, QuadratureError
from numerics.logspace import LogNonNeg

logger = logging.getLogger(__name__)

LogIntegrand = Callable[[np.ndarray], np.ndarray]

_SCAN_POINTS = 129
_MAX_EXPANSIONS = 64
_FLOOR = -1e300


@dataclass(frozen=True)
class QuadratureSpec:
    panel_count: int = 32
    nodes_per_panel: int = 20
    upper_cutoff_tolerance: float = 1e-16
    convergence_tolerance: float = 1e-12
    max_doublings: int = 4

    def __post_init__(self):
        if self.panel_count < 1 or self.nodes_per_panel < 1:
            raise DomainError("panel_count and nodes_per_panel must be positive")
        if not 0 < self.upper_cutoff_tolerance < 1:
            raise DomainError("upper_cutoff_tolerance must lie in (0, 1)")
        if self.convergence_tolerance <= 0 or self.max_doublings < 1:
            raise DomainError("convergence_tolerance and max_doublings must be positive")

    @property
    def log_drop(self) -> float:
        """How far below its peak g may fall before the tail is discarded."""
        return -math.log(self.upper_cutoff_tolerance)

    @property
    def fingerprint(self) -> str:
        return (
            f"v1-p{self.panel_count}-q{self.nodes_per_panel}"
            f"-t{self.upper_cutoff_tolerance:.3e}-c{self.convergence_tolerance:.3e}"
            f"-d{self.max_doublings}"
        )

    def doubled(self) -> "QuadratureSpec":
        return replace(self, panel_count=2 * self.panel_count)


@lru_cache(maxsize=32)
def _legendre_rule(nodes_per_panel: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(nodes_per_panel)
    return nodes, np.log(weights)


def _evaluate(g: LogIntegrand, x: float) -> float:
    value = float(np.asarray(g(np.array([x], dtype=float)))[0])
    if math.isnan(value):
        raise QuadratureError("log integrand returned NaN", x=x)
    return value


def _composite_log_sum(g: LogIntegrand, a: float, b: float, panels: int, q: int) -> float:
    nodes, log_weights = _legendre_rule(q)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = mid[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(g(x.ravel()), dtype=float).reshape(x.shape)
    if np.any(np.isnan(values)):
        raise QuadratureError("log integrand returned NaN on a panel", a=a, b=b)
    per_panel = logsumexp(values + log_weights[None, :], axis=1) + np.log(half)
    return float(logsumexp(per_panel))


def _locate_peak(g: LogIntegrand, lower: float, drop: float) -> tuple[float, float, float]:
    """Return (x_peak, g(x_peak), scan spacing)."""
    width = 1.0
    for _ in range(_MAX_EXPANSIONS):
        xs = lower + width * np.linspace(0.0, 1.0, _SCAN_POINTS)
        values = np.asarray(g(xs), dtype=float)
        if np.any(np.isnan(values)) or np.any(values == math.inf):
            raise QuadratureError("log integrand is not finite while scanning", width=width)
        best = int(np.argmax(values))
        if values[best] > -math.inf and values[-1] < values[best] - drop:
            break
        width *= 2.0
    else:
        raise QuadratureError("could not locate a finite peak", lower=lower, width=width)

    spacing = xs[1] - xs[0]
    lo = xs[max(best - 1, 0)]
    hi = xs[min(best + 1, _SCAN_POINTS - 1)]
    result = optimize.minimize_scalar(
        lambda t: -_evaluate(g, t),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-13 * max(1.0, abs(hi))},
    )
    if result.success and -result.fun > values[best]:
        return float(result.x), float(-result.fun), spacing
    return float(xs[best]), float(values[best]), spacing


def _cutoff(g: LogIntegrand, peak: float, threshold: float, step: float, lower: float | None) -> float:
    """Walk away from the peak until g drops under threshold, then bracket the crossing."""
    direction = -1.0 if lower is not None else 1.0
    inner = peak
    for _ in range(_MAX_EXPANSIONS * 4):
        outer = peak + direction * step
        if lower is not None and outer <= lower:
            if _evaluate(g, lower) >= threshold:
                return lower
            outer = lower
        if _evaluate(g, outer) < threshold:
            break
        inner = outer
        step *= 2.0
    else:
        raise QuadratureError("integrand does not decay", peak=peak, step=step)

    def shifted(t: float) -> float:
        return max(_evaluate(g, t) - threshold, _FLOOR)

    a, b = sorted((inner, outer))
    return float(optimize.brentq(shifted, a, b, xtol=1e-14 * max(1.0, abs(b))))


def log_integral_exp(
    log_integrand: LogIntegrand, lower: float, spec: QuadratureSpec | None = None
) -> LogNonNeg:
    """
    ln ∫_lower^∞ exp(log_integrand(x)) dx.

    ``log_integrand`` must accept and return numpy arrays; −inf values are
    allowed and mean a zero integrand.
    """
    spec = spec or QuadratureSpec()
    drop = spec.log_drop
    peak, peak_value, spacing = _locate_peak(log_integrand, lower, drop)
    threshold = peak_value - drop
    a = _cutoff(log_integrand, peak, threshold, spacing, lower=lower)
    b = _cutoff(log_integrand, peak, threshold, spacing, lower=None)

    q = spec.nodes_per_panel
    previous = _composite_log_sum(log_integrand, a, b, spec.panel_count, q)
    change = math.inf
    for doubling in range(1, spec.max_doublings + 1):
        panels = spec.panel_count * 2**doubling
        current = _composite_log_sum(log_integrand, a, b, panels, q)
        change = abs(current - previous)
        if change <= spec.convergence_tolerance * max(1.0, abs(current)):
            return LogNonNeg(current)
        logger.debug(
            "quadrature on [%.6g, %.6g] changed by %.3e at %d panels", a, b, change, panels
        )
        previous = current
    raise QuadratureError(
        "no convergence under panel doubling",
        interval=(a, b),
        peak=peak,
        last_change=change,
    )
