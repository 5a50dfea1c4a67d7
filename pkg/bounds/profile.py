"""
The polynomial G(ρ) behind the Blichfeldt bound for Xⁿ.

Writing r = rₙ and coeff_j = I_j(f) · V_{n−j}(Xⁿ) / r^{n−j},

    G(ρ) = Σ_j coeff_j · ρ^j · (r − ρ)^{n−j},

a sum of nonnegative terms on [0, r], so ln G is a log-sum-exp.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from crosspoly import IntrinsicVolumes, inradius_xn
from gauges import GaugeMoments
from numerics import LOG_ZERO, DomainError, Sign, signed_log_difference


def _weighted_log(power: np.ndarray, log_base: np.ndarray) -> np.ndarray:
    """power · log_base with 0 · (−inf) read as 0."""
    with np.errstate(invalid="ignore"):
        return np.where(power == 0, 0.0, power * log_base)


@dataclass(frozen=True, eq=False)
class GProfile:
    n: int
    log_r: float
    log_coeff: np.ndarray

    @property
    def r(self) -> float:
        return math.exp(self.log_r)

    def _log_factors(self, rho) -> tuple[np.ndarray, np.ndarray]:
        rho = np.atleast_1d(np.asarray(rho, dtype=float))
        if np.any(rho < 0) or np.any(rho > self.r * (1 + 1e-15)):
            raise DomainError(f"ρ must lie in [0, {self.r}]")
        with np.errstate(divide="ignore"):
            log_rho = np.log(rho)[:, None]
            log_gap = np.log(np.maximum(self.r - rho, 0.0))[:, None]
        return log_rho, log_gap

    def log_terms(self, rho) -> np.ndarray:
        """ln of each summand of G, one row per ρ."""
        j = np.arange(self.n + 1, dtype=float)[None, :]
        log_rho, log_gap = self._log_factors(rho)
        return self.log_coeff[None, :] + _weighted_log(j, log_rho) + _weighted_log(self.n - j, log_gap)

    def log_value(self, rho):
        """ln G(ρ); scalar in, scalar out."""
        values = logsumexp(self.log_terms(rho), axis=1)
        return float(values[0]) if np.ndim(rho) == 0 else values

    def dominant_term(self, rho: float) -> int:
        return int(np.argmax(self.log_terms(rho)[0]))

    def log_derivative_parts(self, rho: float) -> tuple[float, float]:
        """
        ln of the positive and negative halves of G′(ρ).

        Termwise, d/dρ ρ^j (r−ρ)^{n−j} = j ρ^{j−1} (r−ρ)^{n−j} − (n−j) ρ^j (r−ρ)^{n−j−1}.
        """
        n = self.n
        j = np.arange(n + 1, dtype=float)
        log_rho, log_gap = (float(v[0, 0]) for v in self._log_factors(rho))
        with np.errstate(divide="ignore"):
            positive = (
                self.log_coeff[1:] + np.log(j[1:])
                + _weighted_log(j[1:] - 1, np.full(n, log_rho))
                + _weighted_log(n - j[1:], np.full(n, log_gap))
            )
            negative = (
                self.log_coeff[:-1] + np.log(n - j[:-1])
                + _weighted_log(j[:-1], np.full(n, log_rho))
                + _weighted_log(n - j[:-1] - 1, np.full(n, log_gap))
            )
        return float(logsumexp(positive)), float(logsumexp(negative))

    def log_derivative(self, rho: float) -> tuple[float, Sign]:
        """ln |G′(ρ)| and the sign of G′(ρ)."""
        log_positive, log_negative = self.log_derivative_parts(rho)
        relative, sign = signed_log_difference(log_positive, log_negative)
        if relative == 0.0:
            return LOG_ZERO, sign
        return max(log_positive, log_negative) + math.log(abs(relative)), sign


def build_g_profile(n: int, iv: IntrinsicVolumes, gauge: GaugeMoments) -> GProfile:
    if not n == iv.n == gauge.n:
        raise DomainError(f"dimension mismatch: n={n}, intrinsic volumes {iv.n}, gauge {gauge.n}")
    log_r = math.log(inradius_xn(n))
    j = np.arange(n + 1)
    log_coeff = gauge.log_moments + iv.log_v[n - j] - (n - j) * log_r
    return GProfile(n=n, log_r=log_r, log_coeff=log_coeff)
