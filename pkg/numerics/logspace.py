"""
Nonnegative reals carried as natural logarithms.

Densities, volumes and moments in this project routinely leave the binary64
range (24! ~ 6e23 is harmless, 1000! is not), so every such quantity travels
as its logarithm. ``-inf`` is the exact encoding of zero.
"""

import math
from dataclasses import dataclass

import numpy as np

from numerics._compat import StrEnum
from numerics.exceptions import DomainError

LOG_ZERO = float("-inf")
LOG_ONE = 0.0


class Sign(StrEnum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, slots=True)
class LogNonNeg:
    log_value: float

    def __post_init__(self):
        if math.isnan(self.log_value) or self.log_value == math.inf:
            raise DomainError(f"log value must be finite or -inf, got {self.log_value}")

    @classmethod
    def zero(cls) -> "LogNonNeg":
        return cls(LOG_ZERO)

    @classmethod
    def one(cls) -> "LogNonNeg":
        return cls(LOG_ONE)

    @classmethod
    def from_real(cls, x: float) -> "LogNonNeg":
        if not x >= 0 or math.isinf(x):
            raise DomainError(f"expected a finite nonnegative real, got {x}")
        return cls(math.log(x)) if x > 0 else cls.zero()

    def to_real(self) -> float:
        """Return the value as a float; may underflow to 0.0."""
        return math.exp(self.log_value)

    @property
    def is_zero(self) -> bool:
        return self.log_value == LOG_ZERO

    def add(self, other: "LogNonNeg") -> "LogNonNeg":
        return LogNonNeg(float(np.logaddexp(self.log_value, other.log_value)))

    def mul(self, other: "LogNonNeg") -> "LogNonNeg":
        if self.is_zero or other.is_zero:
            return LogNonNeg.zero()
        return LogNonNeg(self.log_value + other.log_value)

    def div(self, other: "LogNonNeg") -> "LogNonNeg":
        if other.is_zero:
            raise DomainError("division by zero in log space")
        if self.is_zero:
            return self
        return LogNonNeg(self.log_value - other.log_value)

    def pow(self, exponent: float) -> "LogNonNeg":
        if exponent == 0:
            return LogNonNeg.one()
        if self.is_zero:
            if exponent < 0:
                raise DomainError("zero raised to a negative power")
            return self
        return LogNonNeg(self.log_value * exponent)

    __add__ = add
    __mul__ = mul
    __truediv__ = div
    __pow__ = pow

    def __lt__(self, other: "LogNonNeg") -> bool:
        return self.log_value < other.log_value

    def __le__(self, other: "LogNonNeg") -> bool:
        return self.log_value <= other.log_value


def signed_log_difference(
    log_positive: float, log_negative: float, cancellation: float = 1e-8
) -> tuple[float, Sign]:
    """
    Compare ``exp(log_positive) - exp(log_negative)`` without forming either term.

    Returns the difference normalized by the larger term (a number in
    [-1, 1]) and its sign. When the normalized difference is smaller than
    ``cancellation`` the sign is reported as indeterminate.
    """
    if log_positive == LOG_ZERO and log_negative == LOG_ZERO:
        return 0.0, Sign.INDETERMINATE
    high = max(log_positive, log_negative)
    low = min(log_positive, log_negative)
    relative = -math.expm1(low - high)
    if log_negative > log_positive:
        relative = -relative
    if abs(relative) < cancellation:
        return relative, Sign.INDETERMINATE
    return relative, Sign.POSITIVE if relative > 0 else Sign.NEGATIVE
