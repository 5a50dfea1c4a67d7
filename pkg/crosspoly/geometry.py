import math

from numerics import LogNonNeg, log_gamma_fn
from numerics.special import check_dimension


def log_volume_xn(n: int) -> LogNonNeg:
    """ln vol(Xⁿ) = ln(2ⁿ/n!)."""
    check_dimension(n, 1)
    return LogNonNeg(n * math.log(2.0) - log_gamma_fn(n + 1.0))


def inradius_xn(n: int) -> float:
    """The insphere of Xⁿ touches every facet at distance 1/√n."""
    check_dimension(n, 1)
    return 1.0 / math.sqrt(n)
