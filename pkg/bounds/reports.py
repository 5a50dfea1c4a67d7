import math
from dataclasses import dataclass

from numerics import Sign
from numerics._compat import StrEnum


class Method(StrEnum):
    INSPHERE = "insphere"
    BLICHFELDT = "blichfeldt"


class Rigor(StrEnum):
    RIGOROUS = "rigorous"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class Diagnostics:
    """Signs of G′(0), G″(0) and G′(rₙ); ``g_prime0`` is normalized by its larger term."""

    g_prime0: float
    g_second0_sign: Sign
    g_prime_rn_sign: Sign


@dataclass(frozen=True)
class BoundReport:
    n: int
    method: Method
    log_bound: float
    rigor: Rigor
    gauge: str | None = None
    phi: float | None = None
    rho_star: float | None = None
    g_prime0: float | None = None
    g_second0_sign: Sign | None = None
    g_prime_rn_sign: Sign | None = None

    @property
    def raw_bound(self) -> float:
        """exp(log_bound); underflows to 0.0 far below binary64 range."""
        return math.exp(self.log_bound)

    @property
    def bound(self) -> float:
        """The bound as a density, capped at 1."""
        return math.exp(min(self.log_bound, 0.0))

    @property
    def clamped(self) -> bool:
        return self.log_bound > 0.0

    @property
    def diagnostics(self) -> Diagnostics | None:
        if self.g_prime0 is None:
            return None
        return Diagnostics(self.g_prime0, self.g_second0_sign, self.g_prime_rn_sign)
