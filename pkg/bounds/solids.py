"""Regular 4-polytopes with unit edge whose facets all touch the insphere."""

import math
from dataclasses import dataclass

from crosspoly import inradius_xn, log_volume_xn
from numerics import DomainError

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class RegularSolid:
    name: str
    n: int
    log_volume: float
    inradius: float


REGULAR_SOLIDS = {
    "120-cell": RegularSolid(
        "120-cell",
        4,
        math.log(15 / 4 * (105 + 47 * math.sqrt(5))),
        GOLDEN_RATIO**4 / 2,
    ),
    "600-cell": RegularSolid(
        "600-cell",
        4,
        math.log(25 / 4 * GOLDEN_RATIO**3),
        GOLDEN_RATIO**3 / (2 * math.sqrt(2)),
    ),
}


def solid_for(body: str, n: int) -> RegularSolid:
    """Look up a named body; ``cross-polytope`` means Xⁿ in dimension n."""
    if body == "cross-polytope":
        return RegularSolid(body, n, log_volume_xn(n).log_value, inradius_xn(n))
    try:
        solid = REGULAR_SOLIDS[body]
    except KeyError:
        raise DomainError(f"unknown body {body!r}") from None
    if n != solid.n:
        raise DomainError(f"the {body} lives in dimension {solid.n}, not {n}")
    return solid
