from dataclasses import dataclass, field

from bounds import BoundReport, Rigor, insphere_bound, solid_for
from cli.balltable import BallTable, BallTableError
from numerics import LogNonNeg

from .base import BaseRunner


@dataclass
class InsphereRunner(BaseRunner):
    key: str = field(init=False, default="insphere")
    ball_table: BallTable = field(default_factory=BallTable)

    def run(self, n: int) -> BoundReport:
        record = self.ball_table.lookup(n)
        if record is None:
            raise BallTableError(f"no ball density bound for n={n} in the ball table")
        solid = solid_for(self.config.body, n)
        return insphere_bound(
            LogNonNeg(solid.log_volume),
            solid.inradius,
            n,
            record.log_delta_upper,
            rigorous=record.rigor == Rigor.RIGOROUS,
        )
