from bounds import Method
from cli.balltable import BallTable
from cli.config import RunConfig
from crosspoly import GammaCache

from .base import BaseRunner
from .gauges import F0Runner, FStarRunner, KLAsymptoticRunner, LevenshteinRunner
from .insphere import InsphereRunner

GAUGE_RUNNERS: dict[str, type[BaseRunner]] = {
    runner.key: runner
    for runner in (F0Runner, FStarRunner, LevenshteinRunner, KLAsymptoticRunner)
}


def runner_for(config: RunConfig, cache: GammaCache | None = None) -> BaseRunner:
    if config.method == Method.INSPHERE:
        return InsphereRunner(config, cache, ball_table=BallTable.from_path(config.ball_table_path))
    return GAUGE_RUNNERS[config.gauge.value](config, cache)
