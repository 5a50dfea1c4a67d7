import logging

from django.core.management.base import CommandError

from cli.balltable import BallTableError
from cli.config import ConfigError
from cli.output import ReportFormatError
from numerics import DomainError, InfeasibleGaugeError, NumericalError

EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_INFEASIBLE = 4

VERBOSITY_LEVELS = {2: logging.INFO, 3: logging.DEBUG}


def apply_verbosity(verbosity: int) -> None:
    level = VERBOSITY_LEVELS.get(verbosity)
    if level is not None:
        logging.getLogger().setLevel(level)


def command_error(error: Exception) -> CommandError:
    """Map a failure to the exit status the command line reports."""
    if isinstance(error, InfeasibleGaugeError):
        return CommandError(str(error), returncode=EXIT_INFEASIBLE)
    if isinstance(error, NumericalError):
        return CommandError(str(error), returncode=EXIT_NUMERICAL)
    if isinstance(error, (ConfigError, BallTableError, ReportFormatError, DomainError, OSError)):
        return CommandError(str(error), returncode=EXIT_INVALID)
    raise error
