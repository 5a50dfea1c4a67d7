"""
Upper bounds on the ball packing density δ(Bⁿ), read from a user-supplied table.

The table is a CSV file with rows ``n,delta_upper,source,rigor`` (an optional
header row and ``#`` comments are allowed). Only δ(B²⁴) = π¹²/12!, the
density of the Leech lattice packing, is built in.
"""

import csv
import logging
import math
import os
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path

from bounds import Rigor
from cli.serializers import BallDensityRecordSerializer
from numerics import LogNonNeg

logger = logging.getLogger(__name__)

FIELDS = ["n", "delta_upper", "source", "rigor"]


class BallTableError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class BallDensityRecord:
    n: int
    delta_upper: float
    source: str
    rigor: Rigor
    log_delta: float | None = None

    @property
    def log_delta_upper(self) -> LogNonNeg:
        return LogNonNeg(self.log_delta if self.log_delta is not None else math.log(self.delta_upper))


LEECH = BallDensityRecord(
    n=24,
    delta_upper=math.pi**12 / math.factorial(12),
    source="leech-lattice",
    rigor=Rigor.RIGOROUS,
    log_delta=12 * math.log(math.pi) - math.lgamma(13),
)


class BallTable:
    def __init__(self, records: list[BallDensityRecord] | None = None, builtin: bool = True):
        self.records = list(records or [])
        self.builtin = [LEECH] if builtin else []

    def __len__(self) -> int:
        return len(self.records)

    @classmethod
    def from_path(cls, path: Path | str | None) -> "BallTable":
        if path is None:
            return cls()
        return cls(read_ball_table(path))

    def lookup(self, n: int) -> BallDensityRecord | None:
        """The smallest upper bound known for dimension n, user records first on ties."""
        candidates = [record for record in self.records + self.builtin if record.n == n]
        if not candidates:
            return None
        return min(candidates, key=lambda record: record.log_delta_upper.log_value)


def read_ball_table(path: Path | str) -> list[BallDensityRecord]:
    path = Path(path)
    try:
        handle = path.open(encoding="utf-8", newline="")
    except OSError as error:
        raise BallTableError(f"cannot read ball table {path}: {error.strerror}") from error

    records: list[BallDensityRecord] = []
    seen: set[tuple[int, str]] = set()
    with handle:
        for line_number, row in enumerate(csv.reader(handle), start=1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if line_number == 1 and row[0].strip() == "n":
                continue
            if len(row) != len(FIELDS):
                raise BallTableError(f"expected {len(FIELDS)} fields, got {len(row)}", line_number)

            serializer = BallDensityRecordSerializer(data=dict(zip(FIELDS, (value.strip() for value in row))))
            if not serializer.is_valid():
                details = "; ".join(f"{field}: {errors[0]}" for field, errors in serializer.errors.items())
                raise BallTableError(details, line_number)
            record = BallDensityRecord(
                n=serializer.validated_data["n"],
                delta_upper=serializer.validated_data["delta_upper"],
                source=serializer.validated_data["source"],
                rigor=Rigor(serializer.validated_data["rigor"]),
            )
            if (record.n, record.source) in seen:
                raise BallTableError(f"duplicate record for n={record.n}, source={record.source}", line_number)
            seen.add((record.n, record.source))
            records.append(record)
    logger.info("Read %d ball density records from %s", len(records), path)
    return records


def install_ball_table(source: Path | str, target: Path | str) -> None:
    """Copy a validated table to ``target``, replacing it atomically."""
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    descriptor, temporary = tempfile.mkstemp(dir=target.parent, prefix=".ball-", suffix=".tmp")
    os.close(descriptor)
    try:
        shutil.copyfile(source, temporary)
        os.replace(temporary, target)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise
    logger.info("Installed ball table %s as %s", source, target)
